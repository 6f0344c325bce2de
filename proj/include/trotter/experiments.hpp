#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trotter/matrix.hpp"
#include "trotter/products.hpp"
#include "trotter/word.hpp"

namespace trotter {

/// Either every word of W_n^(N), or `count` uniform draws from a seeded stream.
struct RunMode {
    enum class Kind { exhaustive, sample };
    Kind kind = Kind::exhaustive;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;

    static RunMode exhaustive() { return {}; }
    static RunMode sample(std::uint64_t count, std::uint64_t seed) { return {Kind::sample, count, seed}; }
    std::string name() const { return kind == Kind::exhaustive ? "exhaustive" : "sample"; }
};

struct DistanceSummary {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double q50 = 0.0;
    double q90 = 0.0;
    double q99 = 0.0;
};

/// Nearest-rank summary (q-quantile = sorted[ceil(q*size) - 1]).
DistanceSummary summarize(std::vector<double> values);

struct ConcentrationReport {
    int n = 0;
    int alphabet = 0;
    int dim = 0;
    RunMode mode;
    std::uint64_t word_count = 0;
    double threshold = 0.0;
    double proportion_within = 0.0;
    /// 1 / (4 ||[A,B]|| e^{||A||+||B||})^2 in the 1-norm; two noncommuting letters only.
    std::optional<double> c_constant;
    /// 1 - 2/n^c; two noncommuting letters only.
    std::optional<double> paper_bound;
    DistanceSummary distances_summary;
    /// Per-word Frobenius distances ||F(w) - exp(sum A_k)||, in word order.
    std::vector<double> distances;
    std::vector<ComplexMatrix> matrices;
};

struct ExperimentOptions {
    int cap = kDefaultEnumerationCap;
    /// 0 means std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// sqrt(ln n / n).
double default_threshold(int n);

/// The constant c of the concentration argument, or nullopt when it does not
/// apply (N != 2, or A and B commute).
std::optional<double> concentration_constant(const MatrixTuple& t);

/// Words the experiment runs over: all of W_n^(N) or a seeded sample.
std::vector<Word> experiment_words(int n, int alphabet, const RunMode& mode, int cap);

ConcentrationReport concentration_experiment(const MatrixTuple& t, int n, const RunMode& mode,
                                             std::optional<double> threshold_override = std::nullopt,
                                             const ExperimentOptions& options = {});

/// Report fields plus the echoed matrices; the per-word distance list is not
/// serialised.
nlohmann::json report_to_json(const ConcentrationReport& r);

struct CloudPoint {
    std::string word;
    ComplexMatrix value;
};

struct CloudMarkers {
    ComplexMatrix exp_sum;       // e^{A_1 + ... + A_N}
    ComplexMatrix exp_a_exp_b;   // e^{A_1} ... e^{A_N}
    ComplexMatrix exp_b_exp_a;   // e^{A_N} ... e^{A_1}
    ComplexMatrix standard_word; // F(wst)
};

struct PointCloud {
    int n = 0;
    int alphabet = 0;
    int dim = 0;
    RunMode mode;
    std::vector<CloudPoint> points;
    CloudMarkers markers;
};

PointCloud generate_point_cloud(const MatrixTuple& t, int n, const RunMode& mode,
                                const ExperimentOptions& options = {});

nlohmann::json cloud_to_json(const PointCloud& c);
/// Header "word,re11,im11,re12,im12,..." followed by one row per point.
std::string cloud_to_csv(const PointCloud& c);

/// Variances of the cloud along its principal axes (points embedded in
/// R^{2 d^2}), largest first.
std::vector<double> cloud_principal_variances(const PointCloud& c);

struct AlmostSureRun {
    std::uint64_t seed = 0;
    std::vector<int> n_values;
    std::vector<double> errors;
    std::vector<double> bound_curve;
    std::optional<double> c_constant;
};

/// One uniform word per n (drawn in order from a single seeded stream) and its
/// distance to exp(sum A_k), next to 4 sqrt(c ln n / n) ||[A,B]|| e^{||A||+||B||}.
AlmostSureRun almost_sure_run(const MatrixTuple& t, const std::vector<int>& n_values,
                              std::uint64_t seed);

nlohmann::json almost_sure_to_json(const AlmostSureRun& r);

} // namespace trotter
