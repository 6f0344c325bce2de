#include "trotter/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <Eigen/Dense>

#include "trotter/errors.hpp"

namespace trotter {

namespace {

unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(index, word) for every word of the run. Exhaustive runs are split
// into contiguous rank ranges, one per worker; results must be written to
// slot `index` so the outcome does not depend on the thread count.
template <typename Fn>
void for_each_run_word(int n, int alphabet, const RunMode& mode, int cap, unsigned threads, Fn&& fn) {
    if (mode.kind == RunMode::Kind::sample) {
        const std::vector<Word> words = experiment_words(n, alphabet, mode, cap);
        const std::size_t total = words.size();
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, total));
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < total; i += workers) fn(i, words[i]);
            });
        }
        for (auto& th : pool) th.join();
        return;
    }
    WordStream probe(n, alphabet, cap);
    const std::uint64_t total = probe.total();
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
    const std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) {
        const std::uint64_t first = t * chunk;
        if (first >= total) break;
        pool.emplace_back([&, first] {
            WordStream stream(n, alphabet, first, chunk, cap);
            std::uint64_t index = first;
            while (auto w = stream.next()) fn(index++, *w);
        });
    }
    for (auto& th : pool) th.join();
}

std::uint64_t run_size(int n, int alphabet, const RunMode& mode, int cap) {
    if (mode.kind == RunMode::Kind::sample) return mode.count;
    return WordStream(n, alphabet, cap).total();
}

nlohmann::json complex_entries(const ComplexMatrix& m) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& z : m.entries()) out.push_back({z.real(), z.imag()});
    return out;
}

nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void add_mode(nlohmann::json& j, const RunMode& mode) {
    j["mode"] = mode.name();
    j["seed"] = mode.seed;
    if (mode.kind == RunMode::Kind::sample) j["sample_count"] = mode.count;
}

} // namespace

DistanceSummary summarize(std::vector<double> values) {
    DistanceSummary s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
        return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
    };
    s.min = values.front();
    s.max = values.back();
    // Summed in sorted order so the result is independent of evaluation order.
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    s.q50 = quantile(0.5);
    s.q90 = quantile(0.9);
    s.q99 = quantile(0.99);
    return s;
}

double default_threshold(int n) {
    if (n < 1) throw DomainError("n must be positive");
    return std::sqrt(std::log(static_cast<double>(n)) / n);
}

std::optional<double> concentration_constant(const MatrixTuple& t) {
    if (t.size() != 2) return std::nullopt;
    const double comm = norm(commutator(t[0], t[1]), kBoundNorm);
    if (comm == 0.0) return std::nullopt;
    const double denom = 4.0 * comm * std::exp(t.norm_sum(kBoundNorm));
    return 1.0 / (denom * denom);
}

std::vector<Word> experiment_words(int n, int alphabet, const RunMode& mode, int cap) {
    if (mode.kind == RunMode::Kind::exhaustive) return enumerate_words(n, alphabet, cap);
    if (mode.count == 0) throw DomainError("sample mode needs count >= 1");
    std::mt19937_64 rng(mode.seed);
    std::vector<Word> words;
    words.reserve(mode.count);
    for (std::uint64_t i = 0; i < mode.count; ++i) words.push_back(sample_word(n, alphabet, rng));
    return words;
}

ConcentrationReport concentration_experiment(const MatrixTuple& t, int n, const RunMode& mode,
                                             std::optional<double> threshold_override,
                                             const ExperimentOptions& options) {
    if (mode.kind == RunMode::Kind::sample && mode.count == 0) throw DomainError("sample mode needs count >= 1");
    const double threshold = threshold_override.value_or(default_threshold(n));
    if (!std::isfinite(threshold) || threshold < 0.0) throw DomainError("threshold must be finite and non-negative");

    ConcentrationReport r;
    r.n = n;
    r.alphabet = t.size();
    r.dim = t.dim();
    r.mode = mode;
    r.threshold = threshold;
    r.matrices = t.matrices();
    r.word_count = run_size(n, t.size(), mode, options.cap);

    const ExpCache cache(t, n);
    const ComplexMatrix target = expm(t.sum());
    r.distances.assign(r.word_count, 0.0);
    for_each_run_word(n, t.size(), mode, options.cap, resolve_threads(options.threads),
                      [&](std::uint64_t i, const Word& w) {
                          r.distances[i] = norm(product_F(w, cache) - target, NormKind::frobenius);
                      });
    for (double d : r.distances)
        if (!std::isfinite(d)) throw NumericalError("non-finite distance in concentration run");

    const auto within = std::count_if(r.distances.begin(), r.distances.end(), [&](double d) { return d < threshold; });
    r.proportion_within = static_cast<double>(within) / static_cast<double>(r.word_count);
    r.c_constant = concentration_constant(t);
    if (r.c_constant) r.paper_bound = 1.0 - 2.0 / std::pow(static_cast<double>(n), *r.c_constant);
    r.distances_summary = summarize(r.distances);
    return r;
}

nlohmann::json report_to_json(const ConcentrationReport& r) {
    nlohmann::json j;
    j["n"] = r.n;
    j["N"] = r.alphabet;
    j["d"] = r.dim;
    add_mode(j, r.mode);
    j["word_count"] = r.word_count;
    j["threshold"] = r.threshold;
    j["proportion_within"] = r.proportion_within;
    j["c_constant"] = optional_number(r.c_constant);
    j["paper_bound"] = optional_number(r.paper_bound);
    j["distances_summary"] = {{"min", r.distances_summary.min},
                              {"max", r.distances_summary.max},
                              {"mean", r.distances_summary.mean},
                              {"q50", r.distances_summary.q50},
                              {"q90", r.distances_summary.q90},
                              {"q99", r.distances_summary.q99}};
    j["norms"] = {{"distance", "frobenius"}, {"constant", "one"}};
    nlohmann::json mats = nlohmann::json::array();
    for (const auto& m : r.matrices) mats.push_back(matrix_to_json(m));
    j["matrices"] = std::move(mats);
    return j;
}

PointCloud generate_point_cloud(const MatrixTuple& t, int n, const RunMode& mode, const ExperimentOptions& options) {
    PointCloud c;
    c.n = n;
    c.alphabet = t.size();
    c.dim = t.dim();
    c.mode = mode;
    const ExpCache cache(t, n);
    const std::uint64_t total = run_size(n, t.size(), mode, options.cap);
    if (mode.kind == RunMode::Kind::sample && total == 0) throw DomainError("sample mode needs count >= 1");
    c.points.assign(total, CloudPoint{std::string(), ComplexMatrix(t.dim())});
    for_each_run_word(n, t.size(), mode, options.cap, resolve_threads(options.threads),
                      [&](std::uint64_t i, const Word& w) {
                          c.points[i] = CloudPoint{w.to_string(), product_F(w, cache)};
                      });
    if (mode.kind == RunMode::Kind::sample)
        std::stable_sort(c.points.begin(), c.points.end(),
                         [](const CloudPoint& a, const CloudPoint& b) { return a.word < b.word; });

    ComplexMatrix ordered = ComplexMatrix::identity(t.dim());
    ComplexMatrix reversed = ComplexMatrix::identity(t.dim());
    for (int k = 0; k < t.size(); ++k) {
        ordered = ordered * expm(t[k]);
        reversed = reversed * expm(t[t.size() - 1 - k]);
    }
    c.markers = CloudMarkers{expm(t.sum()), ordered, reversed, product_F(standard_word(n, t.size()), cache)};
    return c;
}

nlohmann::json cloud_to_json(const PointCloud& c) {
    nlohmann::json j;
    j["n"] = c.n;
    j["N"] = c.alphabet;
    j["d"] = c.dim;
    add_mode(j, c.mode);
    j["point_count"] = c.points.size();
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : c.points) points.push_back({{"word", p.word}, {"entries", complex_entries(p.value)}});
    j["points"] = std::move(points);
    j["markers"] = {{"exp_sum", complex_entries(c.markers.exp_sum)},
                    {"exp_a_exp_b", complex_entries(c.markers.exp_a_exp_b)},
                    {"exp_b_exp_a", complex_entries(c.markers.exp_b_exp_a)},
                    {"standard_word", complex_entries(c.markers.standard_word)}};
    return j;
}

std::string cloud_to_csv(const PointCloud& c) {
    std::ostringstream out;
    out << "word";
    for (int r = 1; r <= c.dim; ++r)
        for (int col = 1; col <= c.dim; ++col) out << ",re" << r << col << ",im" << r << col;
    out << '\n';
    char buf[64];
    for (const auto& p : c.points) {
        out << p.word;
        for (const auto& z : p.value.entries()) {
            std::snprintf(buf, sizeof buf, ",%.17g,%.17g", z.real(), z.imag());
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

std::vector<double> cloud_principal_variances(const PointCloud& c) {
    const auto dims = static_cast<Eigen::Index>(2 * c.dim * c.dim);
    const auto count = static_cast<Eigen::Index>(c.points.size());
    if (count == 0) return {};
    Eigen::MatrixXd data(count, dims);
    for (Eigen::Index i = 0; i < count; ++i) {
        const auto& e = c.points[static_cast<std::size_t>(i)].value.entries();
        for (std::size_t k = 0; k < e.size(); ++k) {
            data(i, static_cast<Eigen::Index>(2 * k)) = e[k].real();
            data(i, static_cast<Eigen::Index>(2 * k + 1)) = e[k].imag();
        }
    }
    const Eigen::RowVectorXd mean = data.colwise().mean();
    const Eigen::MatrixXd centered = data.rowwise() - mean;
    const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(count);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov, Eigen::EigenvaluesOnly);
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + dims);
    for (double& v : out) v = std::max(v, 0.0);
    std::sort(out.rbegin(), out.rend());
    return out;
}

AlmostSureRun almost_sure_run(const MatrixTuple& t, const std::vector<int>& n_values, std::uint64_t seed) {
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1) throw DomainError("n values must be positive");
        if (i > 0 && n_values[i] <= n_values[i - 1]) throw DomainError("n values must be strictly increasing");
    }
    AlmostSureRun run;
    run.seed = seed;
    run.n_values = n_values;
    run.c_constant = concentration_constant(t);
    const ComplexMatrix target = expm(t.sum());
    const double scale = t.size() == 2 ? norm(commutator(t[0], t[1]), kBoundNorm) * std::exp(t.norm_sum(kBoundNorm))
                                       : 0.0;
    std::mt19937_64 rng(seed);
    for (int n : n_values) {
        const Word w = sample_word(n, t.size(), rng);
        run.errors.push_back(norm(product_F(w, ExpCache(t, n)) - target, NormKind::frobenius));
        const double c = run.c_constant.value_or(0.0);
        run.bound_curve.push_back(4.0 * std::sqrt(c * std::log(static_cast<double>(n)) / n) * scale);
    }
    return run;
}

nlohmann::json almost_sure_to_json(const AlmostSureRun& r) {
    return {{"seed", r.seed},
            {"n_values", r.n_values},
            {"errors", r.errors},
            {"bound_curve", r.bound_curve},
            {"c_constant", optional_number(r.c_constant)},
            {"norms", {{"distance", "frobenius"}, {"constant", "one"}}}};
}

} // namespace trotter
