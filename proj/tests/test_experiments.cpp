#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "trotter/errors.hpp"
#include "trotter/experiments.hpp"

using namespace trotter;
using testing::max_abs_diff;

namespace {

const ComplexMatrix E11 = ComplexMatrix::unit(2, 1, 1);
const ComplexMatrix E12 = ComplexMatrix::unit(2, 1, 2);
const ComplexMatrix E21 = ComplexMatrix::unit(2, 2, 1);

MatrixTuple commuting_pair() {
    return MatrixTuple(ComplexMatrix::diagonal({0.5, -1.0}), ComplexMatrix::diagonal({2.0, 0.25}));
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

} // namespace

TEST_CASE("summary quantiles use nearest rank") {
    const DistanceSummary s = summarize({5, 1, 4, 2, 3, 6, 7, 8, 9, 10});
    CHECK(s.min == 1);
    CHECK(s.max == 10);
    CHECK(s.mean == 5.5);
    CHECK(s.q50 == 5);
    CHECK(s.q90 == 9);
    CHECK(s.q99 == 10);
    const DistanceSummary one = summarize({0.25});
    CHECK(one.q50 == 0.25);
    CHECK(one.q99 == 0.25);
}

TEST_CASE("default threshold and constant") {
    CHECK(default_threshold(1) == 0.0);
    CHECK(default_threshold(8) == doctest::Approx(std::sqrt(std::log(8.0) / 8.0)));
    CHECK_FALSE(concentration_constant(commuting_pair()).has_value());
    CHECK_FALSE(concentration_constant(MatrixTuple({E11, E12, E21})).has_value());
    // ||[E12, E21]||_1 = 1, ||E12||_1 = ||E21||_1 = 1.
    const double c = *concentration_constant(MatrixTuple(E12, E21));
    CHECK(c == doctest::Approx(1.0 / (16.0 * std::exp(4.0))));
}

TEST_CASE("commuting pair concentrates completely") {
    for (int n : {2, 4, 6})
        for (double threshold : {1e-9, 0.1, 0.5}) {
            const ConcentrationReport r = concentration_experiment(commuting_pair(), n, RunMode::exhaustive(), threshold);
            REQUIRE(r.proportion_within == 1.0);
            REQUIRE_FALSE(r.c_constant.has_value());
            REQUIRE_FALSE(r.paper_bound.has_value());
        }
}

TEST_CASE("proportion within 0.5 does not decrease over n = 4, 6, 8") {
    const MatrixTuple t(E12, E21);
    double previous = 0.0;
    for (int n : {4, 6, 8}) {
        const ConcentrationReport r = concentration_experiment(t, n, RunMode::exhaustive(), 0.5);
        MESSAGE("n=" << n << " proportion_within=" << r.proportion_within);
        CHECK(r.proportion_within >= previous);
        previous = r.proportion_within;
    }
}

TEST_CASE("three zero matrices") {
    const MatrixTuple t({ComplexMatrix::zero(2), ComplexMatrix::zero(2), ComplexMatrix::zero(2)});
    const ConcentrationReport r = concentration_experiment(t, 2, RunMode::exhaustive());
    CHECK(r.word_count == 90);
    CHECK(std::all_of(r.distances.begin(), r.distances.end(), [](double d) { return d == 0.0; }));
    CHECK(r.proportion_within == 1.0);
    CHECK_FALSE(r.paper_bound.has_value());
}

TEST_CASE("report invariants") {
    const MatrixTuple t(E12, E21);
    const ConcentrationReport r = concentration_experiment(t, 6, RunMode::exhaustive());
    REQUIRE(r.distances.size() == 924);
    const auto within = std::count_if(r.distances.begin(), r.distances.end(), [&](double d) { return d < r.threshold; });
    CHECK(r.proportion_within == static_cast<double>(within) / 924.0);
    CHECK(r.proportion_within >= 0.0);
    CHECK(r.proportion_within <= 1.0);
    REQUIRE(r.paper_bound.has_value());
    CHECK(*r.paper_bound == doctest::Approx(1.0 - 2.0 / std::pow(6.0, *r.c_constant)));

    const ExpCache cache(t, 6);
    const ComplexMatrix target = expm(t.sum());
    const auto words = enumerate_words(6, 2);
    for (std::size_t i = 0; i < words.size(); ++i) {
        const ComplexMatrix f = product_F(words[i], cache);
        REQUIRE(r.distances[i] == norm(f - target));
        REQUIRE(r.distances[i] <= norm(f) + norm(target));
    }

    const nlohmann::json j = report_to_json(r);
    CHECK(j["mode"] == "exhaustive");
    CHECK(j["seed"] == 0);
    CHECK_FALSE(j.contains("sample_count"));
    CHECK(j["word_count"] == 924);
    CHECK(j["matrices"].size() == 2);
    CHECK(matrix_from_json(j["matrices"][1]) == E21);
    CHECK(j["norms"]["distance"] == "frobenius");
}

TEST_CASE("experiment argument errors") {
    const MatrixTuple t(E12, E21);
    CHECK_THROWS_AS(concentration_experiment(t, 3, RunMode::sample(0, 1)), DomainError);
    CHECK_THROWS_AS(concentration_experiment(t, 13, RunMode::exhaustive()), SizeLimitError);
    CHECK_THROWS_AS(concentration_experiment(t, 3, RunMode::exhaustive(), -0.1), DomainError);
    CHECK_THROWS_AS(generate_point_cloud(t, 13, RunMode::exhaustive()), SizeLimitError);
}

TEST_CASE("results do not depend on the thread count") {
    const MatrixTuple t(E12, E21);
    for (const RunMode& mode : {RunMode::exhaustive(), RunMode::sample(500, 9)}) {
        const auto one = concentration_experiment(t, 6, mode, std::nullopt, {kDefaultEnumerationCap, 1});
        const auto many = concentration_experiment(t, 6, mode, std::nullopt, {kDefaultEnumerationCap, 7});
        CHECK(one.distances == many.distances);
        CHECK(report_to_json(one).dump() == report_to_json(many).dump());
        const auto c1 = generate_point_cloud(t, 5, mode, {kDefaultEnumerationCap, 1});
        const auto c7 = generate_point_cloud(t, 5, mode, {kDefaultEnumerationCap, 7});
        CHECK(cloud_to_json(c1).dump() == cloud_to_json(c7).dump());
    }
}

TEST_CASE("sampling matches the exhaustive proportion") {
    const MatrixTuple t(E12, E21);
    const double exact = concentration_experiment(t, 6, RunMode::exhaustive()).proportion_within;
    for (std::uint64_t count : {2000u, 4000u})
        for (std::uint64_t seed : {1u, 2u}) {
            const ConcentrationReport r = concentration_experiment(t, 6, RunMode::sample(count, seed));
            const double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(count));
            REQUIRE(std::abs(r.proportion_within - exact) <= 3 * sigma);
            REQUIRE(report_to_json(r)["sample_count"] == count);
        }
}

TEST_CASE("point clouds") {
    const ComplexMatrix target = expm(commuting_pair().sum());
    const PointCloud flat = generate_point_cloud(commuting_pair(), 4, RunMode::exhaustive());
    CHECK(flat.points.size() == 70);
    for (const auto& p : flat.points) REQUIRE(max_abs_diff(p.value, target) <= 1e-10);

    const MatrixTuple t(E12, E11);
    const PointCloud c = generate_point_cloud(t, 8, RunMode::exhaustive());
    REQUIRE(c.points.size() == 12870);
    CHECK(c.points.front().word == "AAAAAAAABBBBBBBB");
    CHECK(c.points.back().word == "BBBBBBBBAAAAAAAA");
    CHECK(std::is_sorted(c.points.begin(), c.points.end(),
                         [](const CloudPoint& a, const CloudPoint& b) { return a.word < b.word; }));
    const Complex det = std::exp(t[0].trace() + t[1].trace());
    for (const auto& p : c.points) REQUIRE(std::abs(determinant(p.value) - det) <= 1e-10);

    CHECK(max_abs_diff(c.markers.exp_sum, expm(E12 + E11)) <= 1e-15);
    CHECK(max_abs_diff(c.markers.exp_a_exp_b, expm(E12) * expm(E11)) <= 1e-15);
    CHECK(max_abs_diff(c.markers.exp_b_exp_a, expm(E11) * expm(E12)) <= 1e-15);
    CHECK(max_abs_diff(c.markers.standard_word, lie_trotter(E12, E11, 8)) <= 1e-12);

    const PointCloud s = generate_point_cloud(t, 8, RunMode::sample(50, 3));
    CHECK(s.points.size() == 50);
    CHECK(std::is_sorted(s.points.begin(), s.points.end(),
                         [](const CloudPoint& a, const CloudPoint& b) { return a.word < b.word; }));
}

TEST_CASE("point cloud serialisation") {
    const PointCloud c = generate_point_cloud(MatrixTuple(E12, E11), 1, RunMode::exhaustive());
    const nlohmann::json j = cloud_to_json(c);
    CHECK(j["point_count"] == 2);
    CHECK(j["points"][0]["word"] == "AB");
    CHECK(j["points"][0]["entries"].size() == 4);
    CHECK(j["markers"].contains("exp_sum"));
    const std::string csv = cloud_to_csv(c);
    CHECK(csv.rfind("word,re11,im11,re12,im12,re21,im21,re22,im22\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("principal variances") {
    const auto flat = cloud_principal_variances(generate_point_cloud(commuting_pair(), 4, RunMode::exhaustive()));
    CHECK(flat.front() <= 1e-20);
    // The E12/E11 cloud moves only in the (1,2) entry.
    const auto line = cloud_principal_variances(generate_point_cloud(MatrixTuple(E12, E11), 6, RunMode::exhaustive()));
    CHECK(line[0] > 0.0);
    CHECK(line[1] <= 1e-12 * line[0]);

    // Heisenberg pair: the commutator E13 commutes with both factors.
    const MatrixTuple heis(ComplexMatrix::unit(3, 1, 2), ComplexMatrix::unit(3, 2, 3));
    const auto v = cloud_principal_variances(generate_point_cloud(heis, 6, RunMode::exhaustive()));
    double rest = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) rest += v[k];
    MESSAGE("quasi-commuting fixture: leading variance " << v[0] << ", remainder " << rest);
}

TEST_CASE("almost sure runs") {
    const auto flat = almost_sure_run(commuting_pair(), {2, 4, 8, 16}, 3);
    for (double err : flat.errors) CHECK(err <= 1e-12);
    for (double b : flat.bound_curve) CHECK(b == 0.0);

    CHECK_THROWS_AS(almost_sure_run(commuting_pair(), {4, 4}, 0), DomainError);
    CHECK_THROWS_AS(almost_sure_run(commuting_pair(), {0, 4}, 0), DomainError);

    const MatrixTuple t(E12, E21);
    std::vector<int> ns;
    for (int k = 4; k <= 12; ++k) ns.push_back(1 << k);
    std::vector<std::vector<double>> by_n(ns.size());
    std::vector<int> n0s;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const AlmostSureRun run = almost_sure_run(t, ns, seed);
        REQUIRE(run.errors.size() == ns.size());
        REQUIRE(run.bound_curve.size() == ns.size());
        for (std::size_t i = 0; i < ns.size(); ++i) {
            by_n[i].push_back(run.errors[i]);
            REQUIRE(run.bound_curve[i] == doctest::Approx(default_threshold(ns[i])));
        }
        std::size_t first = ns.size();
        while (first > 0 && run.errors[first - 1] <= run.bound_curve[first - 1]) --first;
        REQUIRE(first < ns.size());
        n0s.push_back(ns[first]);
    }
    MESSAGE("per-seed n0 of the almost-sure bound: " << *std::max_element(n0s.begin(), n0s.end()) << " (worst seed)");
    // Twenty seeds leave single doubling steps noisy, so the trend is judged by
    // the least-squares slope of log median error against log n.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double x = std::log(static_cast<double>(ns[i])), y = std::log(median(by_n[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        MESSAGE("n=" << ns[i] << " median error " << median(by_n[i]));
        if (i > 0 && median(by_n[i]) >= median(by_n[i - 1])) MESSAGE("median does not drop from n=" << ns[i - 1]);
    }
    const double k = static_cast<double>(ns.size());
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    MESSAGE("log-log slope " << slope);
    CHECK(slope < -0.25);
    CHECK(median(by_n.back()) < median(by_n.front()));

    const nlohmann::json j = almost_sure_to_json(almost_sure_run(t, {2, 3}, 5));
    CHECK(j["seed"] == 5);
    CHECK(j["errors"].size() == 2);
}
