#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "trotter/combinatorics.hpp"
#include "trotter/errors.hpp"
#include "trotter/metrics.hpp"

using namespace trotter;

TEST_CASE("binomial values and conventions") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(16, 8) == 12870);
    CHECK(binomial(4, -1) == 0);
    CHECK(binomial(4, 5) == 0);
    CHECK(binomial(0, 0) == 1);
}

TEST_CASE("multinomial values") {
    CHECK(multinomial(std::vector<long>{2, 2, 2}) == 90);
    CHECK(multinomial(std::vector<long>{1, 3, 2}) == 60);
    CHECK(multinomial(std::vector<long>{7}) == 1);
    CHECK(multinomial(std::vector<long>{-1, 3}) == 0);
}

TEST_CASE("binomial and multinomial agree with factorial formulas up to 30") {
    for (long a = 0; a <= 30; ++a)
        for (long b = -1; b <= a + 1; ++b) REQUIRE(binomial(a, b) == testing::binomial_by_factorials(a, b));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<long> parts(1 + rng() % 5);
        long total = 0;
        for (auto& p : parts) {
            p = static_cast<long>(rng() % 9);
            total += p;
        }
        if (total > 30) continue;
        REQUIRE(multinomial(parts) == testing::multinomial_by_factorials(parts));
    }
}

TEST_CASE("reflection bound values and range") {
    CHECK(reflection_bound(2, 2) == 8);
    for (int n = 1; n <= 10; ++n) CHECK(reflection_bound(n, 1) == 2 * binomial(2 * n, n));
    CHECK_THROWS_AS(reflection_bound(3, 0), DomainError);
    CHECK_THROWS_AS(reflection_bound(3, 4), DomainError);
}

TEST_CASE("count_words_far desk cases") {
    const ProportionBound far = count_words_far(2, Fraction(1), 2);
    CHECK(far.count_far == 5);
    CHECK(far.total == 6);
    CHECK(far.bound == 8);
    CHECK(far.level == 2);
    CHECK(static_cast<double>(far.ratio) == doctest::Approx(5.0 / 6.0));

    const ProportionBound all = count_words_far(2, Fraction(0), 2);
    CHECK(all.count_far == 6);
    CHECK(all.count_far == all.total);
    CHECK_FALSE(all.level.has_value());

    const ProportionBound m2 = count_words_far(3, Fraction(2, 3), 2);
    CHECK(m2.total == 20);
    CHECK(m2.bound == 30);
    CHECK(m2.count_far <= 30);
}

TEST_CASE("reflection bound holds exhaustively for n <= 8") {
    for (int n = 1; n <= 8; ++n) {
        const auto words = enumerate_words(n, 2);
        const Word wst = standard_word(n, 2);
        for (int m = 1; m <= n; ++m) {
            long brute = 0;
            for (const auto& w : words) brute += rho_inf(w, wst) >= Fraction(m, n) ? 1 : 0;
            const ProportionBound pb = count_words_far(n, Fraction(m, n), 2);
            REQUIRE(pb.count_far == brute);
            REQUIRE(pb.bound == reflection_bound(n, m));
            REQUIRE(pb.count_far <= pb.bound);
        }
    }
}

TEST_CASE("multinomial reflection bound holds for three letters, n <= 4") {
    for (int n = 1; n <= 4; ++n)
        for (int m = 0; m <= n; ++m) {
            const ProportionBound pb = count_words_far(n, Fraction(2 * m + 2, n), 3);
            REQUIRE(pb.level == m);
            REQUIRE(pb.bound == multinomial_reflection_bound(n, m, 3));
            REQUIRE(pb.count_far <= pb.bound);
        }
}

TEST_CASE("entropy_H values") {
    CHECK(entropy_H(0.0) == 0.0);
    CHECK(entropy_H(1.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
    CHECK(entropy_H(0.5) == doctest::Approx(1.5 * std::log(1.5) + 0.5 * std::log(0.5)).epsilon(1e-15));
    CHECK(entropy_H(0.5) == doctest::Approx(0.2616).epsilon(1e-3));
    CHECK_THROWS_AS(entropy_H(-0.1), DomainError);
    CHECK_THROWS_AS(entropy_H(1.5), DomainError);
    for (int i = 0; i <= 1000; ++i) REQUIRE(entropy_H(i / 1000.0) >= 0.0);
}

TEST_CASE("large_deviation_ratio small exact case") {
    const LargeDeviationRatio r = large_deviation_ratio(4, 0.5);
    CHECK(static_cast<double>(r.exact) == doctest::Approx(28.0 / 70.0).epsilon(1e-15));
    CHECK(static_cast<double>(r.asymptotic) ==
          doctest::Approx(std::sqrt(0.75) * std::exp(-4 * entropy_H(0.5))).epsilon(1e-14));
    CHECK_THROWS_AS(large_deviation_ratio(4, 0.0), DomainError);
    CHECK_THROWS_AS(large_deviation_ratio(4, 1.0), DomainError);
}

TEST_CASE("large_deviation asymptotic tends to 1 as eps tends to 0") {
    double previous = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double a = static_cast<double>(large_deviation_ratio(50, eps).asymptotic);
        CHECK(a > previous);
        previous = a;
    }
    CHECK(previous == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("large deviations at n = 10^4: exact versus the two asymptotic prefactors") {
    const LargeDeviationRatio r = large_deviation_ratio(10000, 0.3);
    // With the Stirling-consistent prefactor 1/sqrt(1 - eps^2) the ratio is 1 + O(1/n).
    CHECK(r.exact_over_stirling() == doctest::Approx(1.0).epsilon(1e-4));
    // The sqrt(1 - eps^2) prefactor is off by exactly 1 / (1 - eps^2) in the limit.
    CHECK(r.exact_over_asymptotic() == doctest::Approx(1.0 / 0.91).epsilon(1e-4));
}

TEST_CASE("exact and log-gamma binomial ratios agree where both apply") {
    for (long n : {10L, 100L, 1000L, 10000L})
        for (long k : {0L, 1L, n / 10, n / 3, n - 1}) {
            const double exact = static_cast<double>(central_binomial_ratio(n, k));
            const double lg = static_cast<double>(central_binomial_ratio_lgamma(n, k));
            if (exact == 0.0) continue;
            REQUIRE(lg / exact == doctest::Approx(1.0).epsilon(1e-9));
        }
}

TEST_CASE("stirling_proportion") {
    CHECK(stirling_proportion(1000000, 2.0) <= 1.10 * 2.0 * std::exp(-4.0));
    CHECK(stirling_proportion(4, 1.0) == doctest::Approx(112.0 / 70.0).epsilon(1e-15));
    CHECK(stirling_proportion_exact(4, 2) == BigRational(112, 70));
    // floor(sqrt(4) * 0.1) = 0: 2 C(8, 5) / C(8, 4) = 2 * 4/5.
    CHECK(stirling_proportion(4, 0.1) == doctest::Approx(8.0 / 5.0).epsilon(1e-15));
    CHECK(stirling_proportion_exact(4, 0) == BigRational(8, 5));
    CHECK_THROWS_AS(stirling_proportion(4, 0.0), DomainError);
    CHECK_THROWS_AS(stirling_proportion(4, 3.0), DomainError);
}

TEST_CASE("multinomial ratio identity") {
    auto [lhs, rhs] = multinomial_ratio_identity(2, 1, 3);
    CHECK(lhs == BigRational(2, 3));
    CHECK(rhs == BigRational(2, 3));
    for (int n = 1; n <= 6; ++n) {
        auto [l0, r0] = multinomial_ratio_identity(n, 0, 4);
        CHECK(l0 == 1);
        CHECK(r0 == 1);
    }
    auto [l, r] = multinomial_ratio_identity(3, 2, 4);
    CHECK(l == r);
    for (int n = 0; n <= 12; ++n)
        for (int m = 0; m <= n; ++m)
            for (int big_n = 2; big_n <= 5; ++big_n) {
                auto [a, b] = multinomial_ratio_identity(n, m, big_n);
                REQUIRE(a == b);
            }
    CHECK_THROWS_AS(multinomial_ratio_identity(3, 4, 3), DomainError);
}
