#pragma once

#include <optional>
#include <span>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "trotter/fraction.hpp"
#include "trotter/word.hpp"

namespace trotter {

using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using HighFloat = boost::multiprecision::cpp_bin_float_50;

/// Beyond this n the binomial ratios switch from exact integers to log-gamma.
inline constexpr long kExactRatioLimit = 10000;

/// C(a, b); zero when b < 0 or b > a.
BigCount binomial(long a, long b);

/// (sum parts)! / prod(parts!). Any negative part gives zero.
BigCount multinomial(std::span<const long> parts);

/// 2 * C(2n, n - M + 1), the reflection-principle bound for two letters.
BigCount reflection_bound(int n, int m);

/// 2 N^2 * multinomial(n - M, n + M, n, ..., n), the N-letter bound for
/// words at sup-distance at least (2M + 2)/n from the standard word.
BigCount multinomial_reflection_bound(int n, int m, int alphabet);

struct ProportionBound {
    BigCount count_far;
    BigCount total;
    /// Applicable counting bound; equals `total` when no bound applies.
    BigCount bound;
    /// Level M the bound was instantiated at, if one applies.
    std::optional<int> level;
    HighFloat ratio;
};

/// Exhaustively counts words w with rho_inf(w, standard word) >= threshold and
/// attaches the reflection bound (two letters, M = ceil(threshold*n)) or the
/// multinomial bound (N >= 3, largest M with (2M+2)/n <= threshold).
ProportionBound count_words_far(int n, const Fraction& threshold, int alphabet,
                                int cap = kDefaultEnumerationCap);

/// (1+e) ln(1+e) + (1-e) ln(1-e) with 0 ln 0 = 0.
double entropy_H(double eps);

/// Both sides of the large-deviation estimate. The values underflow double
/// precision already for n in the thousands, hence the wide float type.
struct LargeDeviationRatio {
    /// C(2n, n - floor(n eps)) / C(2n, n).
    HighFloat exact;
    /// sqrt(1 - eps^2) exp(-H(eps) n), the estimate as usually quoted.
    HighFloat asymptotic;
    /// exp(-H(eps) n) / sqrt(1 - eps^2), the Stirling-consistent prefactor.
    HighFloat asymptotic_stirling;

    double exact_over_asymptotic() const { return static_cast<double>(exact / asymptotic); }
    double exact_over_stirling() const { return static_cast<double>(exact / asymptotic_stirling); }
};

LargeDeviationRatio large_deviation_ratio(long n, double eps);

/// 2 C(2n, n - k + 1) / C(2n, n) with k = floor(sqrt(n) p).
double stirling_proportion(long n, double p);

/// Exact form of stirling_proportion for a given offset k = floor(sqrt(n) p).
BigRational stirling_proportion_exact(long n, long k);

/// C(2n, n - k) / C(2n, n), from exact integers up to kExactRatioLimit and by
/// log-gamma above it.
HighFloat central_binomial_ratio(long n, long k);

/// Same ratio always evaluated through log-gamma.
HighFloat central_binomial_ratio_lgamma(long n, long k);

/// lhs = multinomial(n-M, n+M, n, ..., n) / multinomial(n, ..., n),
/// rhs = C(2n, n-M) / C(2n, n).
std::pair<BigRational, BigRational> multinomial_ratio_identity(int n, int m, int alphabet);

} // namespace trotter
