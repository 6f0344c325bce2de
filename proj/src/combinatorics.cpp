#include "trotter/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "trotter/errors.hpp"
#include "trotter/metrics.hpp"

namespace trotter {

namespace bmp = boost::multiprecision;

BigCount binomial(long a, long b) {
    if (a < 0 || b < 0 || b > a) return 0;
    const long k = std::min(b, a - b);
    BigCount result = 1;
    for (long i = 1; i <= k; ++i) {
        result *= a - k + i;
        result /= i;
    }
    return result;
}

BigCount multinomial(std::span<const long> parts) {
    BigCount result = 1;
    long total = 0;
    for (long p : parts) {
        if (p < 0) return 0;
        total += p;
        result *= binomial(total, p);
    }
    return result;
}

BigCount reflection_bound(int n, int m) {
    if (n < 1) throw DomainError("n must be positive");
    if (m < 1 || m > n) throw DomainError("reflection level M must lie in [1, n], got " + std::to_string(m));
    return 2 * binomial(2L * n, static_cast<long>(n) - m + 1);
}

BigCount multinomial_reflection_bound(int n, int m, int alphabet) {
    if (n < 1 || alphabet < 2) throw DomainError("need n >= 1 and N >= 2");
    if (m < 0) throw DomainError("reflection level M must be non-negative");
    std::vector<long> parts(alphabet, n);
    parts[0] = static_cast<long>(n) - m;
    parts[1] = static_cast<long>(n) + m;
    return 2 * BigCount(alphabet) * alphabet * multinomial(parts);
}

ProportionBound count_words_far(int n, const Fraction& threshold, int alphabet, int cap) {
    if (threshold < Fraction(0)) throw DomainError("threshold must be non-negative");
    const Word reference = standard_word(n, alphabet);
    ProportionBound out;
    for_each_word(
        n, alphabet,
        [&](const Word& w) {
            ++out.total;
            if (rho_inf(w, reference) >= threshold) ++out.count_far;
        },
        cap);

    // Scaled threshold t * n = p / q.
    const std::int64_t p = threshold.num() * n;
    const std::int64_t q = threshold.den();
    out.bound = out.total;
    if (alphabet == 2) {
        const std::int64_t m = (p + q - 1) / q; // ceil
        if (m >= 1) {
            out.level = static_cast<int>(m);
            out.bound = 2 * binomial(2L * n, static_cast<long>(n - m + 1));
        }
    } else {
        // Largest M with (2M + 2)/n <= t, i.e. M <= (p - 2q) / 2q.
        const std::int64_t num = p - 2 * q;
        if (num >= 0) {
            const std::int64_t m = num / (2 * q);
            out.level = static_cast<int>(m);
            out.bound = m > n ? BigCount(0) : multinomial_reflection_bound(n, static_cast<int>(m), alphabet);
        }
    }
    out.ratio = HighFloat(out.count_far) / HighFloat(out.total);
    return out;
}

double entropy_H(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw DomainError("H(eps) needs 0 <= eps <= 1");
    auto xlogx = [](double x) { return x == 0.0 ? 0.0 : x * std::log(x); };
    return xlogx(1.0 + eps) + xlogx(1.0 - eps);
}

namespace {

long double log_binomial(long a, long b) {
    return std::lgamma(static_cast<long double>(a) + 1) - std::lgamma(static_cast<long double>(b) + 1) -
           std::lgamma(static_cast<long double>(a - b) + 1);
}

} // namespace

HighFloat central_binomial_ratio_lgamma(long n, long k) {
    if (n < 1) throw DomainError("n must be positive");
    const long b = n - k;
    if (b < 0 || b > 2 * n) return HighFloat(0);
    const long double log_ratio = log_binomial(2 * n, b) - log_binomial(2 * n, n);
    return bmp::exp(HighFloat(log_ratio));
}

HighFloat central_binomial_ratio(long n, long k) {
    if (n < 1) throw DomainError("n must be positive");
    if (n > kExactRatioLimit) return central_binomial_ratio_lgamma(n, k);
    const BigRational r(binomial(2 * n, n - k), binomial(2 * n, n));
    return HighFloat(r);
}

LargeDeviationRatio large_deviation_ratio(long n, double eps) {
    if (n < 1) throw DomainError("n must be positive");
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("large deviation ratio needs 0 < eps < 1");
    const long k = static_cast<long>(std::floor(static_cast<double>(n) * eps));
    const HighFloat decay = bmp::exp(HighFloat(-entropy_H(eps)) * n);
    const HighFloat root = bmp::sqrt(HighFloat(1) - HighFloat(eps) * HighFloat(eps));
    LargeDeviationRatio out;
    out.exact = central_binomial_ratio(n, k);
    out.asymptotic = root * decay;
    out.asymptotic_stirling = decay / root;
    return out;
}

double stirling_proportion(long n, double p) {
    if (n < 1) throw DomainError("n must be positive");
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("p(n) must be positive");
    const double offset = std::sqrt(static_cast<double>(n)) * p;
    if (offset > static_cast<double>(n)) throw DomainError("sqrt(n) p(n) must not exceed n");
    const long k = static_cast<long>(std::floor(offset));
    return static_cast<double>(2 * central_binomial_ratio(n, k - 1));
}

BigRational stirling_proportion_exact(long n, long k) {
    if (n < 1 || k < 0 || k > n) throw DomainError("need n >= 1 and 0 <= k <= n");
    return BigRational(2 * binomial(2 * n, n - k + 1), binomial(2 * n, n));
}

std::pair<BigRational, BigRational> multinomial_ratio_identity(int n, int m, int alphabet) {
    if (n < 0 || m < 0 || m > n) throw DomainError("need 0 <= M <= n");
    if (alphabet < 2) throw DomainError("need N >= 2");
    std::vector<long> balanced(alphabet, n);
    std::vector<long> shifted = balanced;
    shifted[0] = static_cast<long>(n) - m;
    shifted[1] = static_cast<long>(n) + m;
    BigRational lhs(multinomial(shifted), multinomial(balanced));
    BigRational rhs(binomial(2L * n, static_cast<long>(n) - m), binomial(2L * n, n));
    return {lhs, rhs};
}

} // namespace trotter
