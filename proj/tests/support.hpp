#pragma once

// Fixtures and independent reference computations shared by the test suites.
// Nothing here calls into the code paths it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "trotter/matrix.hpp"
#include "trotter/word.hpp"

namespace trotter::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int dim, double scale = 1.0, bool complex_entries = true) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> entries(static_cast<std::size_t>(dim) * dim);
    for (auto& z : entries) z = Complex(gauss(rng), complex_entries ? gauss(rng) : 0.0);
    ComplexMatrix m(dim, entries);
    return m * (scale / norm(m, NormKind::frobenius));
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

inline double frobenius_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return norm(a - b, NormKind::frobenius);
}

/// n! by direct product.
inline boost::multiprecision::cpp_int factorial(long n) {
    boost::multiprecision::cpp_int f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

inline boost::multiprecision::cpp_int binomial_by_factorials(long a, long b) {
    if (b < 0 || b > a) return 0;
    return factorial(a) / (factorial(b) * factorial(a - b));
}

inline boost::multiprecision::cpp_int multinomial_by_factorials(const std::vector<long>& parts) {
    long total = 0;
    boost::multiprecision::cpp_int den = 1;
    for (long p : parts) {
        total += p;
        den *= factorial(p);
    }
    return factorial(total) / den;
}

/// Letter counts among the first j letters, recounted from scratch.
inline int count_prefix(const Word& w, int letter, std::size_t j) {
    int c = 0;
    for (std::size_t i = 0; i < j; ++i) c += w[i] == letter ? 1 : 0;
    return c;
}

/// Every sequence over {0..N-1} of length N*n with equal counts, found by
/// brute-force filtering of all N^(Nn) sequences.
inline std::vector<Word> brute_force_words(int n, int alphabet) {
    const std::size_t len = static_cast<std::size_t>(n) * alphabet;
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= alphabet;
    std::vector<Word> out;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Letter> letters(len);
        std::vector<int> counts(alphabet, 0);
        std::size_t c = code;
        for (std::size_t i = len; i-- > 0;) {
            letters[i] = static_cast<Letter>(c % alphabet);
            ++counts[letters[i]];
            c /= alphabet;
        }
        bool balanced = true;
        for (int k : counts) balanced = balanced && k == n;
        if (balanced) out.emplace_back(std::move(letters), n, alphabet);
    }
    return out;
}

} // namespace trotter::testing
