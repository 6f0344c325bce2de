#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <json.hpp>

namespace trotter {

using Complex = std::complex<double>;

enum class NormKind { frobenius, one, inf };

/// Dense square complex matrix, row-major. Entries are finite on construction.
class ComplexMatrix {
public:
    /// 1x1 zero matrix.
    ComplexMatrix() : ComplexMatrix(1) {}
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::vector<Complex> entries);
    /// Real matrix from nested rows, mostly for fixtures.
    ComplexMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    /// E_ij with 1-based (i, j), as in the usual matrix-unit notation.
    static ComplexMatrix unit(int dim, int i, int j);
    static ComplexMatrix diagonal(const std::vector<Complex>& diag);

    int dim() const noexcept { return dim_; }
    Complex& operator()(int r, int c) { return entries_[r * dim_ + c]; }
    const Complex& operator()(int r, int c) const { return entries_[r * dim_ + c]; }
    const std::vector<Complex>& entries() const noexcept { return entries_; }

    bool is_finite() const noexcept;
    Complex trace() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    int dim_;
    std::vector<Complex> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y);

double norm(const ComplexMatrix& x, NormKind kind = NormKind::frobenius);

/// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Theta for the scaling step of expm: the argument is halved until its
/// 1-norm is at most this.
inline constexpr double kExpmTheta = 0.5;

/// Matrix exponential by scaling and squaring with a [13/13] Pade approximant.
ComplexMatrix expm(const ComplexMatrix& x);

struct SeriesResult {
    ComplexMatrix value;
    /// ||X||^(terms+1) / (terms+1)!, in the Frobenius norm.
    double tail_bound;
};

/// Truncated power series sum_{k <= terms} X^k / k!. Reference oracle for expm.
SeriesResult expm_series_oracle(const ComplexMatrix& x, int terms);

/// Determinant via LU with partial pivoting.
Complex determinant(const ComplexMatrix& x);

/// Solves X * out = rhs (matrix right-hand side) via LU with partial pivoting.
ComplexMatrix solve(const ComplexMatrix& x, const ComplexMatrix& rhs);

/// {"d": d, "re": [[...]], "im": [[...]]}; "im" may be omitted on input.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

} // namespace trotter
