#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trotter/matrix.hpp"
#include "trotter/word.hpp"

namespace trotter {

/// Ordered list of N >= 2 square matrices of equal dimension.
class MatrixTuple {
public:
    explicit MatrixTuple(std::vector<ComplexMatrix> matrices);
    MatrixTuple(ComplexMatrix a, ComplexMatrix b);

    int size() const noexcept { return static_cast<int>(matrices_.size()); }
    int dim() const noexcept { return matrices_.front().dim(); }
    const ComplexMatrix& operator[](int k) const { return matrices_[k]; }
    const std::vector<ComplexMatrix>& matrices() const noexcept { return matrices_; }

    /// A_1 + ... + A_N.
    ComplexMatrix sum() const;
    /// Sum of ||A_k|| in the given norm.
    double norm_sum(NormKind kind) const;

private:
    std::vector<ComplexMatrix> matrices_;
};

/// The N factors exp(A_k / n), computed once per (tuple, n) and then shared
/// read-only.
class ExpCache {
public:
    ExpCache(const MatrixTuple& t, int n);

    int n() const noexcept { return n_; }
    int alphabet() const noexcept { return static_cast<int>(factors_.size()); }
    int dim() const noexcept { return factors_.front().dim(); }
    const ComplexMatrix& factor(int k) const { return factors_[k]; }

private:
    int n_;
    std::vector<ComplexMatrix> factors_;
};

/// F(w) = exp(A_{w[1]}/n) ... exp(A_{w[Nn]}/n), left to right.
ComplexMatrix product_F(const Word& w, const ExpCache& cache);
ComplexMatrix product_F(const Word& w, const MatrixTuple& t);

/// Partial products for j = 1..Nn; the last one equals product_F.
std::vector<ComplexMatrix> prefix_products(const Word& w, const ExpCache& cache);
std::vector<ComplexMatrix> prefix_products(const Word& w, const MatrixTuple& t);

/// (exp(A/n) exp(B/n))^n, by repeated squaring when n is a power of two.
ComplexMatrix lie_trotter(const ComplexMatrix& a, const ComplexMatrix& b, int n);

/// Norm used by every inequality check below (induced 1-norm: sub-multiplicative
/// with ||I|| = 1).
inline constexpr NormKind kBoundNorm = NormKind::one;

/// One evaluated inequality lhs <= rhs. `slack` is an absolute allowance for
/// floating-point rounding; holds == (lhs <= rhs + slack).
struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool holds = false;
    int n = 0;
    std::string context;
};

BoundCheck make_bound_check(std::string name, double lhs, double rhs, int n, std::string context);

/// ||F(w)|| <= exp(sum ||A_k||).
BoundCheck check_uniform_bound(const Word& w, const MatrixTuple& t);
BoundCheck check_uniform_bound(const Word& w, const MatrixTuple& t, const ExpCache& cache);

/// The two commutator estimates:
///   ||e^{A/n} e^{B/n} - e^{(A+B)/n}|| <= ||[A,B]|| / n^2
///   ||e^{A/n} e^{B/n} - e^{B/n} e^{A/n}|| <= 2 ||[A,B]|| / n^2
std::pair<BoundCheck, BoundCheck> check_lemma7(const ComplexMatrix& a, const ComplexMatrix& b, int n);

/// ||F(w) - F(w with i, i+1 swapped)|| <= (2/n^2) ||[A,B]|| e^{||A|| + ||B||}.
BoundCheck check_one_swap(const Word& w, std::size_t i, const MatrixTuple& t);
BoundCheck check_one_swap(const Word& w, std::size_t i, const MatrixTuple& t, const ExpCache& cache);

/// ||(e^{A/n} e^{B/n})^n - e^{A+B}|| <= (1/n) ||[A,B]|| e^{||A|| + ||B||}.
BoundCheck check_lie_trotter(const ComplexMatrix& a, const ComplexMatrix& b, int n);

/// ||F(w) - F(v)|| <= rho1(w, v) 2 ||[A,B]|| e^{||A|| + ||B||}.
BoundCheck check_lipschitz(const Word& w, const Word& v, const MatrixTuple& t);
BoundCheck check_lipschitz(const Word& w, const Word& v, const MatrixTuple& t, const ExpCache& cache);

/// Smallest n0 in [1, n_max] such that `holds(n)` is true for every n in
/// [n0, n_max]; nullopt if it fails at n_max.
std::optional<int> find_threshold_n(const std::function<bool(int)>& holds, int n_max);

/// Closed form of F(w) for A = E_12, B = E_11:
/// [[e, (1/n) sum_i exp(h_i/n)], [0, 1]].
ComplexMatrix appendix_closed_form(const Word& w);

/// Closed form of the j-th partial product (j = 1..2n) for A = E_12, B = E_11.
std::vector<ComplexMatrix> appendix_prefix_closed_form(const Word& w);

/// Word in W_m whose step function is the quantisation of L: L is sampled at
/// the midpoints (i - 1/2)/m, rounded to multiples of 1/m (ties down), and made
/// monotone by a running maximum. Throws DomainError if the samples decrease or
/// leave [0, 1].
Word quantize_increasing_function(const std::function<double(double)>& l, int m);

/// F extended to increasing functions: product_F of the quantised word.
ComplexMatrix product_of_step_function(const std::function<double(double)>& l,
                                       const ComplexMatrix& a, const ComplexMatrix& b, int m);
ComplexMatrix product_of_step_function(const StepFunction& l, const ComplexMatrix& a,
                                       const ComplexMatrix& b);

} // namespace trotter
