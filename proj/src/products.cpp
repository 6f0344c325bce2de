#include "trotter/products.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trotter/errors.hpp"
#include "trotter/metrics.hpp"

namespace trotter {

namespace {

constexpr double kRelativeSlack = 1e-12;

void require_two_letters(const Word& w, const char* what) {
    if (w.alphabet() != 2) throw UnsupportedAlphabetError(std::string(what) + " needs a two-letter word");
}

void require_matching(const Word& w, const ExpCache& cache) {
    if (w.alphabet() != cache.alphabet())
        throw ShapeError("word alphabet size " + std::to_string(w.alphabet()) + " differs from tuple size " +
                         std::to_string(cache.alphabet()));
    if (w.n() != cache.n())
        throw ShapeError("word has n=" + std::to_string(w.n()) + " but factors were built for n=" +
                         std::to_string(cache.n()));
}

// ||[A,B]|| e^{||A|| + ||B||} in the bound norm.
double commutator_scale(const ComplexMatrix& a, const ComplexMatrix& b) {
    return norm(commutator(a, b), kBoundNorm) * std::exp(norm(a, kBoundNorm) + norm(b, kBoundNorm));
}

BoundCheck scaled_check(std::string name, double lhs, double rhs, double scale, int n, std::string context) {
    BoundCheck c = make_bound_check(std::move(name), lhs, rhs, n, std::move(context));
    c.slack = kRelativeSlack * std::max({1.0, std::abs(rhs), scale});
    c.holds = c.lhs <= c.rhs + c.slack;
    return c;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

MatrixTuple::MatrixTuple(std::vector<ComplexMatrix> matrices) : matrices_(std::move(matrices)) {
    if (matrices_.size() < 2) throw ShapeError("a matrix tuple needs at least two matrices");
    for (const auto& m : matrices_) {
        if (m.dim() != matrices_.front().dim()) throw ShapeError("all matrices in a tuple must share a dimension");
        if (!m.is_finite()) throw FinitenessError("matrix has non-finite entries");
    }
}

MatrixTuple::MatrixTuple(ComplexMatrix a, ComplexMatrix b) : MatrixTuple(std::vector{std::move(a), std::move(b)}) {}

ComplexMatrix MatrixTuple::sum() const {
    ComplexMatrix s = ComplexMatrix::zero(dim());
    for (const auto& m : matrices_) s += m;
    return s;
}

double MatrixTuple::norm_sum(NormKind kind) const {
    double s = 0.0;
    for (const auto& m : matrices_) s += norm(m, kind);
    return s;
}

ExpCache::ExpCache(const MatrixTuple& t, int n) : n_(n) {
    if (n < 1) throw DomainError("n must be positive");
    factors_.reserve(t.size());
    for (const auto& m : t.matrices()) factors_.push_back(expm(m * (1.0 / n)));
}

ComplexMatrix product_F(const Word& w, const ExpCache& cache) {
    require_matching(w, cache);
    ComplexMatrix acc = cache.factor(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) acc = acc * cache.factor(w[i]);
    return acc;
}

ComplexMatrix product_F(const Word& w, const MatrixTuple& t) { return product_F(w, ExpCache(t, w.n())); }

std::vector<ComplexMatrix> prefix_products(const Word& w, const ExpCache& cache) {
    require_matching(w, cache);
    std::vector<ComplexMatrix> out;
    out.reserve(w.size());
    out.push_back(cache.factor(w[0]));
    for (std::size_t i = 1; i < w.size(); ++i) out.push_back(out.back() * cache.factor(w[i]));
    return out;
}

std::vector<ComplexMatrix> prefix_products(const Word& w, const MatrixTuple& t) {
    return prefix_products(w, ExpCache(t, w.n()));
}

ComplexMatrix lie_trotter(const ComplexMatrix& a, const ComplexMatrix& b, int n) {
    if (a.dim() != b.dim()) throw ShapeError("Lie-Trotter product needs matrices of equal dimension");
    if (n < 1) throw DomainError("n must be positive");
    const ComplexMatrix step = expm(a * (1.0 / n)) * expm(b * (1.0 / n));
    ComplexMatrix acc = step;
    if (is_power_of_two(n)) {
        for (int k = n; k > 1; k /= 2) acc = acc * acc;
    } else {
        for (int k = 1; k < n; ++k) acc = acc * step;
    }
    return acc;
}

BoundCheck make_bound_check(std::string name, double lhs, double rhs, int n, std::string context) {
    BoundCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.n = n;
    c.context = std::move(context);
    c.holds = lhs <= rhs + c.slack;
    return c;
}

BoundCheck check_uniform_bound(const Word& w, const MatrixTuple& t, const ExpCache& cache) {
    const double lhs = norm(product_F(w, cache), kBoundNorm);
    const double rhs = std::exp(t.norm_sum(kBoundNorm));
    return scaled_check("uniform_bound", lhs, rhs, rhs, w.n(), "w=" + w.to_string());
}

BoundCheck check_uniform_bound(const Word& w, const MatrixTuple& t) {
    return check_uniform_bound(w, t, ExpCache(t, w.n()));
}

std::pair<BoundCheck, BoundCheck> check_lemma7(const ComplexMatrix& a, const ComplexMatrix& b, int n) {
    if (n < 1) throw DomainError("n must be positive");
    const ComplexMatrix ea = expm(a * (1.0 / n));
    const ComplexMatrix eb = expm(b * (1.0 / n));
    const ComplexMatrix ab = ea * eb;
    const ComplexMatrix ba = eb * ea;
    const ComplexMatrix sum = expm((a + b) * (1.0 / n));
    const double comm = norm(commutator(a, b), kBoundNorm);
    const double n2 = static_cast<double>(n) * n;
    const double scale = norm(ab, kBoundNorm) + norm(ba, kBoundNorm) + norm(sum, kBoundNorm);
    const std::string ctx = "n=" + std::to_string(n);
    return {scaled_check("lemma7_product_vs_sum", norm(ab - sum, kBoundNorm), comm / n2, scale, n, ctx),
            scaled_check("lemma7_commuted_factors", norm(ab - ba, kBoundNorm), 2.0 * comm / n2, scale, n, ctx)};
}

BoundCheck check_one_swap(const Word& w, std::size_t i, const MatrixTuple& t, const ExpCache& cache) {
    require_two_letters(w, "one-swap bound");
    if (i + 1 >= w.size()) throw DomainError("swap position " + std::to_string(i) + " out of range");
    if (w[i] == w[i + 1]) throw DomainError("swap position " + std::to_string(i) + " holds two equal letters");
    const ComplexMatrix f = product_F(w, cache);
    const ComplexMatrix g = product_F(w.swapped(i), cache);
    const double n2 = static_cast<double>(w.n()) * w.n();
    const double rhs = 2.0 / n2 * commutator_scale(t[0], t[1]);
    const double scale = norm(f, kBoundNorm) + norm(g, kBoundNorm);
    return scaled_check("one_swap", norm(f - g, kBoundNorm), rhs, scale, w.n(),
                        "w=" + w.to_string() + " i=" + std::to_string(i));
}

BoundCheck check_one_swap(const Word& w, std::size_t i, const MatrixTuple& t) {
    return check_one_swap(w, i, t, ExpCache(t, w.n()));
}

BoundCheck check_lie_trotter(const ComplexMatrix& a, const ComplexMatrix& b, int n) {
    const ComplexMatrix approx = lie_trotter(a, b, n);
    const ComplexMatrix target = expm(a + b);
    const double rhs = commutator_scale(a, b) / n;
    const double scale = norm(approx, kBoundNorm) + norm(target, kBoundNorm);
    return scaled_check("lie_trotter", norm(approx - target, kBoundNorm), rhs, scale, n, "n=" + std::to_string(n));
}

BoundCheck check_lipschitz(const Word& w, const Word& v, const MatrixTuple& t, const ExpCache& cache) {
    require_two_letters(w, "Lipschitz bound");
    const ComplexMatrix f = product_F(w, cache);
    const ComplexMatrix g = product_F(v, cache);
    const double rhs = rho1(w, v).to_double() * 2.0 * commutator_scale(t[0], t[1]);
    const double scale = norm(f, kBoundNorm) + norm(g, kBoundNorm);
    return scaled_check("lipschitz", norm(f - g, kBoundNorm), rhs, scale, w.n(),
                        "w=" + w.to_string() + " v=" + v.to_string());
}

BoundCheck check_lipschitz(const Word& w, const Word& v, const MatrixTuple& t) {
    return check_lipschitz(w, v, t, ExpCache(t, w.n()));
}

std::optional<int> find_threshold_n(const std::function<bool(int)>& holds, int n_max) {
    std::optional<int> n0;
    for (int n = n_max; n >= 1; --n) {
        if (!holds(n)) break;
        n0 = n;
    }
    return n0;
}

ComplexMatrix appendix_closed_form(const Word& w) {
    require_two_letters(w, "closed form");
    const StepFunction f = step_function(w);
    double sum = 0.0;
    for (std::size_t i = 0; i < f.heights.size(); ++i) sum += std::exp(f.value(i));
    return ComplexMatrix{{std::exp(1.0), sum / w.n()}, {0.0, 1.0}};
}

std::vector<ComplexMatrix> appendix_prefix_closed_form(const Word& w) {
    require_two_letters(w, "closed form");
    const double n = w.n();
    std::vector<ComplexMatrix> out;
    out.reserve(w.size());
    int b_seen = 0;
    double sum = 0.0;
    for (Letter l : w.letters()) {
        if (l == 0)
            sum += std::exp(b_seen / n);
        else
            ++b_seen;
        out.push_back(ComplexMatrix{{std::exp(b_seen / n), sum / n}, {0.0, 1.0}});
    }
    return out;
}

Word quantize_increasing_function(const std::function<double(double)>& l, int m) {
    if (m < 1) throw DomainError("discretisation m must be positive");
    StepFunction f;
    f.n = m;
    f.heights.reserve(m);
    double previous = -std::numeric_limits<double>::infinity();
    int level = 0;
    for (int i = 1; i <= m; ++i) {
        const double y = l((i - 0.5) / m);
        if (!std::isfinite(y) || y < 0.0 || y > 1.0)
            throw DomainError("increasing function must map into [0, 1]");
        if (y < previous) throw DomainError("function is not non-decreasing");
        previous = y;
        const int rounded = static_cast<int>(std::ceil(y * m - 0.5));
        level = std::clamp(std::max(level, rounded), 0, m);
        f.heights.push_back(level);
    }
    return word_from_step_function(f);
}

ComplexMatrix product_of_step_function(const std::function<double(double)>& l, const ComplexMatrix& a,
                                       const ComplexMatrix& b, int m) {
    return product_F(quantize_increasing_function(l, m), MatrixTuple(a, b));
}

ComplexMatrix product_of_step_function(const StepFunction& l, const ComplexMatrix& a, const ComplexMatrix& b) {
    return product_F(word_from_step_function(l), MatrixTuple(a, b));
}

} // namespace trotter
