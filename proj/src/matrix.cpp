#include "trotter/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trotter/errors.hpp"

namespace trotter {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim())
        throw ShapeError("matrix dimensions differ: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

// In-place LU with partial pivoting. Returns false if a zero pivot is hit.
// perm[i] is the original row now at position i; swaps counts row exchanges.
bool lu_decompose(std::vector<Complex>& a, int d, std::vector<int>& perm, int& swaps) {
    perm.resize(d);
    for (int i = 0; i < d; ++i) perm[i] = i;
    swaps = 0;
    for (int col = 0; col < d; ++col) {
        int pivot = col;
        double best = std::abs(a[col * d + col]);
        for (int r = col + 1; r < d; ++r) {
            const double v = std::abs(a[r * d + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return false;
        if (pivot != col) {
            for (int c = 0; c < d; ++c) std::swap(a[col * d + c], a[pivot * d + c]);
            std::swap(perm[col], perm[pivot]);
            ++swaps;
        }
        const Complex inv = 1.0 / a[col * d + col];
        for (int r = col + 1; r < d; ++r) {
            const Complex f = a[r * d + col] * inv;
            a[r * d + col] = f;
            for (int c = col + 1; c < d; ++c) a[r * d + c] -= f * a[col * d + c];
        }
    }
    return true;
}

} // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw ShapeError("matrix dimension must be positive");
    entries_.assign(static_cast<std::size_t>(dim) * dim, Complex{});
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim < 1) throw ShapeError("matrix dimension must be positive");
    if (entries_.size() != static_cast<std::size_t>(dim) * dim)
        throw ShapeError("expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(entries_.size()));
    if (!is_finite()) throw FinitenessError("matrix has non-finite entries");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : dim_(static_cast<int>(rows.size())) {
    if (dim_ < 1) throw ShapeError("matrix dimension must be positive");
    entries_.reserve(static_cast<std::size_t>(dim_) * dim_);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim_) throw ShapeError("matrix must be square");
        for (double v : row) entries_.emplace_back(v, 0.0);
    }
    if (!is_finite()) throw FinitenessError("matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::unit(int dim, int i, int j) {
    if (i < 1 || j < 1 || i > dim || j > dim) throw ShapeError("matrix unit index out of range");
    ComplexMatrix m(dim);
    m(i - 1, j - 1) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& diag) {
    ComplexMatrix m(static_cast<int>(diag.size()));
    for (std::size_t i = 0; i < diag.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = diag[i];
    return m;
}

bool ComplexMatrix::is_finite() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Complex ComplexMatrix::trace() const noexcept {
    Complex t{};
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : entries_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    const int d = a.dim();
    ComplexMatrix out(d);
    for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) {
            const Complex s = a(r, k);
            if (s == Complex{}) continue;
            for (int c = 0; c < d; ++c) out(r, c) += s * b(k, c);
        }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix& x, const ComplexMatrix& y) { return x * y; }

double norm(const ComplexMatrix& x, NormKind kind) {
    const int d = x.dim();
    switch (kind) {
    case NormKind::frobenius: {
        double s = 0.0;
        for (const auto& z : x.entries()) s += std::norm(z);
        return std::sqrt(s);
    }
    case NormKind::one: {
        double best = 0.0;
        for (int c = 0; c < d; ++c) {
            double s = 0.0;
            for (int r = 0; r < d; ++r) s += std::abs(x(r, c));
            best = std::max(best, s);
        }
        return best;
    }
    case NormKind::inf: {
        double best = 0.0;
        for (int r = 0; r < d; ++r) {
            double s = 0.0;
            for (int c = 0; c < d; ++c) s += std::abs(x(r, c));
            best = std::max(best, s);
        }
        return best;
    }
    }
    return 0.0;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix expm(const ComplexMatrix& x) {
    if (!x.is_finite()) throw FinitenessError("expm of a matrix with non-finite entries");
    static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                   1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                   670442572800.0,      33522128640.0,       1323241920.0,
                                   40840800.0,          960960.0,            16380.0,
                                   182.0,               1.0};
    const int d = x.dim();
    int s = 0;
    const double nrm = norm(x, NormKind::one);
    if (nrm > kExpmTheta) s = static_cast<int>(std::ceil(std::log2(nrm / kExpmTheta)));
    const ComplexMatrix a = x * std::ldexp(1.0, -s);

    const ComplexMatrix ident = ComplexMatrix::identity(d);
    const ComplexMatrix a2 = a * a;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a4 * a2;

    const ComplexMatrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                                  b[3] * a2 + b[1] * ident;
    const ComplexMatrix u = a * u_inner;
    const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 +
                            b[0] * ident;

    ComplexMatrix r = solve(v - u, v + u);
    for (int i = 0; i < s; ++i) r = r * r;
    if (!r.is_finite()) throw NumericalError("expm overflowed");
    return r;
}

SeriesResult expm_series_oracle(const ComplexMatrix& x, int terms) {
    if (terms < 0) throw DomainError("series needs a non-negative number of terms");
    const int d = x.dim();
    ComplexMatrix sum = ComplexMatrix::identity(d);
    ComplexMatrix term = ComplexMatrix::identity(d);
    for (int k = 1; k <= terms; ++k) {
        term = term * x;
        term *= 1.0 / k;
        sum += term;
    }
    const double nx = norm(x, NormKind::frobenius);
    double tail = 1.0;
    for (int k = 1; k <= terms + 1; ++k) tail *= nx / k;
    return {sum, tail};
}

Complex determinant(const ComplexMatrix& x) {
    std::vector<Complex> a = x.entries();
    std::vector<int> perm;
    int swaps = 0;
    const int d = x.dim();
    if (!lu_decompose(a, d, perm, swaps)) return Complex{};
    Complex det = (swaps % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < d; ++i) det *= a[i * d + i];
    return det;
}

ComplexMatrix solve(const ComplexMatrix& x, const ComplexMatrix& rhs) {
    require_same_dim(x, rhs);
    const int d = x.dim();
    std::vector<Complex> a = x.entries();
    std::vector<int> perm;
    int swaps = 0;
    if (!lu_decompose(a, d, perm, swaps)) throw NumericalError("singular matrix in linear solve");
    ComplexMatrix out(d);
    for (int c = 0; c < d; ++c) {
        std::vector<Complex> y(d);
        for (int i = 0; i < d; ++i) {
            Complex s = rhs(perm[i], c);
            for (int k = 0; k < i; ++k) s -= a[i * d + k] * y[k];
            y[i] = s;
        }
        for (int i = d - 1; i >= 0; --i) {
            Complex s = y[i];
            for (int k = i + 1; k < d; ++k) s -= a[i * d + k] * out(k, c);
            out(i, c) = s / a[i * d + i];
        }
    }
    return out;
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    const int d = m.dim();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    bool any_imag = false;
    for (int r = 0; r < d; ++r) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (int c = 0; c < d; ++c) {
            re_row.push_back(m(r, c).real());
            im_row.push_back(m(r, c).imag());
            any_imag = any_imag || m(r, c).imag() != 0.0;
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    nlohmann::json j = {{"d", d}, {"re", std::move(re)}};
    if (any_imag) j["im"] = std::move(im);
    return j;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("matrix must be a JSON object");
    if (!j.contains("d") || !j["d"].is_number_integer()) throw ShapeError("matrix needs an integer \"d\"");
    const long d = j["d"].get<long>();
    if (d < 1 || d > 64) throw ShapeError("matrix dimension must be in [1, 64]");
    auto read_part = [&](const char* key, bool required) -> std::vector<double> {
        std::vector<double> out(static_cast<std::size_t>(d * d), 0.0);
        if (!j.contains(key)) {
            if (required) throw ShapeError(std::string("matrix needs \"") + key + "\"");
            return out;
        }
        const auto& rows = j[key];
        if (!rows.is_array() || static_cast<long>(rows.size()) != d)
            throw ShapeError(std::string("\"") + key + "\" must have " + std::to_string(d) + " rows");
        for (long r = 0; r < d; ++r) {
            const auto& row = rows[r];
            if (!row.is_array() || static_cast<long>(row.size()) != d)
                throw ShapeError(std::string("\"") + key + "\" row " + std::to_string(r) + " must have " +
                                 std::to_string(d) + " columns");
            for (long c = 0; c < d; ++c) {
                if (!row[c].is_number()) throw ParseError(std::string("\"") + key + "\" entries must be numbers");
                const double v = row[c].get<double>();
                if (!std::isfinite(v)) throw FinitenessError("matrix entries must be finite");
                out[r * d + c] = v;
            }
        }
        return out;
    };
    const std::vector<double> re = read_part("re", true);
    const std::vector<double> im = read_part("im", false);
    std::vector<Complex> entries(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) entries[i] = Complex(re[i], im[i]);
    return ComplexMatrix(static_cast<int>(d), std::move(entries));
}

} // namespace trotter
