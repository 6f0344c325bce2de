#include "trotter/fraction.hpp"

#include <limits>
#include <numeric>

#include "trotter/errors.hpp"

namespace trotter {

namespace {

using Wide = __int128;

Fraction reduce(Wide num, Wide den) {
    if (den == 0) throw DomainError("fraction with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Wide a = num < 0 ? -num : num;
    Wide b = den;
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr Wide lo = std::numeric_limits<std::int64_t>::min();
    constexpr Wide hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) throw DomainError("fraction overflow");
    return Fraction(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

} // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("fraction with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Fraction::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction operator+(const Fraction& a, const Fraction& b) {
    return reduce(Wide(a.num_) * b.den_ + Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Fraction operator-(const Fraction& a, const Fraction& b) {
    return reduce(Wide(a.num_) * b.den_ - Wide(b.num_) * a.den_, Wide(a.den_) * b.den_);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
    return reduce(Wide(a.num_) * b.num_, Wide(a.den_) * b.den_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
    return reduce(Wide(a.num_) * b.den_, Wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept {
    const Wide lhs = Wide(a.num_) * b.den_;
    const Wide rhs = Wide(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace trotter
