#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace trotter {

/// Exact non-negative-denominator rational over 64-bit integers, always kept
/// in lowest terms. Used for word metrics, which are integer counts divided by
/// n or n^2.
class Fraction {
public:
    constexpr Fraction() = default;
    Fraction(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p/q", or just "p" when the denominator is 1.
    std::string to_string() const;

    friend Fraction operator+(const Fraction& a, const Fraction& b);
    friend Fraction operator-(const Fraction& a, const Fraction& b);
    friend Fraction operator*(const Fraction& a, const Fraction& b);
    friend Fraction operator/(const Fraction& a, const Fraction& b);

    friend bool operator==(const Fraction& a, const Fraction& b) noexcept = default;
    friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept;

    friend std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.to_string(); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

using MetricValue = Fraction;

} // namespace trotter
