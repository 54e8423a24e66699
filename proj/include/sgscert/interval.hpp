#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

namespace sgscert {

enum class Sign { Negative, Positive, ContainsZero };

const char* to_string(Sign s);

// Closed interval [lo, hi] with finite binary64 endpoints.
//
// All arithmetic is outward rounded: the result contains f(x, y) for every
// x in X, y in Y. Rounding is emulated portably (see rounding.cpp), so the
// type is safe to use from any thread without touching the FPU state.
class Interval {
public:
    constexpr Interval() = default;
    Interval(double x);  // NOLINT(implicit): point interval
    Interval(double lo, double hi);

    // Outward enclosure of a decimal literal ("0.94", "-1e-3") or a
    // rational "p/q" of two decimal literals. Throws InputError.
    static Interval from_decimal(std::string_view text);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const;
    double width() const;  // rounded up
    double mag() const;    // max |x|
    double mig() const;    // min |x|

    bool is_point() const { return lo_ == hi_; }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& y) const { return lo_ <= y.lo_ && y.hi_ <= hi_; }
    bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
    bool intersects(const Interval& y) const { return lo_ <= y.hi_ && y.lo_ <= hi_; }
    bool operator==(const Interval& y) const = default;

    Interval& operator+=(const Interval& y);
    Interval& operator-=(const Interval& y);
    Interval& operator*=(const Interval& y);
    Interval& operator/=(const Interval& y);

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

Interval operator-(const Interval& x);
Interval operator+(const Interval& x, const Interval& y);
Interval operator-(const Interval& x, const Interval& y);
Interval operator*(const Interval& x, const Interval& y);
Interval operator/(const Interval& x, const Interval& y);

Interval sqr(const Interval& x);
Interval pow(const Interval& x, int n);
Interval abs(const Interval& x);
Interval sqrt(const Interval& x);
Interval exp(const Interval& x);
Interval expm1(const Interval& x);
Interval log(const Interval& x);
Interval log1p(const Interval& x);
Interval cosh(const Interval& x);
Interval sinh(const Interval& x);
Interval arcosh(const Interval& x);

Interval hull(const Interval& x, const Interval& y);
Interval min(const Interval& x, const Interval& y);
Interval max(const Interval& x, const Interval& y);
// Throws DomainError when the intervals are disjoint.
Interval intersect(const Interval& x, const Interval& y);

Sign sign_verdict(const Interval& x);

std::string to_string(const Interval& x);
std::ostream& operator<<(std::ostream& os, const Interval& x);

// Shortest decimal that parses back to exactly x.
std::string format_double(double x);

}  // namespace sgscert
