#include "sgscert/interval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <system_error>

#include "sgscert/errors.hpp"

namespace sgscert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Below this magnitude the error-free transformations for * / sqrt may lose
// exactness through underflow; we fall back to symmetric one-ulp widening.
constexpr double kTiny = 0x1p-960;

// Ulps of slack added on each side of libm results. glibc documents at most
// 1 ulp for exp, expm1, log, log1p on binary64; 2 leaves a safety margin.
constexpr int kLibmUlps = 2;

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

void check_finite(double x, const char* op)
{
    if (!std::isfinite(x)) throw OverflowError(std::string("interval ") + op + ": result is not finite");
}

// Directed rounding emulated with error-free transformations: the exact
// result is r + e with r the round-to-nearest value, so the sign of e says
// on which side of r the true value lies.
struct Rounded {
    double r;
    int side;  // -1: exact < r, 0: exact == r, +1: exact > r, 2: unknown (within one ulp)
    double lower() const { return side < 0 || side == 2 ? down(r) : r; }
    double upper() const { return side > 0 ? up(r) : r; }
};

int sign_of(double e) { return e > 0 ? 1 : (e < 0 ? -1 : 0); }

Rounded add_r(double a, double b)
{
    double s = a + b;
    check_finite(s, "add");
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, sign_of(e)};
}

Rounded mul_r(double a, double b)
{
    double p = a * b;
    check_finite(p, "mul");
    if (a == 0.0 || b == 0.0) return {0.0, 0};
    if (std::fabs(p) < kTiny) return {p, 2};
    return {p, sign_of(std::fma(a, b, -p))};
}

Rounded div_r(double a, double b)
{
    double q = a / b;
    check_finite(q, "div");
    if (a == 0.0) return {0.0, 0};
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return {q, 2};
    double rem = std::fma(-q, b, a);
    return {q, sign_of(rem) * (b > 0 ? 1 : -1)};
}

Rounded sqrt_r(double a)
{
    double s = std::sqrt(a);
    if (a == 0.0) return {0.0, 0};
    if (a < kTiny) return {s, 2};
    return {s, sign_of(std::fma(-s, s, a))};
}

double widen_down(double x, int n)
{
    for (int i = 0; i < n; ++i) x = down(x);
    return x;
}

double widen_up(double x, int n)
{
    for (int i = 0; i < n; ++i) x = up(x);
    return x;
}

Interval libm_enclose(double v, const char* op)
{
    check_finite(v, op);
    return Interval(widen_down(v, kLibmUlps), widen_up(v, kLibmUlps));
}

std::string describe(const Interval& x) { return to_string(x); }

// ---- exact decimal comparison -------------------------------------------

// value = 0.digits * 10^exp10, digits without leading or trailing zeros;
// digits empty means zero.
struct Decimal {
    bool negative = false;
    std::string digits;
    long exp10 = 0;
};

bool parse_decimal(std::string_view s, Decimal& out)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        out.negative = s[i] == '-';
        ++i;
    }
    std::string mant;
    long point = -1;
    bool any = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            mant.push_back(c);
            any = true;
        } else if (c == '.' && point < 0) {
            point = static_cast<long>(mant.size());
        } else {
            break;
        }
    }
    if (!any) return false;
    if (point < 0) point = static_cast<long>(mant.size());
    long e = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        auto [ptr, ec] = std::from_chars(s.data() + i + (i < s.size() && s[i] == '+' ? 1 : 0),
                                         s.data() + s.size(), e);
        if (ec != std::errc() || ptr != s.data() + s.size()) return false;
        i = s.size();
    }
    if (i != s.size()) return false;
    std::size_t first = mant.find_first_not_of('0');
    if (first == std::string::npos) {
        out.digits.clear();
        out.exp10 = 0;
        return true;
    }
    std::size_t last = mant.find_last_not_of('0');
    out.digits = mant.substr(first, last - first + 1);
    out.exp10 = point - static_cast<long>(first) + e;
    return true;
}

Decimal exact_decimal(double d)
{
    // 767 significant digits suffice to print any binary64 value exactly.
    char buf[1024];
    auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::scientific, 770);
    Decimal out;
    parse_decimal(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)), out);
    return out;
}

int compare_magnitude(const Decimal& a, const Decimal& b)
{
    if (a.digits.empty() || b.digits.empty()) {
        return a.digits.empty() ? (b.digits.empty() ? 0 : -1) : 1;
    }
    if (a.exp10 != b.exp10) return a.exp10 < b.exp10 ? -1 : 1;
    std::size_t n = std::max(a.digits.size(), b.digits.size());
    for (std::size_t i = 0; i < n; ++i) {
        char ca = i < a.digits.size() ? a.digits[i] : '0';
        char cb = i < b.digits.size() ? b.digits[i] : '0';
        if (ca != cb) return ca < cb ? -1 : 1;
    }
    return 0;
}

int compare(const Decimal& a, const Decimal& b)
{
    bool za = a.digits.empty(), zb = b.digits.empty();
    bool na = a.negative && !za, nb = b.negative && !zb;
    if (na != nb) return na ? -1 : 1;
    int m = compare_magnitude(a, b);
    return na ? -m : m;
}

Interval enclose_decimal(std::string_view text)
{
    Decimal lit;
    if (!parse_decimal(text, lit)) throw InputError("not a decimal literal: '" + std::string(text) + "'");
    std::string buf(text);
    if (!buf.empty() && buf[0] == '+') buf.erase(0, 1);
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), d);
    if (ec == std::errc::result_out_of_range) {
        // from_chars reports underflow the same way; only overflow is fatal
        if (lit.exp10 > 0) throw InputError("decimal literal out of range: '" + buf + "'");
        return lit.negative ? Interval(-std::numeric_limits<double>::denorm_min(), 0.0)
                            : Interval(0.0, std::numeric_limits<double>::denorm_min());
    }
    if (ec != std::errc() || ptr != buf.data() + buf.size() || !std::isfinite(d)) {
        throw InputError("not a decimal literal: '" + buf + "'");
    }
    int c = compare(lit, exact_decimal(d));
    if (c == 0) return Interval(d);
    return c < 0 ? Interval(down(d), d) : Interval(d, up(d));
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

const char* to_string(Sign s)
{
    switch (s) {
    case Sign::Negative: return "Negative";
    case Sign::Positive: return "Positive";
    case Sign::ContainsZero: return "ContainsZero";
    }
    return "?";
}

Interval::Interval(double x) : lo_(x), hi_(x)
{
    if (!std::isfinite(x)) throw DomainError("interval endpoint is not finite");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("interval endpoint is not finite");
    if (lo > hi) throw DomainError("reversed interval endpoints [" + format_double(lo) + ", " + format_double(hi) + "]");
}

Interval Interval::from_decimal(std::string_view text)
{
    std::string_view t = trim(text);
    auto slash = t.find('/');
    if (slash != std::string_view::npos) {
        Interval den = enclose_decimal(trim(t.substr(slash + 1)));
        if (den.contains_zero()) throw InputError("zero denominator in '" + std::string(t) + "'");
        return enclose_decimal(trim(t.substr(0, slash))) / den;
    }
    return enclose_decimal(t);
}

double Interval::mid() const
{
    double m = 0.5 * lo_ + 0.5 * hi_;
    return std::clamp(m, lo_, hi_);
}

double Interval::width() const { return add_r(hi_, -lo_).upper(); }
double Interval::mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }

double Interval::mig() const
{
    if (contains_zero()) return 0.0;
    return std::min(std::fabs(lo_), std::fabs(hi_));
}

Interval& Interval::operator+=(const Interval& y) { return *this = *this + y; }
Interval& Interval::operator-=(const Interval& y) { return *this = *this - y; }
Interval& Interval::operator*=(const Interval& y) { return *this = *this * y; }
Interval& Interval::operator/=(const Interval& y) { return *this = *this / y; }

Interval operator-(const Interval& x) { return Interval(-x.hi(), -x.lo()); }

Interval operator+(const Interval& x, const Interval& y)
{
    return Interval(add_r(x.lo(), y.lo()).lower(), add_r(x.hi(), y.hi()).upper());
}

Interval operator-(const Interval& x, const Interval& y)
{
    return Interval(add_r(x.lo(), -y.hi()).lower(), add_r(x.hi(), -y.lo()).upper());
}

Interval operator*(const Interval& x, const Interval& y)
{
    if (x.lo() >= 0 && y.lo() >= 0) {
        return Interval(mul_r(x.lo(), y.lo()).lower(), mul_r(x.hi(), y.hi()).upper());
    }
    const double xs[2] = {x.lo(), x.hi()};
    const double ys[2] = {y.lo(), y.hi()};
    double lo = kInf, hi = -kInf;
    for (double a : xs) {
        for (double b : ys) {
            Rounded p = mul_r(a, b);
            lo = std::min(lo, p.lower());
            hi = std::max(hi, p.upper());
        }
    }
    return Interval(lo, hi);
}

Interval operator/(const Interval& x, const Interval& y)
{
    if (y.contains_zero()) throw DomainError("division by interval containing zero: " + describe(y));
    const double xs[2] = {x.lo(), x.hi()};
    const double ys[2] = {y.lo(), y.hi()};
    double lo = kInf, hi = -kInf;
    for (double a : xs) {
        for (double b : ys) {
            Rounded q = div_r(a, b);
            lo = std::min(lo, q.lower());
            hi = std::max(hi, q.upper());
        }
    }
    return Interval(lo, hi);
}

Interval sqr(const Interval& x)
{
    double m = x.mig(), M = x.mag();
    return Interval(std::max(0.0, mul_r(m, m).lower()), mul_r(M, M).upper());
}

Interval pow(const Interval& x, int n)
{
    if (n < 0) return Interval(1.0) / pow(x, -n);
    if (n == 0) return Interval(1.0);
    auto point_pow = [n](double v) {
        Interval r(1.0), b(v);
        for (int k = n; k > 0; k >>= 1) {
            if (k & 1) r = r * b;
            if (k > 1) b = sqr(b);
        }
        return r;
    };
    if (n % 2 == 0) {
        return Interval(std::max(0.0, point_pow(x.mig()).lo()), point_pow(x.mag()).hi());
    }
    return Interval(point_pow(x.lo()).lo(), point_pow(x.hi()).hi());
}

Interval abs(const Interval& x) { return Interval(x.mig(), x.mag()); }

Interval sqrt(const Interval& x)
{
    if (x.lo() < 0) throw DomainError("sqrt of interval with negative part: " + describe(x));
    return Interval(sqrt_r(x.lo()).lower(), sqrt_r(x.hi()).upper());
}

Interval exp(const Interval& x)
{
    double lo = std::max(0.0, libm_enclose(std::exp(x.lo()), "exp").lo());
    double hi = libm_enclose(std::exp(x.hi()), "exp").hi();
    return Interval(lo, hi);
}

Interval expm1(const Interval& x)
{
    double lo = std::max(-1.0, libm_enclose(std::expm1(x.lo()), "expm1").lo());
    double hi = libm_enclose(std::expm1(x.hi()), "expm1").hi();
    if (x.lo() >= 0) lo = std::max(lo, 0.0);
    if (x.hi() <= 0) hi = std::min(hi, 0.0);
    return Interval(lo, hi);
}

Interval log(const Interval& x)
{
    if (x.lo() <= 0) throw DomainError("log of interval with non-positive part: " + describe(x));
    return Interval(libm_enclose(std::log(x.lo()), "log").lo(), libm_enclose(std::log(x.hi()), "log").hi());
}

Interval log1p(const Interval& x)
{
    if (x.lo() <= -1) throw DomainError("log1p of interval reaching -1: " + describe(x));
    double lo = libm_enclose(std::log1p(x.lo()), "log1p").lo();
    double hi = libm_enclose(std::log1p(x.hi()), "log1p").hi();
    if (x.lo() >= 0) lo = std::max(lo, 0.0);
    return Interval(lo, hi);
}

namespace {

Interval cosh_point(double v)
{
    Interval e = exp(Interval(v));
    Interval f = exp(Interval(-v));
    Interval c = (e + f) * Interval(0.5);
    return Interval(std::max(1.0, c.lo()), std::max(1.0, c.hi()));
}

Interval sinh_point(double v)
{
    return (expm1(Interval(v)) - expm1(Interval(-v))) * Interval(0.5);
}

Interval arcosh_point(double v)
{
    Interval x(v);
    Interval t = x - Interval(1.0);
    t = Interval(std::max(0.0, t.lo()), std::max(0.0, t.hi()));
    Interval r;
    if (t.hi() < 0.5) {
        // near 1: arcosh(1 + t) = log1p(t + sqrt(t (t + 2)))
        r = log1p(t + sqrt(t * (t + Interval(2.0))));
    } else {
        r = log(x + sqrt(t * (x + Interval(1.0))));
    }
    return Interval(std::max(0.0, r.lo()), std::max(0.0, r.hi()));
}

}  // namespace

Interval cosh(const Interval& x)
{
    if (x.lo() >= 0) return Interval(cosh_point(x.lo()).lo(), cosh_point(x.hi()).hi());
    if (x.hi() <= 0) return Interval(cosh_point(x.hi()).lo(), cosh_point(x.lo()).hi());
    return Interval(1.0, std::max(cosh_point(x.lo()).hi(), cosh_point(x.hi()).hi()));
}

Interval sinh(const Interval& x)
{
    return Interval(sinh_point(x.lo()).lo(), sinh_point(x.hi()).hi());
}

Interval arcosh(const Interval& x)
{
    if (x.lo() < 1) throw DomainError("arcosh of interval below 1: " + describe(x));
    return Interval(arcosh_point(x.lo()).lo(), arcosh_point(x.hi()).hi());
}

Interval hull(const Interval& x, const Interval& y)
{
    return Interval(std::min(x.lo(), y.lo()), std::max(x.hi(), y.hi()));
}

Interval min(const Interval& x, const Interval& y)
{
    return Interval(std::min(x.lo(), y.lo()), std::min(x.hi(), y.hi()));
}

Interval max(const Interval& x, const Interval& y)
{
    return Interval(std::max(x.lo(), y.lo()), std::max(x.hi(), y.hi()));
}

Interval intersect(const Interval& x, const Interval& y)
{
    if (!x.intersects(y)) throw DomainError("empty intersection of " + describe(x) + " and " + describe(y));
    return Interval(std::max(x.lo(), y.lo()), std::min(x.hi(), y.hi()));
}

Sign sign_verdict(const Interval& x)
{
    if (x.hi() < 0) return Sign::Negative;
    if (x.lo() > 0) return Sign::Positive;
    return Sign::ContainsZero;
}

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string to_string(const Interval& x)
{
    return "[" + format_double(x.lo()) + ", " + format_double(x.hi()) + "]";
}

std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << to_string(x); }

}  // namespace sgscert
