#include "sgscert/criteria_pwc.hpp"

#include <algorithm>
#include <cmath>

#include "sgscert/errors.hpp"

namespace sgscert {

namespace {

const Interval kHalf(0.5);
const Interval kOne(1.0);
const Interval kTwo(2.0);

Interval clamp_nonneg(const Interval& x) { return Interval(std::max(0.0, x.lo()), std::max(0.0, x.hi())); }

// int over [L, R] of 1_B(y - sigma) u(y)^2 dy, B = [s, 1) + Z
Interval shifted_b_mass(const SquareAntiderivative& F, const Interval& s, const Interval& L, const Interval& R,
                        const Interval& sigma)
{
    double n0 = std::floor(L.lo() - sigma.hi() - 1.0) - 1.0;
    double n1 = std::ceil(R.hi() - sigma.lo() - s.lo()) + 1.0;
    Interval total(0.0);
    for (double n = n0; n <= n1; n += 1.0) {
        Interval start = sigma + s + Interval(n);
        Interval stop = sigma + kOne + Interval(n);
        if (start.lo() > R.hi() || stop.hi() < L.lo()) continue;
        total += F.between(max(start, L), min(stop, R));
    }
    return total;
}

void require_mid_jump(const PiecewiseConstantCell& c, const char* what)
{
    if (!(c.s == kHalf)) {
        throw InputError(std::string(what) + " requires the jump at s = 1/2, got s = " + to_string(c.s));
    }
}

Interval em(const Interval& x) { return expm1(x); }      // e^x - 1
Interval om(const Interval& x) { return -expm1(x); }     // 1 - e^x

// Printed branch formulas; t must lie within one branch.
Interval published_I1(const BlochPwc& w, const Interval& t, bool upper)
{
    const Interval &al = w.alpha, &be = w.beta;
    const Vec4& x = w.xi_minus;
    const Interval &a = w.cell.a, &b = w.cell.b;
    Interval e2k = exp(-(kTwo * w.kappa));
    Interval p = kOne + kTwo * t;   // 1 + 2t
    Interval q = kTwo * t - kOne;   // 2t - 1
    Interval A, B;
    if (!upper) {
        A = sqr(x[0]) * exp(p * al) * em(q * al) * om(-(kTwo * t * al)) +
            sqr(x[1]) * exp(-(p * al)) * em(-(q * al)) * em(kTwo * t * al);
        B = sqr(x[2]) * exp(p * be) * em(-(q * be)) * em(kTwo * t * be) +
            sqr(x[3]) * exp(-(p * be)) * em(q * be) * om(-(kTwo * t * be));
    } else {
        Interval tm1 = t - kOne;
        A = sqr(x[0]) * exp(p * al) * em(-(q * al)) * em(kTwo * tm1 * al) +
            sqr(x[1]) * exp(-(p * al)) * em(q * al) * om(-(kTwo * tm1 * al));
        B = sqr(x[2]) * exp(kTwo * (t + kOne) * be) * em(-(q * be)) * om(kTwo * tm1 * be) +
            sqr(x[3]) * exp(-(kTwo * (t + kOne) * be)) * em(q * be) * em(-(kTwo * tm1 * be));
    }
    Interval ba = b - a;
    return ba / (kTwo * al) * e2k * A + ba / (kTwo * be) * e2k * B;
}

Interval published_I2(const BlochPwc& w, const Interval& t, bool upper)
{
    const Interval &al = w.alpha, &be = w.beta;
    const Vec4& x = w.xi_plus;
    const Interval &a = w.cell.a, &b = w.cell.b;
    Interval q = kTwo * t - kOne;  // 2t - 1
    Interval A, B;
    if (!upper) {
        A = sqr(x[0]) * exp(-(q * al)) * em(q * al) * om(-(kTwo * t * al)) +
            sqr(x[1]) * exp(q * al) * em(-(q * al)) * em(kTwo * t * al);
        B = sqr(x[2]) * exp(-(q * be)) * em(-(q * be)) * em(kTwo * t * be) +
            sqr(x[3]) * exp(q * be) * em(q * be) * om(-(kTwo * t * be));
    } else {
        Interval tm1 = t - kOne;
        A = sqr(x[0]) * exp(-(q * al)) * em(-(q * al)) * em(kTwo * tm1 * al) +
            sqr(x[1]) * exp(q * al) * em(q * al) * om(-(kTwo * tm1 * al));
        B = sqr(x[2]) * exp(-(kTwo * tm1 * be)) * em(-(q * be)) * om(kTwo * tm1 * be) +
            sqr(x[3]) * exp(kTwo * tm1 * be) * em(q * be) * em(-(kTwo * tm1 * be));
    }
    Interval ab = a - b;
    return ab / (kTwo * al) * A + ab / (kTwo * be) * B;
}

template <class F>
Interval split_at_half(const Interval& tau, F&& branch)
{
    if (tau.hi() < 0.5) return branch(tau, false);
    if (tau.lo() >= 0.5) return branch(tau, true);
    return hull(branch(Interval(tau.lo(), 0.5), false), branch(Interval(0.5, tau.hi()), true));
}

void require_tau(const Interval& tau)
{
    if (tau.lo() < 0.0 || tau.hi() > 1.0) throw InputError("tau must lie in [0, 1], got " + to_string(tau));
}

}  // namespace

const char* to_string(DislocationFormula f) { return f == DislocationFormula::Exact ? "exact" : "published"; }

SquareAntiderivative::SquareAntiderivative(const BlochPwc& w, Direction dir)
    : w_(w), xi_(w.xi(dir)), two_kappa_(dir == Direction::Minus ? kTwo * w.kappa : -(kTwo * w.kappa))
{
    at_s_ = branch_a(w_.cell.s);
    period_ = at_s_ + branch_b(kOne);
}

Interval SquareAntiderivative::branch_a(const Interval& r) const
{
    const Interval& al = w_.alpha;
    Interval two_al = kTwo * al;
    return (sqr(xi_[0]) * em(two_al * r) - sqr(xi_[1]) * em(-(two_al * r))) / two_al +
           kTwo * xi_[0] * xi_[1] * r;
}

Interval SquareAntiderivative::branch_b(const Interval& r) const
{
    const Interval& be = w_.beta;
    const Interval& s = w_.cell.s;
    Interval two_be = kTwo * be;
    Interval d = r - s;
    return (sqr(xi_[2]) * exp(two_be * s) * em(two_be * d) - sqr(xi_[3]) * exp(-(two_be * s)) * em(-(two_be * d))) /
               two_be +
           kTwo * xi_[2] * xi_[3] * d;
}

Interval SquareAntiderivative::cell_part(double r) const
{
    const Interval& s = w_.cell.s;
    Interval R(r);
    if (r <= s.lo()) return branch_a(R);
    if (r >= s.hi()) return at_s_ + branch_b(R);
    return hull(branch_a(R), at_s_ + branch_b(R));
}

Interval SquareAntiderivative::operator()(double y) const
{
    double n = std::floor(y);
    Interval r = Interval(y) - Interval(n);
    double rlo = std::clamp(r.lo(), 0.0, 1.0), rhi = std::clamp(r.hi(), 0.0, 1.0);
    Interval f0(cell_part(rlo).lo(), cell_part(rhi).hi());
    if (n == 0.0) return f0;
    // F(n + r) = F(1) sum_{j<n} m^{2j} + m^{2n} F(r), m the multiplier per period
    Interval geo(0.0);
    if (n > 0) {
        for (double j = 0; j < n; j += 1.0) geo += exp(two_kappa_ * Interval(j));
    } else {
        for (double j = n; j < 0; j += 1.0) geo -= exp(two_kappa_ * Interval(j));
    }
    return period_ * geo + exp(two_kappa_ * Interval(n)) * f0;
}

Interval SquareAntiderivative::operator()(const Interval& y) const
{
    return Interval((*this)(y.lo()).lo(), (*this)(y.hi()).hi());
}

Interval SquareAntiderivative::between(const Interval& lo, const Interval& hi) const
{
    return clamp_nonneg((*this)(hi) - (*this)(lo));
}

Interval dislocation_I1(const BlochPwc& w, const Interval& tau, DislocationFormula formula)
{
    require_tau(tau);
    if (formula == DislocationFormula::Published) {
        require_mid_jump(w.cell, "published dislocation formula");
        return split_at_half(tau, [&](const Interval& t, bool upper) { return published_I1(w, t, upper); });
    }
    // substitute y = x + tau: I1 = int_{tau-1}^{tau} (V0(y - 2 tau) - V0(y)) u_-(y)^2 dy
    SquareAntiderivative F(w, Direction::Minus);
    Interval L = tau - kOne;
    Interval shifted = shifted_b_mass(F, w.cell.s, L, tau, kTwo * tau);
    Interval plain = shifted_b_mass(F, w.cell.s, L, tau, Interval(0.0));
    return (w.cell.b - w.cell.a) * (shifted - plain);
}

Interval dislocation_I2(const BlochPwc& w, const Interval& tau, DislocationFormula formula)
{
    require_tau(tau);
    if (formula == DislocationFormula::Published) {
        require_mid_jump(w.cell, "published dislocation formula");
        return split_at_half(tau, [&](const Interval& t, bool upper) { return published_I2(w, t, upper); });
    }
    // y = x - tau: I2 = int_{-tau}^{1-tau} (V0(y + 2 tau) - V0(y)) u_+(y)^2 dy
    SquareAntiderivative F(w, Direction::Plus);
    Interval L = -tau;
    Interval R = kOne - tau;
    Interval shifted = shifted_b_mass(F, w.cell.s, L, R, -(kTwo * tau));
    Interval plain = shifted_b_mass(F, w.cell.s, L, R, Interval(0.0));
    return (w.cell.b - w.cell.a) * (shifted - plain);
}

Interval dislocation_I1(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& tau,
                        DislocationFormula formula)
{
    return dislocation_I1(bloch_pwc(cell, lambda), tau, formula);
}

Interval dislocation_I2(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& tau,
                        DislocationFormula formula)
{
    return dislocation_I2(bloch_pwc(cell, lambda), tau, formula);
}

namespace {

// Shared shape of the two general-interface formulas.
Interval general_form(const BlochPwc& w, const Vec4& x, const Interval& da, const Interval& db)
{
    const Interval &A = w.alpha, &B = w.beta;
    Interval pa = da * x[0] * x[1] + da / (kTwo * A) * (sqr(x[0]) * em(A) + sqr(x[1]) * om(-A));
    Interval pb = db * x[2] * x[3] +
                  db / (kTwo * B) * (sqr(x[2]) * exp(B) * em(B) + sqr(x[3]) * exp(-(kTwo * B)) * em(B));
    return pa + pb;
}

}  // namespace

Interval general_I1(const PiecewiseConstantCell& cell1, const PiecewiseConstantCell& cell2, const Interval& lambda)
{
    require_mid_jump(cell1, "general closed form");
    require_mid_jump(cell2, "general closed form");
    BlochPwc w = bloch_pwc(cell1, lambda);
    return exp(-(kTwo * w.kappa)) * general_form(w, w.xi_minus, cell2.a - cell1.a, cell2.b - cell1.b);
}

Interval general_I2(const PiecewiseConstantCell& cell1, const PiecewiseConstantCell& cell2, const Interval& lambda)
{
    require_mid_jump(cell1, "general closed form");
    require_mid_jump(cell2, "general closed form");
    BlochPwc w = bloch_pwc(cell2, lambda);
    return general_form(w, w.xi_plus, cell1.a - cell2.a, cell1.b - cell2.b);
}

Interval scale_factor(const PiecewiseConstantCell& cell, const Interval& lambda)
{
    return sqrt(cell.a - lambda) * sqrt(cell.b - lambda);
}

CriterionResult dislocation_criteria(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& tau,
                                     DislocationFormula formula, bool scaled)
{
    BlochPwc w = bloch_pwc(cell, lambda);
    CriterionResult r{dislocation_I1(w, tau, formula), dislocation_I2(w, tau, formula), scaled};
    if (scaled) {
        Interval f = w.alpha * w.beta;
        r.I1 = r.I1 * f;
        r.I2 = r.I2 * f;
    }
    return r;
}

CriterionResult general_criteria(const PiecewiseConstantCell& cell1, const PiecewiseConstantCell& cell2,
                                 const Interval& lambda, bool scaled)
{
    CriterionResult r{general_I1(cell1, cell2, lambda), general_I2(cell1, cell2, lambda), scaled};
    if (scaled) {
        r.I1 = r.I1 * scale_factor(cell1, lambda);
        r.I2 = r.I2 * scale_factor(cell2, lambda);
    }
    return r;
}

}  // namespace sgscert
