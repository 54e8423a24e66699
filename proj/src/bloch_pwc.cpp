#include "sgscert/bloch_pwc.hpp"

#include <algorithm>
#include <cmath>

#include "sgscert/errors.hpp"
#include "sgscert/interface.hpp"

namespace sgscert {

namespace {

struct Roots {
    Interval alpha, beta;
    Interval diff;  // alpha - beta, evaluated without cancellation
};

Roots roots(const PiecewiseConstantCell& c, const Interval& lambda)
{
    require_below_spectrum(lambda, std::min(c.a.lo(), c.b.lo()), "V0");
    Roots r;
    r.alpha = sqrt(c.a - lambda);
    r.beta = sqrt(c.b - lambda);
    r.diff = (c.a - c.b) / (r.alpha + r.beta);
    return r;
}

// e^x - e^y = e^y (e^{x-y} - 1)
Interval exp_diff(const Interval& x, const Interval& y) { return exp(y) * expm1(x - y); }

Interval checked_denominator(const Interval& d, const char* which)
{
    if (d.contains_zero()) {
        throw DegenerateParameter(std::string("xi denominator ") + which + " encloses zero: " + to_string(d));
    }
    return d;
}

Interval branch_value(const Interval& c1, const Interval& c2, const Interval& w, const Interval& r)
{
    return c1 * exp(w * r) + c2 * exp(-(w * r));
}

}  // namespace

Interval characteristic_exponent(const PiecewiseConstantCell& cell, const Interval& lambda)
{
    Roots r = roots(cell, lambda);
    const Interval& s = cell.s;
    Interval one_minus_s = Interval(1.0) - s;
    Interval sum = r.alpha + r.beta;
    Interval rhs = (sqr(sum) * cosh(s * r.alpha + one_minus_s * r.beta) -
                    sqr(r.diff) * cosh(s * r.alpha - one_minus_s * r.beta)) /
                   (Interval(4.0) * r.alpha * r.beta);
    if (rhs.hi() <= 1.0) {
        throw SpectralConditionFailure("cosh(kappa) enclosure " + to_string(rhs) + " does not exceed 1");
    }
    Interval kappa = arcosh(Interval(std::max(1.0, rhs.lo()), rhs.hi()));
    if (!(kappa.lo() > 0.0)) {
        throw SpectralConditionFailure("characteristic exponent not certified positive: " + to_string(kappa));
    }
    return kappa;
}

Vec4 xi_plus(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& kappa)
{
    Roots r = roots(cell, lambda);
    const Interval& s = cell.s;
    const Interval& al = r.alpha;
    const Interval& be = r.beta;
    Interval one_minus_s = Interval(1.0) - s;
    Interval sum = al + be;

    Interval d1 = checked_denominator(exp_diff(s * sum - kappa, be), "e^{s(alpha+beta)-kappa} - e^{beta}");
    Interval d2 = checked_denominator(exp_diff(s * be - kappa, be - s * al), "e^{s beta-kappa} - e^{beta-s alpha}");

    Vec4 xi;
    xi[0] = exp(-(s * al)) / (Interval(2.0) * d1) *
            (Interval(4.0) * exp(s * al - kappa) * al * be - sqr(sum) * exp((s - Interval(1.0)) * be) +
             sqr(r.diff) * exp(one_minus_s * be));
    xi[1] = (cell.a - cell.b) * sinh(one_minus_s * be) / d2;
    // a - lambda + alpha beta = alpha (alpha + beta)
    xi[2] = al * sum * exp_diff(r.diff * s - kappa, -be) / d1;
    // lambda - a + alpha beta = -alpha (alpha - beta)
    xi[3] = -(al * r.diff);
    return xi;
}

Vec4 xi_minus(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& kappa)
{
    return xi_plus(cell, lambda, -kappa);
}

BlochPwc bloch_pwc(const PiecewiseConstantCell& cell, const Interval& lambda)
{
    BlochPwc w;
    w.cell = cell;
    w.lambda = lambda;
    Roots r = roots(cell, lambda);
    w.alpha = r.alpha;
    w.beta = r.beta;
    w.kappa = characteristic_exponent(cell, lambda);
    w.xi_plus = xi_plus(cell, lambda, w.kappa);
    w.xi_minus = xi_minus(cell, lambda, w.kappa);
    return w;
}

Interval eval_bloch(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& kappa, const Vec4& xi,
                    const Interval& x, Direction dir)
{
    double n = std::floor(x.lo());
    if (x.hi() > n + 1.0) {
        return hull(eval_bloch(cell, lambda, kappa, xi, Interval(x.lo(), n + 1.0), dir),
                    eval_bloch(cell, lambda, kappa, xi, Interval(n + 1.0, x.hi()), dir));
    }
    Roots ro = roots(cell, lambda);
    Interval r = x - Interval(n);
    r = Interval(std::max(0.0, r.lo()), std::min(1.0, r.hi()));
    bool have = false;
    Interval u;
    if (r.lo() <= cell.s.hi()) {
        Interval ra(r.lo(), std::min(r.hi(), cell.s.hi()));
        u = branch_value(xi[0], xi[1], ro.alpha, ra);
        have = true;
    }
    if (r.hi() >= cell.s.lo()) {
        Interval rb(std::max(r.lo(), cell.s.lo()), r.hi());
        Interval ub = branch_value(xi[2], xi[3], ro.beta, rb);
        u = have ? hull(u, ub) : ub;
    }
    if (n == 0.0) return u;
    Interval k = dir == Direction::Plus ? -kappa : kappa;
    return u * exp(k * Interval(n));
}

Interval eval_bloch(const BlochPwc& w, const Interval& x, Direction dir)
{
    return eval_bloch(w.cell, w.lambda, w.kappa, w.xi(dir), x, dir);
}

Vec4 matching_residual(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& k, const Vec4& xi)
{
    Roots r = roots(cell, lambda);
    const Interval& s = cell.s;
    Interval ea = exp(s * r.alpha), ea_ = exp(-(s * r.alpha));
    Interval eb = exp(s * r.beta), eb_ = exp(-(s * r.beta));
    Interval ek = exp(-k);
    Interval fb = exp(r.beta), fb_ = exp(-r.beta);
    Vec4 out;
    out[0] = ea * xi[0] + ea_ * xi[1] - eb * xi[2] - eb_ * xi[3];
    out[1] = r.alpha * ea * xi[0] - r.alpha * ea_ * xi[1] - r.beta * eb * xi[2] + r.beta * eb_ * xi[3];
    out[2] = -(ek * xi[0]) - ek * xi[1] + fb * xi[2] + fb_ * xi[3];
    out[3] = -(r.alpha * ek * xi[0]) + r.alpha * ek * xi[1] + r.beta * fb * xi[2] - r.beta * fb_ * xi[3];
    return out;
}

}  // namespace sgscert
