#pragma once

#include "sgscert/bloch_pwc.hpp"
#include "sgscert/criteria.hpp"
#include "sgscert/interval.hpp"
#include "sgscert/potential.hpp"

namespace sgscert {

// Exact: I1/I2 of the dislocation integrated in closed form over the true
// breakpoints (any s, interval tau). Published: the printed branch
// formulas for s = 1/2; they are not the dislocation integrals and are only
// offered to reproduce published plots. They never certify.
enum class DislocationFormula { Exact, Published };

const char* to_string(DislocationFormula f);

// I1 = int_{-1}^{0} (V0(x - tau) - V0(x + tau)) u_-(x + tau)^2 dx
Interval dislocation_I1(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& tau,
                        DislocationFormula formula = DislocationFormula::Exact);
// I2 = int_{0}^{1} (V0(x + tau) - V0(x - tau)) u_+(x - tau)^2 dx
Interval dislocation_I2(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& tau,
                        DislocationFormula formula = DislocationFormula::Exact);

Interval dislocation_I1(const BlochPwc& w, const Interval& tau, DislocationFormula formula);
Interval dislocation_I2(const BlochPwc& w, const Interval& tau, DislocationFormula formula);

// Cells with jumps at s = 1/2; I1 uses the u_- wave of cell1, I2 the u_+ wave of cell2.
Interval general_I1(const PiecewiseConstantCell& cell1, const PiecewiseConstantCell& cell2, const Interval& lambda);
Interval general_I2(const PiecewiseConstantCell& cell1, const PiecewiseConstantCell& cell2, const Interval& lambda);

// sqrt(a - lambda) sqrt(b - lambda)
Interval scale_factor(const PiecewiseConstantCell& cell, const Interval& lambda);

CriterionResult dislocation_criteria(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& tau,
                                     DislocationFormula formula = DislocationFormula::Exact, bool scaled = false);
CriterionResult general_criteria(const PiecewiseConstantCell& cell1, const PiecewiseConstantCell& cell2,
                                 const Interval& lambda, bool scaled = false);

// Antiderivative F(y) = int_0^y u(z)^2 dz of a Bloch wave, for any real y.
class SquareAntiderivative {
public:
    SquareAntiderivative(const BlochPwc& w, Direction dir);

    Interval operator()(double y) const;
    // F is increasing, so the range over Y is spanned by its endpoints.
    Interval operator()(const Interval& y) const;

    // max(0, F(hi) - F(lo)): the integral over [lo, hi], or 0 if that is empty
    Interval between(const Interval& lo, const Interval& hi) const;

private:
    Interval cell_part(double r) const;  // r in [0, 1]
    Interval branch_a(const Interval& r) const;
    Interval branch_b(const Interval& r) const;

    BlochPwc w_;
    Vec4 xi_;
    Interval two_kappa_;  // log of the squared multiplier per period
    Interval period_;     // F(1)
    Interval at_s_;       // F(s)
};

}  // namespace sgscert
