#pragma once

#include <array>

#include "sgscert/interval.hpp"
#include "sgscert/potential.hpp"

namespace sgscert {

// plus: decays at +infinity, u(x+1) = e^{-kappa} u(x); minus: the reverse.
enum class Direction { Plus, Minus };

using Vec4 = std::array<Interval, 4>;

// Bloch waves of -u'' + V0 u = lambda u for a two-valued cell:
// u = xi1 e^{alpha x} + xi2 e^{-alpha x} on [0, s), xi3 e^{beta x} + xi4 e^{-beta x} on [s, 1)
// with alpha = sqrt(a - lambda), beta = sqrt(b - lambda). The xi are unnormalized.
struct BlochPwc {
    PiecewiseConstantCell cell;
    Interval lambda;
    Interval alpha, beta;
    Interval kappa;
    Vec4 xi_plus;
    Vec4 xi_minus;

    const Vec4& xi(Direction d) const { return d == Direction::Plus ? xi_plus : xi_minus; }
};

// Throws SpectralConditionFailure unless sup lambda < min(a, b) and kappa > 0 is certified.
Interval characteristic_exponent(const PiecewiseConstantCell& cell, const Interval& lambda);

// Throws DegenerateParameter when a denominator encloses zero.
Vec4 xi_plus(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& kappa);
Vec4 xi_minus(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& kappa);

BlochPwc bloch_pwc(const PiecewiseConstantCell& cell, const Interval& lambda);

Interval eval_bloch(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& kappa, const Vec4& xi,
                    const Interval& x, Direction dir);
Interval eval_bloch(const BlochPwc& w, const Interval& x, Direction dir);

// A(k) xi with the matching matrix whose determinant defines kappa; pass
// k = kappa for xi_plus and k = -kappa for xi_minus.
Vec4 matching_residual(const PiecewiseConstantCell& cell, const Interval& lambda, const Interval& k, const Vec4& xi);

}  // namespace sgscert
