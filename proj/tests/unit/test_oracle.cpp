// Self-checks of the reference computations against closed forms.

#include <gtest/gtest.h>

#include "oracle.hpp"

using oracle::Norm;
using oracle::Pot;
using oracle::Real;

namespace {

double rel(const Real& x, const Real& y) { return static_cast<double>(abs(x - y) / std::max(Real(1), Real(abs(y)))); }

}  // namespace

TEST(Oracle, KappaOfConstantCellIsSqrt)
{
    EXPECT_LT(rel(oracle::oracle_kappa(1, 1, Real("0.5"), 0).value, 1), 1e-12);
    EXPECT_LT(rel(oracle::oracle_kappa(3, 3, Real("0.3"), -1).value, 2), 1e-12);
}

TEST(Oracle, KappaSolvesTheTraceEquation)
{
    // cosh kappa = cosh(a s) cosh(b (1 - s)) + (a^2 + b^2)/(2 a b) sinh sinh, with a, b the decay rates
    Real a = 1, b = 2, s("0.5"), lam = 0;
    Real al = sqrt(a - lam), be = sqrt(b - lam);
    Real rhs = cosh(al * s) * cosh(be * (1 - s)) + (al * al + be * be) / (2 * al * be) * sinh(al * s) * sinh(be * (1 - s));
    EXPECT_LT(rel(oracle::oracle_kappa(a, b, s, lam).value, acosh(rhs)), 1e-25);
}

TEST(Oracle, XiIsANullVector)
{
    Real a = 1, b = 6, s("0.5"), lam("0.94");
    Real k = oracle::oracle_kappa(a, b, s, lam).value;
    auto xi = oracle::oracle_xi(a, b, s, lam, true);
    EXPECT_LT(rel(xi[3], lam - a + sqrt(a - lam) * sqrt(b - lam)), 1e-30);
    // continuity of the wave at s and the Bloch condition at 1
    oracle::PwcWave u(a, b, s, lam, true, Norm::Published);
    Real al = u.alpha, be = u.beta;
    Real left = xi[0] * exp(al * s) + xi[1] * exp(-al * s);
    Real right = xi[2] * exp(be * s) + xi[3] * exp(-be * s);
    EXPECT_LT(static_cast<double>(abs(left - right)), 1e-30);
    EXPECT_LT(static_cast<double>(abs(u(Real("1.2")) - exp(-k) * u(Real("0.2")))), 1e-30);
}

TEST(Oracle, BulirschStoerMatchesCosh)
{
    oracle::OdeState y = oracle::bs_integrate(4, 0, 0, 0, Real("0.7"), {1, 0, 0});
    EXPECT_LT(rel(y.u, cosh(Real("1.4"))), 1e-30);
    EXPECT_LT(rel(y.du, 2 * sinh(Real("1.4"))), 1e-30);
}

TEST(Oracle, OdeKappaMatchesClosedFormOnPwcCell)
{
    Pot p = Pot::constant_cell(1, 2, Real("0.5"));
    EXPECT_LT(rel(oracle::oracle_kappa_ode(p, 0).value, oracle::oracle_kappa(1, 2, Real("0.5"), 0).value), 1e-25);
}

TEST(Oracle, DislocationAtZeroShiftVanishes)
{
    Pot p = Pot::constant_cell(1, 2, Real("0.5"));
    EXPECT_EQ(oracle::oracle_dislocation(p, 0, 0, 1, Norm::Published).value, 0);
    EXPECT_EQ(oracle::oracle_dislocation(p, 0, 0, 2, Norm::UnitAtZero).value, 0);
}

TEST(Oracle, NumericProfileAgainstExponential)
{
    // constant 2 written as nodes: u_-(y) = e^{sqrt2 y}; weight 1 on [-1, -1/2)
    Pot flat = Pot::linear({{0, 2}, {Real("0.5"), 2}, {1, 2}});
    Pot step = Pot::constant_cell(1, 0, Real("0.5"));
    Real got = oracle::oracle_weighted(flat, 0, false, Norm::UnitAtZero, {{step, 1}}, -1, 0).value;
    Real al = sqrt(Real(2));
    EXPECT_LT(rel(got, (exp(-al) - exp(-2 * al)) / (2 * al)), 1e-20);
}

TEST(Oracle, NumericAndExponentialPathsAgreeOnASmoothedCell)
{
    // A steep ramp cell approximates the step cell; the exact limit is only
    // approached, so check agreement to a loose tolerance.
    Real e("1e-4");
    Pot ramp = Pot::linear({{0, 2}, {e, 1}, {Real("0.5") - e, 1}, {Real("0.5") + e, 2}, {1, 2}});
    Pot cell = Pot::constant_cell(1, 2, Real("0.5"));
    Real tau("0.2");
    Real numeric = oracle::oracle_dislocation(ramp, tau, 0, 1, Norm::UnitAtZero).value;
    Real exact = oracle::oracle_dislocation(cell, tau, 0, 1, Norm::UnitAtZero).value;
    EXPECT_LT(static_cast<double>(abs(numeric - exact)), 1e-3);
}
