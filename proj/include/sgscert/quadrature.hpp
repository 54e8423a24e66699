#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgscert/criteria.hpp"
#include "sgscert/interface.hpp"
#include "sgscert/ode.hpp"
#include "sgscert/potential.hpp"

namespace sgscert {

struct QuadratureBudget {
    enum class Target { SignDecision, Width };

    int initial_subintervals = 128;  // per unit length
    int max_refinement_depth = 12;
    Target target = Target::SignDecision;
    double epsilon = 0.0;  // for Target::Width
    // Integrate the Taylor models of u exactly on clean segments. Off: plain
    // range boxes everywhere.
    bool taylor = true;
    OdeOptions ode;

    void validate() const;  // throws InputError
    bool operator==(const QuadratureBudget&) const = default;
};

// One summand sign * V(y) of the weight.
struct WeightTerm {
    Potential v;
    double sign = 1.0;
};

// Enclosure of int_lo^hi (sum sign_i V_i(y)) u(y)^2 dy. The ends may be
// intervals (the integral is enclosed for every admissible pair), but
// lo.hi() must not exceed hi.lo().
Interval weighted_square_integral(const BlochProfile& u, const std::vector<WeightTerm>& weight, const Interval& lo,
                                  const Interval& hi, const QuadratureBudget& budget);

// Dislocation integrals from one solve of the unshifted potential:
//   I1 = int_{tr-1}^{tr} (V0(y - tr - tl) - V0(y)) u_-(y)^2 dy
//   I2 = int_{-tl}^{1-tl} (V0(y + tr + tl) - V0(y)) u_+(y)^2 dy
// with u_-(0) = 1 (or u_-'(0) = 1 when u_-(0) is not certified nonzero).
class DislocationEvaluator {
public:
    DislocationEvaluator(const Potential& v0, const Interval& lambda, const OdeOptions& opts = {});

    const BlochOde& base() const { return ode_; }
    Interval I1(const Interval& tau_right, const Interval& tau_left, const QuadratureBudget& budget = {}) const;
    Interval I2(const Interval& tau_right, const Interval& tau_left, const QuadratureBudget& budget = {}) const;

private:
    Potential v0_;
    BlochOde ode_;
};

// I1 = int_{-1}^{0} (V2 - V1) (u_-^(1))^2, I2 = int_0^1 (V1 - V2) (u_+^(2))^2.
Interval integral_I1(const InterfaceSpec& spec, const QuadratureBudget& budget = {});
Interval integral_I2(const InterfaceSpec& spec, const QuadratureBudget& budget = {});
CriterionResult quadrature_criteria(const InterfaceSpec& spec, const QuadratureBudget& budget = {});

enum class Route { ClosedForm, Quadrature };

const char* to_string(Route r);

struct ExistenceReport {
    CriterionResult result;
    ExistenceVerdict verdict;
    Route route = Route::Quadrature;
    std::string note;  // set when a computation failed and the verdict fell back to Inconclusive
};

// Piecewise-constant cells with thin jumps at 1/2 (or a piecewise-constant
// dislocation with equal shifts) use the closed form, everything else the
// quadrature path.
ExistenceReport check_existence(const InterfaceSpec& spec, const QuadratureBudget& budget = {});
Route route_for(const InterfaceSpec& spec);

}  // namespace sgscert
