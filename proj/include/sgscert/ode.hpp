#pragma once

#include <array>
#include <memory>
#include <vector>

#include "sgscert/bloch_pwc.hpp"
#include "sgscert/interval.hpp"
#include "sgscert/potential.hpp"

namespace sgscert {

struct OdeOptions {
    int order = 16;
    double max_step = 0.1;
    int max_halvings = 30;

    bool operator==(const OdeOptions&) const = default;
};

struct StateBox {
    Interval u;
    Interval du;
};

// Rows (u, u'), columns = initial data (1, 0) and (0, 1).
using Matrix2 = std::array<std::array<Interval, 2>, 2>;

Matrix2 operator*(const Matrix2& a, const Matrix2& b);
StateBox operator*(const Matrix2& a, const StateBox& s);

struct MonodromyEnclosure {
    Matrix2 M;

    Interval trace() const { return M[0][0] + M[1][1]; }
    Interval det() const { return M[0][0] * M[1][1] - M[0][1] * M[1][0]; }
};

struct FloquetData {
    Interval D;      // trace
    Interval rho;    // multiplier > 1
    Interval kappa;  // log rho
    StateBox v;      // eigenvector for rho (the u_- initial data)
    StateBox w;      // eigenvector for 1/rho (the u_+ initial data)
};

// f(t) in sum coef[k] t^k + rem * t^N, N = coef.size(), for t in [0, h].
struct TaylorModel1 {
    std::vector<Interval> coef;
    Interval rem;

    Interval eval(const Interval& t) const;
};

// Validated solution models on [x0, x1] for both fundamental columns.
struct StepModel {
    double x0 = 0.0, x1 = 0.0;
    std::array<TaylorModel1, 2> u;
    std::array<TaylorModel1, 2> du;
    Matrix2 end;
};

// One validated step of u'' = (q0 + q1 t) u, t in [0, x1 - x0]. Throws
// StepTooLarge when the a priori enclosure cannot be verified.
StepModel taylor_step(const Interval& q0, const Interval& q1, double x0, double x1, int order);

// Low-order step for u'' = q(t) u with only q(t) in Q known (uncertain breakpoints).
StepModel range_step(const Interval& Q, double x0, double x1);

StateBox propagate_linear_piece(const Interval& q0, const Interval& q1, const Interval& h, const StateBox& state,
                                int order);

// Fundamental-matrix models over one period [0, 1].
class PeriodFlow {
public:
    PeriodFlow(const Potential& p, const Interval& lambda, const OdeOptions& opts = {});

    const std::vector<StepModel>& steps() const { return steps_; }
    const Potential& potential() const { return potential_; }
    const Interval& lambda() const { return lambda_; }
    MonodromyEnclosure monodromy() const;

private:
    void add_clean(double p, double q, const OdeOptions& opts);
    void add_dirty(double p, double q);
    void add_linear_steps(const Line& line, double p, double q, const OdeOptions& opts, int depth);

    Potential potential_;
    Interval lambda_;
    std::vector<StepModel> steps_;
};

MonodromyEnclosure monodromy(const Potential& p, const Interval& lambda, const OdeOptions& opts = {});

// Throws SpectralConditionFailure if inf trace <= 2, DegenerateEigenvector if
// no eigenvector candidate is certified nonzero.
FloquetData floquet(const MonodromyEnclosure& m);

// Decaying Bloch mode on the whole line: u(y + 1) = multiplier * u(y).
// For a reflected profile u(y) = source(-y).
class BlochProfile {
public:
    // Restriction of u to [x0 + t_lo, x0 + t_hi] within one step:
    // u(x0 + t) in scale * (sum coef[k] t^k + rem t^N).
    struct Local {
        double x0 = 0.0;
        Interval t_lo, t_hi;
        std::vector<Interval> coef;
        Interval rem;
        Interval scale;
    };

    BlochProfile(std::shared_ptr<const PeriodFlow> flow, const StateBox& init, const Interval& multiplier);
    static BlochProfile reflection_of(const BlochProfile& source, const Interval& multiplier);

    const Interval& multiplier() const { return multiplier_; }
    bool reflected() const { return source_ != nullptr; }
    const BlochProfile& source() const { return *source_; }

    Interval u(const Interval& y) const;
    Interval du(const Interval& y) const;
    StateBox state_at(double y) const;

    // Enclosures of the step boundaries that may lie in [lo, hi], sorted.
    std::vector<Interval> mesh_points(double lo, double hi) const;
    // [p, q] must lie in one step; not for reflected profiles.
    Local local(double p, double q) const;

private:
    struct StateModel {
        double x0, x1;
        TaylorModel1 u, du;
    };
    Interval eval_cell(const Interval& r, bool derivative) const;  // r within [0, 1]
    Interval eval(const Interval& y, bool derivative) const;
    std::size_t step_index(double r) const;

    std::shared_ptr<const PeriodFlow> flow_;
    std::vector<StateModel> models_;
    Interval multiplier_;
    std::shared_ptr<const BlochProfile> source_;
};

// Both Bloch modes of one potential from a single period solve.
struct BlochOde {
    MonodromyEnclosure monodromy;
    FloquetData floquet;
    BlochProfile minus;  // decays at -infinity, multiplier rho
    BlochProfile plus;   // decays at +infinity, multiplier 1/rho
};

BlochOde bloch_ode(const Potential& p, const Interval& lambda, const OdeOptions& opts = {});

struct ProfileCell {
    Interval x;
    Interval u;
    Interval u_sq;
};

// Enclosures of u_- and u_-^2 on n uniform subintervals of [xl, xr].
std::vector<ProfileCell> bloch_minus_profile(const Potential& p, const Interval& lambda, double xl, double xr, int n,
                                             const OdeOptions& opts = {});
std::vector<ProfileCell> sample_profile(const BlochProfile& prof, double xl, double xr, int n);

}  // namespace sgscert
