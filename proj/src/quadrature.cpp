#include "sgscert/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "sgscert/criteria_pwc.hpp"
#include "sgscert/errors.hpp"

namespace sgscert {

void QuadratureBudget::validate() const
{
    if (initial_subintervals < 1) throw InputError("budget: initial_subintervals must be >= 1");
    if (max_refinement_depth < 0) throw InputError("budget: max_refinement_depth must be >= 0");
    if (target == Target::Width && !(epsilon > 0.0)) throw InputError("budget: width target needs epsilon > 0");
    if (ode.order < 1 || !(ode.max_step > 0.0)) throw InputError("budget: bad ODE options");
}

const char* to_string(Route r) { return r == Route::ClosedForm ? "closed-form" : "quadrature"; }

namespace {

// Segments shorter than this are integrated with range boxes only.
constexpr double kTiny = 1e-12;

struct Piece {
    double p, q;
    bool dirty;
    int depth;
    Interval value;
};

class Integrator {
public:
    Integrator(const BlochProfile& u, const std::vector<WeightTerm>& w, const Interval& lo, const Interval& hi,
               const QuadratureBudget& b)
        : u_(u), w_(w), lo_(lo), hi_(hi), b_(b)
    {
        if (lo.hi() > hi.lo()) throw DomainError("quadrature window ends overlap");
    }

    Interval run()
    {
        std::vector<Piece> pieces = initial_pieces();
        for (Piece& pc : pieces) pc.value = evaluate(pc);
        Interval total = sum(pieces);
        for (int round = 0; round < b_.max_refinement_depth && !done(total); ++round) {
            std::vector<std::size_t> order;
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                if (pieces[i].depth < b_.max_refinement_depth && pieces[i].value.width() > 0.0) order.push_back(i);
            }
            if (order.empty()) break;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
                return pieces[a].value.width() > pieces[c].value.width();
            });
            std::size_t take = std::max<std::size_t>(1, (order.size() + 3) / 4);
            std::vector<bool> split(pieces.size(), false);
            for (std::size_t k = 0; k < take; ++k) split[order[k]] = true;

            std::vector<Piece> next;
            next.reserve(pieces.size() + take);
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                const Piece& pc = pieces[i];
                double m = 0.5 * pc.p + 0.5 * pc.q;
                if (!split[i] || !(m > pc.p && m < pc.q)) {
                    next.push_back(pc);
                    continue;
                }
                Piece a{pc.p, m, pc.dirty, pc.depth + 1, {}};
                Piece c{m, pc.q, pc.dirty, pc.depth + 1, {}};
                a.value = evaluate(a);
                c.value = evaluate(c);
                next.push_back(a);
                next.push_back(c);
            }
            pieces = std::move(next);
            Interval s = sum(pieces);
            // both are enclosures of the same number
            total = s.intersects(total) ? intersect(s, total) : s;
        }
        return total;
    }

private:
    bool done(const Interval& t) const
    {
        if (b_.target == QuadratureBudget::Target::Width) return t.width() <= b_.epsilon;
        return t.lo() > 0.0 || t.hi() < 0.0;
    }

    static Interval sum(const std::vector<Piece>& pieces)
    {
        Interval s(0.0);
        for (const Piece& pc : pieces) s += pc.value;
        return s;
    }

    std::vector<Piece> initial_pieces() const
    {
        double A = lo_.lo(), B = hi_.hi();
        std::vector<Interval> marks{lo_, hi_};
        for (const WeightTerm& t : w_) {
            for (const Interval& x : t.v.breakpoints(A, B)) marks.push_back(x);
        }
        for (const Interval& x : u_.mesh_points(A, B)) marks.push_back(x);
        for (double n = std::ceil(A); n <= B; n += 1.0) marks.push_back(Interval(n));
        std::sort(marks.begin(), marks.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });

        std::vector<Interval> zones;
        for (const Interval& m : marks) {
            Interval z(std::max(A, m.lo()), std::min(B, m.hi()));
            if (z.lo() > z.hi()) continue;
            if (!zones.empty() && z.lo() <= zones.back().hi()) {
                zones.back() = hull(zones.back(), z);
            } else {
                zones.push_back(z);
            }
        }

        std::vector<Piece> out;
        double step = 1.0 / b_.initial_subintervals;
        auto add_clean = [&](double p, double q) {
            int n = std::max(1, static_cast<int>(std::ceil((q - p) / step)));
            double a = p;
            for (int k = 1; k <= n; ++k) {
                double c = k == n ? q : p + (q - p) * (static_cast<double>(k) / n);
                if (c > a) out.push_back(Piece{a, c, false, 0, {}});
                a = c;
            }
        };
        double cur = A;
        for (const Interval& z : zones) {
            if (z.lo() > cur) add_clean(cur, z.lo());
            double p = std::max(cur, z.lo());
            if (z.hi() > p) out.push_back(Piece{p, z.hi(), true, 0, {}});
            cur = std::max(cur, z.hi());
        }
        if (B > cur) add_clean(cur, B);
        return out;
    }

    // 1 inside the window, [0, 1] where the window end is uncertain
    Interval indicator(double p, double q) const
    {
        auto overlaps = [&](const Interval& e) { return !e.is_point() && p < e.hi() && q > e.lo(); };
        return overlaps(lo_) || overlaps(hi_) ? Interval(0.0, 1.0) : Interval(1.0);
    }

    Interval evaluate(const Piece& pc) const
    {
        Interval chi = indicator(pc.p, pc.q);
        if (pc.dirty || !chi.is_point() || pc.q - pc.p < kTiny) return riemann(pc, chi);
        // combined weight: value at p plus slope * (y - p)
        Interval wv(0.0), ws(0.0);
        for (const WeightTerm& t : w_) {
            Line l = t.v.line_on(pc.p, pc.q);
            Interval s(t.sign);
            wv += s * l.value;
            ws += s * l.slope;
        }
        if (b_.taylor) return taylor(pc, wv, ws);
        Interval width = Interval(pc.q) - Interval(pc.p);
        Interval wr = wv + ws * Interval(0.0, width.hi());
        return wr * sqr(u_.u(Interval(pc.p, pc.q))) * width;
    }

    Interval riemann(const Piece& pc, const Interval& chi) const
    {
        Interval y(pc.p, pc.q);
        Interval w(0.0);
        for (const WeightTerm& t : w_) w += Interval(t.sign) * t.v.range_over(y);
        Interval width = Interval(pc.q) - Interval(pc.p);
        return chi * w * sqr(u_.u(y)) * width;
    }

    // int W(t) P(t)^2 exactly plus the remainder terms, in the step variable t.
    Interval taylor(const Piece& pc, const Interval& wv, const Interval& ws) const
    {
        bool refl = u_.reflected();
        BlochProfile::Local loc = refl ? u_.source().local(-pc.q, -pc.p) : u_.local(pc.p, pc.q);
        Interval a = loc.t_lo, b = loc.t_hi;
        Interval W0, W1;
        if (!refl) {
            W1 = ws;
            W0 = wv - ws * a;
        } else {
            // y = q - (t - t_lo)
            Interval wq = wv + ws * (Interval(pc.q) - Interval(pc.p));
            W1 = -ws;
            W0 = wq + ws * a;
        }
        const std::vector<Interval>& c = loc.coef;
        const std::size_t N = c.size();
        std::vector<Interval> sq(2 * N - 1, Interval(0.0));
        for (std::size_t i = 0; i < N; ++i) {
            sq[2 * i] += sqr(c[i]);
            for (std::size_t j = i + 1; j < N; ++j) sq[i + j] += Interval(2.0) * c[i] * c[j];
        }
        std::vector<Interval> d(2 * N, Interval(0.0));
        for (std::size_t k = 0; k < sq.size(); ++k) {
            d[k] += W0 * sq[k];
            d[k + 1] += W1 * sq[k];
        }
        Interval exact(0.0);
        Interval ap = a, bp = b;  // a^(k+1), b^(k+1)
        for (std::size_t k = 0; k < d.size(); ++k) {
            exact += d[k] * (bp - ap) / Interval(static_cast<double>(k + 1));
            ap *= a;
            bp *= b;
        }
        Interval T(a.lo(), b.hi());
        Interval PT = loc_poly(c, T);
        Interval rT = loc.rem * pow(T, static_cast<int>(N));
        Interval len = b - a;
        len = Interval(std::max(0.0, len.lo()), std::max(0.0, len.hi()));
        Interval extra = (W0 + W1 * T) * (Interval(2.0) * PT * rT + sqr(rT)) * len;
        return sqr(loc.scale) * (exact + extra);
    }

    static Interval loc_poly(const std::vector<Interval>& c, const Interval& t)
    {
        Interval r = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) r = r * t + c[k];
        return r;
    }

    const BlochProfile& u_;
    const std::vector<WeightTerm>& w_;
    Interval lo_, hi_;
    const QuadratureBudget& b_;
};

Interval unbounded() { return Interval(-DBL_MAX, DBL_MAX); }

}  // namespace

Interval weighted_square_integral(const BlochProfile& u, const std::vector<WeightTerm>& weight, const Interval& lo,
                                  const Interval& hi, const QuadratureBudget& budget)
{
    budget.validate();
    return Integrator(u, weight, lo, hi, budget).run();
}

DislocationEvaluator::DislocationEvaluator(const Potential& v0, const Interval& lambda, const OdeOptions& opts)
    : v0_(v0), ode_(bloch_ode(v0, lambda, opts))
{
}

Interval DislocationEvaluator::I1(const Interval& tau_right, const Interval& tau_left,
                                  const QuadratureBudget& budget) const
{
    std::vector<WeightTerm> w{{v0_.shifted(-(tau_right + tau_left)), 1.0}, {v0_, -1.0}};
    return weighted_square_integral(ode_.minus, w, tau_right - Interval(1.0), tau_right, budget);
}

Interval DislocationEvaluator::I2(const Interval& tau_right, const Interval& tau_left,
                                  const QuadratureBudget& budget) const
{
    std::vector<WeightTerm> w{{v0_.shifted(tau_right + tau_left), 1.0}, {v0_, -1.0}};
    return weighted_square_integral(ode_.plus, w, -tau_left, Interval(1.0) - tau_left, budget);
}

Interval integral_I1(const InterfaceSpec& spec, const QuadratureBudget& budget)
{
    if (spec.kind() == InterfaceKind::Dislocation) {
        return DislocationEvaluator(spec.base(), spec.lambda(), budget.ode).I1(spec.tau(), spec.tau_left(), budget);
    }
    BlochOde b = bloch_ode(spec.v1(), spec.lambda(), budget.ode);
    std::vector<WeightTerm> w{{spec.v2(), 1.0}, {spec.v1(), -1.0}};
    return weighted_square_integral(b.minus, w, Interval(-1.0), Interval(0.0), budget);
}

Interval integral_I2(const InterfaceSpec& spec, const QuadratureBudget& budget)
{
    if (spec.kind() == InterfaceKind::Dislocation) {
        return DislocationEvaluator(spec.base(), spec.lambda(), budget.ode).I2(spec.tau(), spec.tau_left(), budget);
    }
    BlochOde b = bloch_ode(spec.v2(), spec.lambda(), budget.ode);
    std::vector<WeightTerm> w{{spec.v1(), 1.0}, {spec.v2(), -1.0}};
    return weighted_square_integral(b.plus, w, Interval(0.0), Interval(1.0), budget);
}

CriterionResult quadrature_criteria(const InterfaceSpec& spec, const QuadratureBudget& budget)
{
    if (spec.kind() == InterfaceKind::Dislocation) {
        DislocationEvaluator ev(spec.base(), spec.lambda(), budget.ode);
        return CriterionResult{ev.I1(spec.tau(), spec.tau_left(), budget), ev.I2(spec.tau(), spec.tau_left(), budget),
                               false};
    }
    return CriterionResult{integral_I1(spec, budget), integral_I2(spec, budget), false};
}

namespace {

bool closed_form_cell(const Potential& p)
{
    return p.kind() == Potential::Kind::PiecewiseConstant && !p.is_shifted() && p.pwc()->s == Interval(0.5);
}

}  // namespace

Route route_for(const InterfaceSpec& spec)
{
    if (spec.kind() == InterfaceKind::Dislocation) {
        const Potential& b = spec.base();
        bool pwc = b.kind() == Potential::Kind::PiecewiseConstant && !b.is_shifted();
        return pwc && spec.equal_shifts() ? Route::ClosedForm : Route::Quadrature;
    }
    return closed_form_cell(spec.v1()) && closed_form_cell(spec.v2()) ? Route::ClosedForm : Route::Quadrature;
}

ExistenceReport check_existence(const InterfaceSpec& spec, const QuadratureBudget& budget)
{
    ExistenceReport rep;
    rep.route = route_for(spec);
    try {
        if (rep.route == Route::ClosedForm) {
            rep.result = spec.kind() == InterfaceKind::Dislocation
                             ? dislocation_criteria(*spec.base().pwc(), spec.lambda(), spec.tau())
                             : general_criteria(*spec.v1().pwc(), *spec.v2().pwc(), spec.lambda());
        } else {
            rep.result = quadrature_criteria(spec, budget);
        }
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        rep.result = CriterionResult{unbounded(), unbounded(), false};
        rep.note = e.what();
    }
    rep.verdict = existence_verdict(rep.result, spec.kind());
    return rep;
}

}  // namespace sgscert
