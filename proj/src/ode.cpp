#include "sgscert/ode.hpp"

#include <algorithm>
#include <cmath>

#include "sgscert/errors.hpp"

namespace sgscert {

namespace {

Interval horner(const std::vector<Interval>& c, const Interval& t)
{
    Interval r = c.back();
    for (std::size_t k = c.size() - 1; k-- > 0;) r = r * t + c[k];
    return r;
}

// Taylor coefficients of u'' = (qa + q1 s) u about s = 0.
std::vector<Interval> recurrence(const Interval& u0, const Interval& u1, const Interval& qa, const Interval& q1,
                                 int count)
{
    std::vector<Interval> c(static_cast<std::size_t>(count));
    c[0] = u0;
    if (count > 1) c[1] = u1;
    for (int k = 0; k + 2 < count; ++k) {
        Interval s = qa * c[k];
        if (k >= 1) s += q1 * c[k - 1];
        c[k + 2] = s / Interval((k + 2.0) * (k + 1.0));
    }
    return c;
}

Interval inflate(const Interval& b, double tail)
{
    double e = 0.1 * b.width() + 2.0 * tail + std::ldexp(b.mag(), -48) + 1e-300;
    return b + Interval(-e, e);
}

TaylorModel1 combine(const Interval& a, const TaylorModel1& ma, const Interval& b, const TaylorModel1& mb)
{
    TaylorModel1 out;
    out.coef.resize(ma.coef.size());
    for (std::size_t k = 0; k < ma.coef.size(); ++k) out.coef[k] = a * ma.coef[k] + b * mb.coef[k];
    out.rem = a * ma.rem + b * mb.rem;
    return out;
}

StateBox eigenvector(const Matrix2& M, const Interval& mu)
{
    StateBox c1{M[0][1], mu - M[0][0]};
    StateBox c2{mu - M[1][1], M[1][0]};
    auto strength = [](const StateBox& c) { return std::max(c.u.mig(), c.du.mig()); };
    const StateBox& c = strength(c1) >= strength(c2) ? c1 : c2;
    if (strength(c) == 0.0) {
        throw DegenerateEigenvector("no eigenvector candidate is certified nonzero for multiplier " + to_string(mu));
    }
    if (c.u.mig() > 0.0) return StateBox{Interval(1.0), c.du / c.u};
    return StateBox{c.u / c.du, Interval(1.0)};
}

// d/2 + sqrt(d^2/4 - 1), increasing for d > 2
Interval larger_root(double d)
{
    Interval half = Interval(d) * Interval(0.5);
    return half + sqrt(sqr(half) - Interval(1.0));
}

}  // namespace

Matrix2 operator*(const Matrix2& a, const Matrix2& b)
{
    Matrix2 r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    }
    return r;
}

StateBox operator*(const Matrix2& a, const StateBox& s)
{
    return StateBox{a[0][0] * s.u + a[0][1] * s.du, a[1][0] * s.u + a[1][1] * s.du};
}

Interval TaylorModel1::eval(const Interval& t) const
{
    return horner(coef, t) + rem * pow(t, static_cast<int>(coef.size()));
}

StepModel taylor_step(const Interval& q0, const Interval& q1, double x0, double x1, int order)
{
    if (!(x1 > x0)) throw DomainError("taylor_step: empty step");
    if (order < 1) throw DomainError("taylor_step: order must be positive");
    const int N = order;
    Interval h = Interval(x1) - Interval(x0);
    Interval H(0.0, h.hi());
    Interval HN = pow(H, N);
    Interval QQ = q0 + q1 * H;
    double hN = HN.hi();

    StepModel m;
    m.x0 = x0;
    m.x1 = x1;
    for (int j = 0; j < 2; ++j) {
        std::vector<Interval> c =
            recurrence(Interval(j == 0 ? 1.0 : 0.0), Interval(j == 0 ? 0.0 : 1.0), q0, q1, N + 2);
        std::vector<Interval> uc(c.begin(), c.begin() + N);
        std::vector<Interval> duc(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k) duc[k] = Interval(k + 1.0) * c[k + 1];
        Interval pu = horner(uc, H);
        Interval pdu = horner(duc, H);
        Interval bu = inflate(pu, c[N].mag() * hN);
        Interval bdu = inflate(pdu, (N + 1.0) * c[N + 1].mag() * hN);

        bool ok = false;
        Interval ru, rdu;
        for (int iter = 0; iter < 10 && !ok; ++iter) {
            std::vector<Interval> cb = recurrence(bu, bdu, QQ, q1, N + 2);
            ru = cb[N];
            rdu = Interval(N + 1.0) * cb[N + 1];
            Interval iu = pu + HN * ru;
            Interval idu = pdu + HN * rdu;
            if (bu.contains(iu) && bdu.contains(idu)) {
                ok = true;
            } else {
                bu = inflate(hull(bu, iu), 0.0);
                bdu = inflate(hull(bdu, idu), 0.0);
            }
        }
        if (!ok) throw StepTooLarge("a priori enclosure not verified on [" + format_double(x0) + ", " +
                                    format_double(x1) + "]");
        m.u[j] = TaylorModel1{std::move(uc), ru};
        m.du[j] = TaylorModel1{std::move(duc), rdu};
        m.end[0][j] = m.u[j].eval(h);
        m.end[1][j] = m.du[j].eval(h);
    }
    return m;
}

StepModel range_step(const Interval& Q, double x0, double x1) { return taylor_step(Q, Interval(0.0), x0, x1, 1); }

StateBox propagate_linear_piece(const Interval& q0, const Interval& q1, const Interval& h, const StateBox& state,
                                int order)
{
    if (!(h.lo() > 0.0)) throw DomainError("propagate_linear_piece: step must be positive");
    StepModel m = taylor_step(q0, q1, 0.0, h.hi(), order);
    Matrix2 E;
    for (int j = 0; j < 2; ++j) {
        E[0][j] = m.u[j].eval(h);
        E[1][j] = m.du[j].eval(h);
    }
    return E * state;
}

PeriodFlow::PeriodFlow(const Potential& p, const Interval& lambda, const OdeOptions& opts)
    : potential_(p), lambda_(lambda)
{
    std::vector<Interval> bps = p.breakpoints(0.0, 1.0);
    // merge overlapping breakpoint enclosures into zones
    std::vector<Interval> zones;
    for (const Interval& b : bps) {
        Interval z(std::max(0.0, b.lo()), std::min(1.0, b.hi()));
        if (z.lo() > z.hi()) continue;
        if (!zones.empty() && z.lo() <= zones.back().hi()) {
            zones.back() = hull(zones.back(), z);
        } else {
            zones.push_back(z);
        }
    }
    double cur = 0.0;
    for (const Interval& z : zones) {
        if (z.lo() > cur) add_clean(cur, z.lo(), opts);
        double lo = std::max(cur, z.lo());
        if (z.hi() > lo) add_dirty(lo, z.hi());
        cur = std::max(cur, z.hi());
    }
    if (cur < 1.0) add_clean(cur, 1.0, opts);
}

void PeriodFlow::add_clean(double p, double q, const OdeOptions& opts)
{
    if (q - p < 1e-12) {
        add_dirty(p, q);
        return;
    }
    Line line = potential_.line_on(p, q);
    int n = std::max(1, static_cast<int>(std::ceil((q - p) / opts.max_step)));
    double a = p;
    for (int k = 1; k <= n; ++k) {
        double b = k == n ? q : p + (q - p) * (static_cast<double>(k) / n);
        add_linear_steps(line, a, b, opts, 0);
        a = b;
    }
}

void PeriodFlow::add_linear_steps(const Line& line, double p, double q, const OdeOptions& opts, int depth)
{
    Interval q0 = line.value + line.slope * (Interval(p) - Interval(line.anchor)) - lambda_;
    try {
        steps_.push_back(taylor_step(q0, line.slope, p, q, opts.order));
    } catch (const StepTooLarge&) {
        double m = 0.5 * p + 0.5 * q;
        if (depth >= opts.max_halvings || !(m > p && m < q)) throw;
        add_linear_steps(line, p, m, opts, depth + 1);
        add_linear_steps(line, m, q, opts, depth + 1);
    }
}

void PeriodFlow::add_dirty(double p, double q)
{
    Interval Q = potential_.range_over(Interval(p, q)) - lambda_;
    try {
        steps_.push_back(range_step(Q, p, q));
    } catch (const StepTooLarge&) {
        double m = 0.5 * p + 0.5 * q;
        if (!(m > p && m < q)) throw;
        add_dirty(p, m);
        add_dirty(m, q);
    }
}

MonodromyEnclosure PeriodFlow::monodromy() const
{
    Matrix2 M{{{Interval(1.0), Interval(0.0)}, {Interval(0.0), Interval(1.0)}}};
    for (const StepModel& s : steps_) M = s.end * M;
    return MonodromyEnclosure{M};
}

MonodromyEnclosure monodromy(const Potential& p, const Interval& lambda, const OdeOptions& opts)
{
    return PeriodFlow(p, lambda, opts).monodromy();
}

FloquetData floquet(const MonodromyEnclosure& m)
{
    FloquetData f;
    f.D = m.trace();
    if (!(f.D.lo() > 2.0)) {
        throw SpectralConditionFailure("monodromy trace " + to_string(f.D) +
                                       " not certified above 2: lambda not verifiably below the spectrum");
    }
    // det M = 1 exactly, so rho + 1/rho = D
    f.rho = Interval(larger_root(f.D.lo()).lo(), larger_root(f.D.hi()).hi());
    f.kappa = arcosh(f.D * Interval(0.5));
    if (!(f.kappa.lo() > 0.0)) throw SpectralConditionFailure("Floquet exponent not certified positive");
    f.v = eigenvector(m.M, f.rho);
    f.w = eigenvector(m.M, Interval(1.0) / f.rho);
    return f;
}

BlochProfile::BlochProfile(std::shared_ptr<const PeriodFlow> flow, const StateBox& init, const Interval& multiplier)
    : flow_(std::move(flow)), multiplier_(multiplier)
{
    StateBox s = init;
    models_.reserve(flow_->steps().size());
    for (const StepModel& st : flow_->steps()) {
        models_.push_back(StateModel{st.x0, st.x1, combine(s.u, st.u[0], s.du, st.u[1]),
                                     combine(s.u, st.du[0], s.du, st.du[1])});
        s = st.end * s;
    }
}

BlochProfile BlochProfile::reflection_of(const BlochProfile& source, const Interval& multiplier)
{
    BlochProfile p = source;
    p.multiplier_ = multiplier;
    p.source_ = std::make_shared<const BlochProfile>(source);
    return p;
}

std::size_t BlochProfile::step_index(double r) const
{
    auto it = std::upper_bound(models_.begin(), models_.end(), r,
                               [](double v, const StateModel& m) { return v < m.x0; });
    if (it == models_.begin()) return 0;
    return static_cast<std::size_t>(it - models_.begin()) - 1;
}

Interval BlochProfile::eval_cell(const Interval& r, bool derivative) const
{
    std::size_t i0 = step_index(r.lo());
    std::size_t i1 = step_index(r.hi());
    bool first = true;
    Interval out;
    for (std::size_t i = i0; i <= i1 && i < models_.size(); ++i) {
        const StateModel& m = models_[i];
        double lo = std::max(r.lo(), m.x0), hi = std::min(r.hi(), m.x1);
        if (lo > hi) continue;
        Interval tl = Interval(lo) - Interval(m.x0);
        Interval th = Interval(hi) - Interval(m.x0);
        double hmax = (Interval(m.x1) - Interval(m.x0)).hi();
        Interval T(std::max(0.0, tl.lo()), std::min(hmax, th.hi()));
        Interval v;
        if (derivative) {
            v = m.du.eval(T);
        } else {
            v = m.u.eval(T);
            Interval c(T.mid());
            Interval mv = m.u.eval(c) + m.du.eval(T) * (T - c);
            if (mv.intersects(v)) v = intersect(v, mv);
        }
        out = first ? v : hull(out, v);
        first = false;
    }
    return out;
}

Interval BlochProfile::eval(const Interval& y, bool derivative) const
{
    if (source_) {
        Interval v = source_->eval(-y, derivative);
        return derivative ? -v : v;
    }
    double n = std::floor(y.lo());
    if (y.hi() > n + 1.0) {
        return hull(eval(Interval(y.lo(), n + 1.0), derivative), eval(Interval(n + 1.0, y.hi()), derivative));
    }
    Interval r = y - Interval(n);
    r = Interval(std::clamp(r.lo(), 0.0, 1.0), std::clamp(r.hi(), 0.0, 1.0));
    Interval v = eval_cell(r, derivative);
    if (n == 0.0) return v;
    return v * pow(multiplier_, static_cast<int>(n));
}

Interval BlochProfile::u(const Interval& y) const { return eval(y, false); }
Interval BlochProfile::du(const Interval& y) const { return eval(y, true); }

StateBox BlochProfile::state_at(double y) const { return StateBox{u(Interval(y)), du(Interval(y))}; }

std::vector<Interval> BlochProfile::mesh_points(double lo, double hi) const
{
    std::vector<Interval> out;
    if (source_) {
        for (const Interval& z : source_->mesh_points(-hi, -lo)) out.push_back(-z);
        std::reverse(out.begin(), out.end());
        return out;
    }
    for (double n = std::floor(lo); n <= std::ceil(hi); n += 1.0) {
        for (const StateModel& m : models_) {
            Interval x = Interval(m.x0) + Interval(n);  // inexact for some n
            if (x.hi() >= lo && x.lo() <= hi) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
    return out;
}

BlochProfile::Local BlochProfile::local(double p, double q) const
{
    double mid = 0.5 * p + 0.5 * q;
    double n = std::floor(mid);
    double r = mid - n;
    const StateModel& m = models_[step_index(r)];
    Local l;
    l.x0 = m.x0 + n;
    double hmax = (Interval(m.x1) - Interval(m.x0)).hi();
    Interval tl = Interval(p) - Interval(n) - Interval(m.x0);
    Interval th = Interval(q) - Interval(n) - Interval(m.x0);
    l.t_lo = Interval(std::clamp(tl.lo(), 0.0, hmax), std::clamp(tl.hi(), 0.0, hmax));
    l.t_hi = Interval(std::clamp(th.lo(), 0.0, hmax), std::clamp(th.hi(), 0.0, hmax));
    l.coef = m.u.coef;
    l.rem = m.u.rem;
    l.scale = n == 0.0 ? Interval(1.0) : pow(multiplier_, static_cast<int>(n));
    return l;
}

BlochOde bloch_ode(const Potential& p, const Interval& lambda, const OdeOptions& opts)
{
    auto flow = std::make_shared<const PeriodFlow>(p, lambda, opts);
    MonodromyEnclosure M = flow->monodromy();
    FloquetData f = floquet(M);
    BlochProfile minus(flow, f.v, f.rho);
    Interval rinv = Interval(1.0) / f.rho;
    BlochProfile plus = p.verified_even() ? BlochProfile::reflection_of(minus, rinv) : BlochProfile(flow, f.w, rinv);
    return BlochOde{M, f, std::move(minus), std::move(plus)};
}

std::vector<ProfileCell> sample_profile(const BlochProfile& prof, double xl, double xr, int n)
{
    if (n < 1 || !(xr >= xl)) throw DomainError("sample_profile: need n >= 1 and xl <= xr");
    std::vector<ProfileCell> out;
    out.reserve(static_cast<std::size_t>(n));
    Interval L(xl), W = (Interval(xr) - Interval(xl)) / Interval(static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
        Interval a = L + W * Interval(static_cast<double>(k));
        Interval b = k + 1 == n ? Interval(xr) : L + W * Interval(k + 1.0);
        Interval x(a.lo(), std::max(a.lo(), b.hi()));
        Interval u = prof.u(x);
        out.push_back(ProfileCell{x, u, sqr(u)});
    }
    return out;
}

std::vector<ProfileCell> bloch_minus_profile(const Potential& p, const Interval& lambda, double xl, double xr, int n,
                                             const OdeOptions& opts)
{
    BlochOde b = bloch_ode(p, lambda, opts);
    return sample_profile(b.minus, xl, xr, n);
}

}  // namespace sgscert
