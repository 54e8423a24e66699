#include "oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace oracle {

namespace {

using State = std::array<Real, 3>;
using Mat4 = std::array<std::array<Real, 4>, 4>;

Real frac(const Real& x) { return x - floor(x); }

Mat4 matching(const Real& a, const Real& b, const Real& s, const Real& lambda, const Real& kappa)
{
    Real al = sqrt(a - lambda), be = sqrt(b - lambda), ek = exp(-kappa);
    Real ea = exp(s * al), eia = exp(-s * al), eb = exp(s * be), eib = exp(-s * be);
    Real e1 = exp(be), ei1 = exp(-be);
    return Mat4{{
        {ea, eia, -eb, -eib},
        {al * ea, -al * eia, -be * eb, be * eib},
        {-ek, -ek, e1, ei1},
        {-al * ek, al * ek, be * e1, -be * ei1},
    }};
}

Real det4(Mat4 m)
{
    Real d = 1;
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r) {
            if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
        }
        if (m[piv][c] == 0) return Real(0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (int r = c + 1; r < 4; ++r) {
            Real f = m[r][c] / m[c][c];
            for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

Real det3(const Mat4& m, int skip_row, int skip_col)
{
    Real x[3][3];
    for (int r = 0, i = 0; r < 4; ++r) {
        if (r == skip_row) continue;
        for (int c = 0, j = 0; c < 4; ++c) {
            if (c == skip_col) continue;
            x[i][j++] = m[r][c];
        }
        ++i;
    }
    return x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1]) - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0]) +
           x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]);
}

// Nullspace of a rank-3 matrix: the cofactor row of largest norm.
std::array<Real, 4> nullspace(const Mat4& m)
{
    std::array<Real, 4> best{};
    Real best_norm = -1;
    for (int i = 0; i < 4; ++i) {
        std::array<Real, 4> v;
        Real n = 0;
        for (int j = 0; j < 4; ++j) {
            v[j] = ((i + j) % 2 ? -1 : 1) * det3(m, i, j);
            n += v[j] * v[j];
        }
        if (n > best_norm) {
            best_norm = n;
            best = v;
        }
    }
    return best;
}

std::array<Real, 4> raw_xi(const Real& a, const Real& b, const Real& s, const Real& lambda, bool plus)
{
    Real kappa = oracle_kappa(a, b, s, lambda).value;
    return nullspace(matching(a, b, s, lambda, plus ? kappa : Real(-kappa)));
}

State add(const State& x, const Real& h, const State& f) { return {x[0] + h * f[0], x[1] + h * f[1], x[2] + h * f[2]}; }

struct Rhs {
    Real q0, q1, w0, w1;
    State operator()(const Real& t, const State& y) const
    {
        return {y[1], (q0 + q1 * t) * y[0], (w0 + w1 * t) * y[0] * y[0]};
    }
};

State midpoint(const Rhs& f, const Real& t0, const Real& H, const State& y, int n)
{
    Real h = H / n;
    State z0 = y, z1 = add(y, h, f(t0, y));
    for (int m = 1; m < n; ++m) {
        State z2 = add(z0, 2 * h, f(t0 + m * h, z1));
        z0 = z1;
        z1 = z2;
    }
    State end = f(t0 + H, z1);
    State out;
    for (int k = 0; k < 3; ++k) out[k] = (z0[k] + z1[k] + h * end[k]) / 2;
    return out;
}

// One extrapolated macro step.
State bs_step(const Rhs& f, const Real& t0, const Real& H, const State& y)
{
    constexpr int kCols = 14;
    std::vector<std::vector<State>> T(kCols);
    const Real tol("1e-45");
    for (int i = 0; i < kCols; ++i) {
        int ni = 2 * (i + 1);
        T[i].push_back(midpoint(f, t0, H, y, ni));
        for (int j = 1; j <= i; ++j) {
            int nj = 2 * (i - j + 1);
            Real r = Real(ni) / nj;
            Real den = r * r - 1;
            State e;
            for (int k = 0; k < 3; ++k) e[k] = T[i][j - 1][k] + (T[i][j - 1][k] - T[i - 1][j - 1][k]) / den;
            T[i].push_back(e);
        }
        if (i >= 3) {
            Real diff = 0, mag = 1;
            for (int k = 0; k < 3; ++k) {
                diff = std::max(diff, Real(abs(T[i][i][k] - T[i - 1][i - 1][k])));
                mag = std::max(mag, Real(abs(T[i][i][k])));
            }
            if (diff <= tol * mag) return T[i][i];
        }
    }
    return T[kCols - 1][kCols - 1];
}

// Affine coefficients (value at t0, slope) of V - shift on a breakpoint-free piece.
std::pair<Real, Real> affine(const Pot& p, const Real& t0, const Real& t1)
{
    Real mid = (t0 + t1) / 2, sl = p.slope_at(mid);
    return {p(mid) - sl * (mid - t0), sl};
}

// Integrates the mode of `base` over [t0, t1] (base coordinates, t1 - t0 <= 1
// not required) splitting at base breakpoints, with weight coefficients w on
// the whole interval (used only when [t0, t1] is breakpoint-free).
OdeState flow(const Pot& base, const Real& lambda, const Real& t0, const Real& t1, OdeState y, const Real& w0 = 0,
              const Real& w1 = 0)
{
    std::vector<Real> cuts = base.breakpoints(t0, t1);
    cuts.insert(cuts.begin(), t0);
    cuts.push_back(t1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto [q0, q1] = affine(base, cuts[i], cuts[i + 1]);
        Real wa = w0 + w1 * (cuts[i] - t0);
        y = bs_integrate(q0 - lambda, q1, wa, w1, cuts[i + 1] - cuts[i], y);
    }
    return y;
}

std::pair<Real, OdeState> numeric_mode(const Pot& base, const Real& lambda, bool plus)
{
    auto M = oracle_monodromy(base, lambda);
    Real kappa = acosh((M[0][0] + M[1][1]) / 2);
    Real mu = plus ? exp(-kappa) : exp(kappa);
    // eigenvector of M for mu, the better conditioned of the two candidates
    Real e1u = M[0][1], e1d = mu - M[0][0];
    Real e2u = mu - M[1][1], e2d = M[1][0];
    bool first = e1u * e1u + e1d * e1d >= e2u * e2u + e2d * e2d;
    Real u0 = first ? e1u : e2u, du0 = first ? e1d : e2d;
    return {mu, OdeState{1, du0 / u0, 0}};
}

}  // namespace

Pot Pot::constant_cell(const Real& a, const Real& b, const Real& s)
{
    Pot p;
    p.pwc = true;
    p.a = a;
    p.b = b;
    p.s = s;
    return p;
}

Pot Pot::linear(std::vector<std::pair<Real, Real>> nodes)
{
    Pot p;
    p.pwc = false;
    p.nodes = std::move(nodes);
    return p;
}

Pot Pot::shifted(const Real& tau) const
{
    Pot p = *this;
    p.offset += tau;
    return p;
}

Real Pot::operator()(const Real& x) const
{
    Real r = frac(x + offset);
    if (pwc) return r < s ? a : b;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const auto& [x0, v0] = nodes[k];
        const auto& [x1, v1] = nodes[k + 1];
        if (r < x1 || k + 2 == nodes.size()) return v0 + (v1 - v0) * (r - x0) / (x1 - x0);
    }
    throw std::logic_error("Pot: no nodes");
}

Real Pot::slope_at(const Real& x) const
{
    if (pwc) return Real(0);
    Real r = frac(x + offset);
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        if (r < nodes[k + 1].first || k + 2 == nodes.size()) {
            return (nodes[k + 1].second - nodes[k].second) / (nodes[k + 1].first - nodes[k].first);
        }
    }
    throw std::logic_error("Pot: no nodes");
}

std::vector<Real> Pot::breakpoints(const Real& lo, const Real& hi) const
{
    std::vector<Real> base;
    if (pwc) {
        base = {Real(0), s};
    } else {
        for (const auto& n : nodes) base.push_back(n.first);
    }
    std::vector<Real> out;
    long n0 = floor(lo + offset).convert_to<long>() - 1, n1 = ceil(hi + offset).convert_to<long>() + 1;
    for (long n = n0; n <= n1; ++n) {
        for (const Real& c : base) {
            Real x = n + c - offset;
            if (x > lo && x < hi) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Real det_matching(const Real& a, const Real& b, const Real& s, const Real& lambda, const Real& kappa)
{
    return det4(matching(a, b, s, lambda, kappa));
}

OracleValue oracle_kappa(const Real& a, const Real& b, const Real& s, const Real& lambda)
{
    // det is a quadratic in exp(-kappa) with roots exp(-kappa), exp(kappa):
    // one simple root on (0, inf).
    Real lo("1e-8"), hi(200);
    Real flo = det_matching(a, b, s, lambda, lo), fhi = det_matching(a, b, s, lambda, hi);
    if ((flo > 0) == (fhi > 0)) throw std::runtime_error("oracle_kappa: no bracket");
    for (int it = 0; it < 130; ++it) {
        Real mid = (lo + hi) / 2, fm = det_matching(a, b, s, lambda, mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {(lo + hi) / 2, 1e-30};
}

std::array<Real, 4> oracle_xi(const Real& a, const Real& b, const Real& s, const Real& lambda, bool plus)
{
    std::array<Real, 4> v = raw_xi(a, b, s, lambda, plus);
    Real target = lambda - a + sqrt(a - lambda) * sqrt(b - lambda);
    if (abs(target) < Real("1e-40") || v[3] == 0) return {Real(0), Real(0), Real(0), Real(0)};
    Real f = target / v[3];
    for (Real& x : v) x *= f;
    return v;
}

PwcWave::PwcWave(const Real& a, const Real& b, const Real& s_, const Real& lambda, bool plus, Norm norm)
    : alpha(sqrt(a - lambda)), beta(sqrt(b - lambda)), kappa(oracle_kappa(a, b, s_, lambda).value), s(s_)
{
    mult = plus ? exp(-kappa) : exp(kappa);
    if (norm == Norm::Published) {
        xi = oracle_xi(a, b, s, lambda, plus);
    } else {
        xi = raw_xi(a, b, s, lambda, plus);
        Real u0 = xi[0] + xi[1];
        for (Real& x : xi) x /= u0;
    }
}

Real PwcWave::operator()(const Real& y) const
{
    Real n = floor(y), r = y - n;
    Real cell = r < s ? xi[0] * exp(alpha * r) + xi[1] * exp(-alpha * r) : xi[2] * exp(beta * r) + xi[3] * exp(-beta * r);
    return pow(mult, n) * cell;
}

OdeState bs_integrate(const Real& q0, const Real& q1, const Real& w0, const Real& w1, const Real& h, OdeState y)
{
    Rhs f{q0, q1, w0, w1};
    int steps = std::max(1, static_cast<int>(ceil(h / Real("0.02")).convert_to<long>()));
    Real H = h / steps;
    State z{y.u, y.du, y.J};
    for (int i = 0; i < steps; ++i) z = bs_step(f, i * H, H, z);
    return {z[0], z[1], z[2]};
}

std::array<std::array<Real, 2>, 2> oracle_monodromy(const Pot& p, const Real& lambda)
{
    OdeState c0 = flow(p, lambda, 0, 1, OdeState{1, 0, 0});
    OdeState c1 = flow(p, lambda, 0, 1, OdeState{0, 1, 0});
    return {{{c0.u, c1.u}, {c0.du, c1.du}}};
}

OracleValue oracle_kappa_ode(const Pot& p, const Real& lambda)
{
    auto M = oracle_monodromy(p, lambda);
    Real D = M[0][0] + M[1][1];
    if (D <= 2) throw std::runtime_error("oracle_kappa_ode: trace <= 2");
    return {acosh(D / 2), 1e-25};
}

OracleValue oracle_weighted(const Pot& profile, const Real& lambda, bool plus, Norm norm,
                            const std::vector<std::pair<Pot, int>>& weight, const Real& lo, const Real& hi)
{
    std::vector<Real> cuts = profile.breakpoints(lo, hi);
    for (const auto& [p, sign] : weight) {
        std::vector<Real> c = p.breakpoints(lo, hi);
        cuts.insert(cuts.end(), c.begin(), c.end());
    }
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Pot base = profile.shifted(-profile.offset);
    const Real& off = profile.offset;
    auto W = [&](const Real& x) {
        Real v = 0, sl = 0;
        for (const auto& [p, sign] : weight) {
            v += sign * p(x);
            sl += sign * p.slope_at(x);
        }
        return std::pair<Real, Real>{v, sl};
    };

    Real total = 0;
    if (profile.pwc) {
        PwcWave u(profile.a, profile.b, profile.s, lambda, plus, norm);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            Real p = cuts[i], q = cuts[i + 1], mid = (p + q) / 2;
            auto [wv, wsl] = W(mid);
            if (wsl != 0) throw std::logic_error("oracle_weighted: pwc profile needs a pwc weight");
            Real n = floor(mid + off);
            Real P = p + off - n, Q = q + off - n;
            bool left = (mid + off - n) < profile.s;
            Real k = left ? u.alpha : u.beta;
            const Real& c1 = left ? u.xi[0] : u.xi[2];
            const Real& c2 = left ? u.xi[1] : u.xi[3];
            Real part = c1 * c1 * (exp(2 * k * Q) - exp(2 * k * P)) / (2 * k) -
                        c2 * c2 * (exp(-2 * k * Q) - exp(-2 * k * P)) / (2 * k) + 2 * c1 * c2 * (Q - P);
            total += wv * pow(u.mult, 2 * n) * part;
        }
        return {total, 1e-30};
    }

    if (norm == Norm::Published) throw std::logic_error("oracle_weighted: published normalization needs a pwc cell");
    auto [mu, init] = numeric_mode(base, lambda, plus);

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Real p = cuts[i], q = cuts[i + 1], mid = (p + q) / 2;
        auto [wv, wsl] = W(mid);
        Real n = floor(mid + off);
        Real P = p + off - n, Q = q + off - n;
        OdeState at = flow(base, lambda, 0, P, init);
        at.J = 0;
        OdeState end = flow(base, lambda, P, Q, at, wv - wsl * (mid - p), wsl);
        total += pow(mu, 2 * n) * end.J;
    }
    return {total, 1e-20};
}

Real oracle_mode(const Pot& profile, const Real& lambda, bool plus, const Real& y)
{
    Real z = y + profile.offset, n = floor(z);
    if (profile.pwc) return PwcWave(profile.a, profile.b, profile.s, lambda, plus, Norm::UnitAtZero)(z);
    Pot base = profile.shifted(-profile.offset);
    auto [mu, init] = numeric_mode(base, lambda, plus);
    return pow(mu, n) * flow(base, lambda, 0, z - n, init).u;
}

OracleValue oracle_integral(const Pot& v1, const Pot& v2, const Real& lambda, int which, Norm norm)
{
    if (which == 1) return oracle_weighted(v1, lambda, false, norm, {{v2, 1}, {v1, -1}}, Real(-1), Real(0));
    return oracle_weighted(v2, lambda, true, norm, {{v1, 1}, {v2, -1}}, Real(0), Real(1));
}

OracleValue oracle_dislocation(const Pot& v0, const Real& tau, const Real& lambda, int which, Norm norm)
{
    return oracle_integral(v0.shifted(tau), v0.shifted(-tau), lambda, which, norm);
}

}  // namespace oracle
