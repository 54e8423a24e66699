#include "sgscert/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgscert/errors.hpp"

namespace sgscert {

Interval Piece::slope() const
{
    if (constant) return Interval(0.0);
    return (v1 - v0) / (x1 - x0);
}

Potential Potential::piecewise_constant(const PiecewiseConstantCell& cell)
{
    if (!(cell.s.lo() > 0.0 && cell.s.hi() < 1.0)) {
        throw InputError("jump location s must lie in (0, 1), got " + to_string(cell.s));
    }
    Potential p;
    p.kind_ = Kind::PiecewiseConstant;
    p.pwc_ = cell;
    p.pieces_ = {
        Piece{Interval(0.0), cell.s, cell.a, cell.a, true},
        Piece{cell.s, Interval(1.0), cell.b, cell.b, true},
    };
    p.base_breaks_ = {Interval(0.0), cell.s};
    return p;
}

Potential Potential::piecewise_linear(const PiecewiseLinearCell& cell)
{
    const auto& n = cell.nodes;
    if (n.size() < 2) throw InputError("piecewise-linear cell needs at least two nodes");
    if (!(n.front().x == Interval(0.0)) || !(n.back().x == Interval(1.0))) {
        throw InputError("piecewise-linear nodes must start at x=0 and end at x=1");
    }
    for (std::size_t k = 0; k + 1 < n.size(); ++k) {
        if (!(n[k].x.hi() < n[k + 1].x.lo())) {
            throw InputError("piecewise-linear nodes must be strictly increasing (node " + std::to_string(k + 1) + ")");
        }
    }
    if (!(n.front().v == n.back().v)) {
        throw InputError("piecewise-linear cell is not continuous at the period seam: v(0) = " +
                         to_string(n.front().v) + ", v(1) = " + to_string(n.back().v));
    }
    Potential p;
    p.kind_ = Kind::PiecewiseLinear;
    p.pwl_ = cell;
    for (std::size_t k = 0; k + 1 < n.size(); ++k) {
        bool flat = n[k].v == n[k + 1].v && n[k].v.is_point();
        p.pieces_.push_back(Piece{n[k].x, n[k + 1].x, n[k].v, n[k + 1].v, flat});
        p.base_breaks_.push_back(n[k].x);
    }
    return p;
}

Potential Potential::constant(const Interval& a)
{
    return piecewise_constant(PiecewiseConstantCell{a, a, Interval(0.5)});
}

Potential Potential::shifted(const Interval& tau) const
{
    Potential p = *this;
    Interval off = offset_ + tau;
    double n = std::floor(off.mid());
    if (n != 0.0) off = off - Interval(n);
    p.offset_ = off;
    return p;
}

std::vector<Interval> Potential::breakpoints(double lo, double hi) const
{
    std::vector<Interval> out;
    for (const Interval& b : base_breaks_) {
        double n0 = std::floor(lo - b.hi() + offset_.lo()) - 1.0;
        double n1 = std::ceil(hi - b.lo() + offset_.hi()) + 1.0;
        for (double n = n0; n <= n1; n += 1.0) {
            Interval y = b - offset_ + Interval(n);
            if (y.hi() >= lo && y.lo() <= hi) out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo() < b.lo(); });
    return out;
}

Line Potential::line_on(double p, double q) const
{
    double m = 0.5 * p + 0.5 * q;
    double z = m + offset_.mid();
    double n = std::floor(z);
    double r = z - n;
    std::size_t k = 0;
    while (k + 1 < pieces_.size() && r >= pieces_[k].x1.mid()) ++k;
    const Piece& pc = pieces_[k];
    if (pc.constant) return Line{p, pc.v0, Interval(0.0)};
    Interval sl = pc.slope();
    Interval t = Interval(p) + offset_ - Interval(n) - pc.x0;
    return Line{p, pc.v0 + sl * t, sl};
}

Interval Potential::range_over(const Interval& x) const
{
    Interval z = x + offset_;
    bool first = true;
    Interval out;
    auto add = [&](const Interval& v) {
        out = first ? v : hull(out, v);
        first = false;
    };
    if (z.width() >= 1.0) {
        for (const Piece& pc : pieces_) add(hull(pc.v0, pc.v1));
        return out;
    }
    double n = std::floor(z.lo());
    Interval zr = z - Interval(n);
    for (int m = -1; m <= 1; ++m) {
        Interval zm = zr - Interval(static_cast<double>(m));
        for (const Piece& pc : pieces_) {
            Interval extent(pc.x0.lo(), pc.x1.hi());
            if (!zm.intersects(extent)) continue;
            if (pc.constant) {
                add(pc.v0);
                continue;
            }
            Interval j = intersect(zm, extent);
            Interval v = pc.v0 + pc.slope() * (j - pc.x0);
            Interval bound(std::min(pc.v0.lo(), pc.v1.lo()), std::max(pc.v0.hi(), pc.v1.hi()));
            add(v.intersects(bound) ? intersect(v, bound) : v);
        }
    }
    return out;
}

double Potential::inf_over_period() const
{
    double m = pieces_.front().v0.lo();
    for (const Piece& pc : pieces_) m = std::min({m, pc.v0.lo(), pc.v1.lo()});
    return m;
}

double Potential::sup_over_period() const
{
    double m = pieces_.front().v0.hi();
    for (const Piece& pc : pieces_) m = std::max({m, pc.v0.hi(), pc.v1.hi()});
    return m;
}

bool Potential::verified_even() const
{
    if (!(offset_ == Interval(0.0))) return false;
    if (kind_ == Kind::PiecewiseConstant) {
        return pwc_->a == pwc_->b && pwc_->a.is_point();
    }
    const auto& n = pwl_->nodes;
    std::size_t m = n.size() - 1;
    for (std::size_t k = 0; k <= m; ++k) {
        const Node& a = n[k];
        const Node& b = n[m - k];
        if (!a.x.is_point() || !b.x.is_point() || !a.v.is_point()) return false;
        // 1 - x_k must equal x_{m-k} exactly
        Interval mirrored = Interval(1.0) - a.x;
        if (!mirrored.is_point() || mirrored.lo() != b.x.lo() || !(a.v == b.v)) return false;
    }
    return true;
}

std::string Potential::describe() const
{
    std::ostringstream os;
    if (kind_ == Kind::PiecewiseConstant) {
        os << "pwc(a=" << pwc_->a << ", b=" << pwc_->b << ", s=" << pwc_->s << ")";
    } else {
        os << "pwl(";
        for (std::size_t k = 0; k < pwl_->nodes.size(); ++k) {
            if (k) os << ", ";
            os << pwl_->nodes[k].x << ":" << pwl_->nodes[k].v;
        }
        os << ")";
    }
    if (is_shifted()) os << " shifted by " << offset_;
    return os.str();
}

Interval range_over(const Potential& p, const Interval& x) { return p.range_over(x); }
Potential shift(const Potential& p, const Interval& tau) { return p.shifted(tau); }
double inf_over_period(const Potential& p) { return p.inf_over_period(); }

}  // namespace sgscert
