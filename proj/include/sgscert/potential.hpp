#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgscert/interval.hpp"

namespace sgscert {

// a on [0, s), b on [s, 1), extended 1-periodically.
struct PiecewiseConstantCell {
    Interval a;
    Interval b;
    Interval s = Interval(0.5);

    bool operator==(const PiecewiseConstantCell&) const = default;
};

struct Node {
    Interval x;
    Interval v;

    bool operator==(const Node&) const = default;
};

// Continuous, linear between nodes; 0 = x_0 < ... < x_m = 1 and v_0 = v_m.
struct PiecewiseLinearCell {
    std::vector<Node> nodes;

    bool operator==(const PiecewiseLinearCell&) const = default;
};

// One linear piece of the base cell: value v0 at x0 and v1 at x1.
struct Piece {
    Interval x0, x1;
    Interval v0, v1;
    bool constant = false;

    Interval slope() const;
};

// V(y) = value + slope * (y - anchor) on a breakpoint-free segment.
struct Line {
    double anchor = 0.0;
    Interval value;
    Interval slope;
};

// 1-periodic potential V(x) = base(x + offset), base piecewise constant or
// continuous piecewise linear on [0, 1].
class Potential {
public:
    enum class Kind { PiecewiseConstant, PiecewiseLinear };

    static Potential piecewise_constant(const PiecewiseConstantCell& cell);
    static Potential piecewise_linear(const PiecewiseLinearCell& cell);
    static Potential constant(const Interval& a);

    Kind kind() const { return kind_; }
    const std::optional<PiecewiseConstantCell>& pwc() const { return pwc_; }
    const std::optional<PiecewiseLinearCell>& pwl() const { return pwl_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    const Interval& offset() const { return offset_; }
    bool is_shifted() const { return !(offset_ == Interval(0.0)); }

    // this(x + tau)
    Potential shifted(const Interval& tau) const;

    // Breakpoint positions (intervals) that may lie in [lo, hi], sorted by lower end.
    std::vector<Interval> breakpoints(double lo, double hi) const;

    // Affine description on [p, q]; the caller guarantees no breakpoint lies
    // strictly inside and the segment is not vanishingly short.
    Line line_on(double p, double q) const;

    // Enclosure of { V(x) : x in X }.
    Interval range_over(const Interval& x) const;

    // Guaranteed lower bound of V.
    double inf_over_period() const;
    double sup_over_period() const;

    // True if V(-x) = V(x) is proven from exact node data.
    bool verified_even() const;

    std::string describe() const;

private:
    Kind kind_ = Kind::PiecewiseConstant;
    std::optional<PiecewiseConstantCell> pwc_;
    std::optional<PiecewiseLinearCell> pwl_;
    std::vector<Piece> pieces_;
    std::vector<Interval> base_breaks_;  // in [0, 1), 0 first
    Interval offset_;
};

Interval range_over(const Potential& p, const Interval& x);
Potential shift(const Potential& p, const Interval& tau);
double inf_over_period(const Potential& p);

}  // namespace sgscert
