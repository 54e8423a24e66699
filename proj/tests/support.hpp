#pragma once

// Shared test fixtures: example potentials and conversions between the
// library types and the reference (oracle) types.

#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "sgscert/interval.hpp"
#include "sgscert/potential.hpp"

namespace testing_support {

using oracle::Real;
using sgscert::Interval;
using sgscert::Node;
using sgscert::PiecewiseConstantCell;
using sgscert::PiecewiseLinearCell;
using sgscert::Potential;

inline bool encloses(const Interval& x, const Real& v, const Real& slack = 0)
{
    return Real(x.lo()) - slack <= v && v <= Real(x.hi()) + slack;
}

// Exact parameters: decimal strings are enclosed by the library and read
// exactly by the oracle.
struct NodeText {
    const char* x;
    const char* v;
};

inline PiecewiseLinearCell pwl_cell(const std::vector<NodeText>& nodes)
{
    PiecewiseLinearCell c;
    for (const NodeText& n : nodes) c.nodes.push_back(Node{Interval::from_decimal(n.x), Interval::from_decimal(n.v)});
    return c;
}

inline oracle::Pot pwl_pot(const std::vector<NodeText>& nodes)
{
    std::vector<std::pair<Real, Real>> v;
    for (const NodeText& n : nodes) v.emplace_back(Real(n.x), Real(n.v));
    return oracle::Pot::linear(std::move(v));
}

inline PiecewiseConstantCell pwc_cell(double a, double b, double s = 0.5)
{
    return PiecewiseConstantCell{Interval(a), Interval(b), Interval(s)};
}

inline oracle::Pot pwc_pot(double a, double b, double s = 0.5) { return oracle::Pot::constant_cell(a, b, s); }

// Example potentials (hat bumps of a flat cell).
inline const std::vector<NodeText> kExample1{{"0", "0"}, {"0.25", "0"}, {"0.5", "1"}, {"0.75", "0"}, {"1", "0"}};
inline const std::vector<NodeText> kExample2{{"0", "0"}, {"0.15", "0"}, {"0.25", "3"}, {"0.35", "0"}, {"1", "0"}};
inline const std::vector<NodeText> kExample3V1{{"0", "0"}, {"0.2", "0"}, {"0.25", "100"}, {"0.3", "0"}, {"1", "0"}};
inline const std::vector<NodeText> kExample3V2a{{"0", "0"}, {"0.7", "0"}, {"0.75", "1"}, {"0.8", "0"}, {"1", "0"}};
inline const std::vector<NodeText> kExample3V2b{{"0", "0"}, {"0.325", "0"}, {"0.375", "1"}, {"0.425", "0"}, {"1", "0"}};

}  // namespace testing_support
