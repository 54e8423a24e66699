#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sgscert/criteria_pwc.hpp"
#include "sgscert/interval.hpp"
#include "sgscert/potential.hpp"
#include "sgscert/quadrature.hpp"

namespace sgscert {

// Scannable parameters. A1/B1 are (a, b) of the first cell (the only cell
// of a piecewise-constant dislocation), A2/B2 those of the second.
enum class Param { Tau, Lambda, A1, B1, A2, B2 };

const char* to_string(Param p);
Param parse_param(const std::string& name);  // throws InputError

enum class Family { PwcDislocation, PwcGeneral, Dislocation, General };

const char* to_string(Family f);
Family parse_family(const std::string& name);

// Fixed values of everything not on an axis.
struct InterfaceTemplate {
    Family family = Family::PwcDislocation;
    PiecewiseConstantCell cell1{Interval(1.0), Interval(2.0), Interval(0.5)};
    PiecewiseConstantCell cell2{Interval(2.0), Interval(2.0), Interval(0.5)};
    Potential v1 = Potential::constant(Interval(0.0));  // V0 for Family::Dislocation
    Potential v2 = Potential::constant(Interval(0.0));
    Interval tau = Interval(0.25);
    Interval lambda = Interval(0.0);
};

struct Axis {
    Param param = Param::Tau;
    Interval lo, hi;  // range ends, outward enclosed
    Interval width;   // requested box width
    // Number of boxes: ceil((hi - lo) / width), one for an empty range.
    std::size_t count() const;
    // k-th box; consecutive boxes share an enclosed partition point.
    Interval box(std::size_t k) const;

    bool operator==(const Axis&) const = default;
};

enum class EvalMode { Auto, ClosedForm, Quadrature };

const char* to_string(EvalMode m);
EvalMode parse_eval_mode(const std::string& name);

struct ScanPlan {
    std::vector<Axis> axes;  // one or two; the first varies fastest
    InterfaceTemplate base;
    EvalMode mode = EvalMode::Auto;
    DislocationFormula formula = DislocationFormula::Exact;
    bool scaled = false;  // multiply by sqrt(a - lambda) sqrt(b - lambda) (closed form only)
    // boxes with sup lambda > min inf V - margin are not evaluated
    double lambda_margin = 0.0;
    int splits = 1;  // sub-boxes per axis, results hulled
    QuadratureBudget budget;
    int workers = 1;

    void validate() const;  // throws InputError
};

enum class CellClass { None, I1Neg, I2Neg, Both };

const char* to_string(CellClass c);
CellClass classify(const Interval& i1, const Interval& i2);

struct ScanCell {
    std::vector<Interval> box;  // per axis
    Interval I1, I2;
    CellClass cls = CellClass::None;
    bool evaluated = false;
    std::string note;
};

struct ScanResult {
    std::vector<Axis> axes;
    std::vector<ScanCell> cells;  // row-major, first axis fastest
    std::array<std::size_t, 4> counts{};  // indexed by CellClass
    std::size_t rows() const { return axes.size() > 1 ? axes[1].count() : 1; }
    std::size_t cols() const { return axes[0].count(); }
};

ScanResult sweep_1d(const ScanPlan& plan);
ScanResult scan_2d(const ScanPlan& plan);
ScanResult run_scan(const ScanPlan& plan);  // dispatches on the number of axes

// Evaluates one parameter box (exposed for tests and the check command).
ScanCell evaluate_box(const ScanPlan& plan, const std::vector<Interval>& box);

}  // namespace sgscert
