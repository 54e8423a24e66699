#include "sgscert/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "sgscert/errors.hpp"
#include "sgscert/interface.hpp"

namespace sgscert {

const char* to_string(Param p)
{
    switch (p) {
    case Param::Tau: return "tau";
    case Param::Lambda: return "lambda";
    case Param::A1: return "a1";
    case Param::B1: return "b1";
    case Param::A2: return "a2";
    case Param::B2: return "b2";
    }
    return "?";
}

Param parse_param(const std::string& name)
{
    for (Param p : {Param::Tau, Param::Lambda, Param::A1, Param::B1, Param::A2, Param::B2}) {
        if (name == to_string(p)) return p;
    }
    if (name == "a") return Param::A1;
    if (name == "b") return Param::B1;
    throw InputError("unknown scan parameter '" + name + "' (expected tau, lambda, a1, b1, a2, b2)");
}

const char* to_string(Family f)
{
    switch (f) {
    case Family::PwcDislocation: return "pwc-dislocation";
    case Family::PwcGeneral: return "pwc-general";
    case Family::Dislocation: return "dislocation";
    case Family::General: return "general";
    }
    return "?";
}

Family parse_family(const std::string& name)
{
    for (Family f : {Family::PwcDislocation, Family::PwcGeneral, Family::Dislocation, Family::General}) {
        if (name == to_string(f)) return f;
    }
    throw InputError("unknown interface family '" + name + "'");
}

const char* to_string(EvalMode m)
{
    switch (m) {
    case EvalMode::Auto: return "auto";
    case EvalMode::ClosedForm: return "closed-form";
    case EvalMode::Quadrature: return "quadrature";
    }
    return "?";
}

EvalMode parse_eval_mode(const std::string& name)
{
    for (EvalMode m : {EvalMode::Auto, EvalMode::ClosedForm, EvalMode::Quadrature}) {
        if (name == to_string(m)) return m;
    }
    throw InputError("unknown evaluation mode '" + name + "' (expected auto, closed-form, quadrature)");
}

const char* to_string(CellClass c)
{
    switch (c) {
    case CellClass::None: return "none";
    case CellClass::I1Neg: return "I1neg";
    case CellClass::I2Neg: return "I2neg";
    case CellClass::Both: return "both";
    }
    return "?";
}

CellClass classify(const Interval& i1, const Interval& i2)
{
    bool n1 = i1.hi() < 0.0, n2 = i2.hi() < 0.0;
    if (n1 && n2) return CellClass::Both;
    if (n1) return CellClass::I1Neg;
    if (n2) return CellClass::I2Neg;
    return CellClass::None;
}

std::size_t Axis::count() const
{
    if (hi.hi() <= lo.lo()) return 1;
    double r = ((hi - lo) / width).mid();
    return static_cast<std::size_t>(std::max(1.0, std::ceil(r - 1e-9)));
}

namespace {

// k-th of n boxes between lo and hi; neighbours share an enclosed partition point
Interval partition_box(const Interval& lo, const Interval& hi, std::size_t n, std::size_t k)
{
    auto point = [&](std::size_t j) {
        if (j == 0) return lo;
        if (j == n) return hi;
        return lo + (hi - lo) * Interval(static_cast<double>(j)) / Interval(static_cast<double>(n));
    };
    return Interval(point(k).lo(), point(k + 1).hi());
}

}  // namespace

Interval Axis::box(std::size_t k) const { return partition_box(lo, hi, count(), k); }

void ScanPlan::validate() const
{
    if (axes.empty() || axes.size() > 2) throw InputError("scan plan needs one or two axes");
    if (axes.size() == 2 && axes[0].param == axes[1].param) throw InputError("scan axes must differ");
    bool pwc = base.family == Family::PwcDislocation || base.family == Family::PwcGeneral;
    bool disl = base.family == Family::PwcDislocation || base.family == Family::Dislocation;
    for (const Axis& a : axes) {
        if (!(a.width.lo() > 0.0)) throw InputError(std::string("axis ") + to_string(a.param) + ": width must be > 0");
        if (a.lo.lo() > a.hi.hi()) throw InputError(std::string("axis ") + to_string(a.param) + ": empty range");
        if (a.param == Param::Tau && !disl) throw InputError("tau axis needs a dislocation family");
        if ((a.param == Param::A1 || a.param == Param::B1) && !pwc) {
            throw InputError("a1/b1 axes need a piecewise-constant family");
        }
        if ((a.param == Param::A2 || a.param == Param::B2) && base.family != Family::PwcGeneral) {
            throw InputError("a2/b2 axes need the pwc-general family");
        }
    }
    if (mode == EvalMode::ClosedForm && !pwc) throw InputError("closed-form mode needs a piecewise-constant family");
    if (formula == DislocationFormula::Published &&
        (base.family != Family::PwcDislocation || mode == EvalMode::Quadrature)) {
        throw InputError("the published formula applies to closed-form pwc dislocations only");
    }
    if (!(lambda_margin >= 0.0)) throw InputError("lambda margin must be >= 0");
    if (splits < 1) throw InputError("splits must be >= 1");
    if (workers < 1) throw InputError("workers must be >= 1");
    budget.validate();
}

namespace {

// One ODE solve per (potential, lambda), shared by all tau boxes.
class EvaluatorCache {
public:
    std::shared_ptr<const DislocationEvaluator> get(const Potential& v0, const Interval& lambda,
                                                    const OdeOptions& opts)
    {
        std::string key = v0.describe() + "|" + to_string(lambda);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        auto ev = std::make_shared<const DislocationEvaluator>(v0, lambda, opts);
        std::lock_guard<std::mutex> lock(mu_);
        return map_.emplace(key, ev).first->second;
    }

private:
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const DislocationEvaluator>> map_;
};

void set_param(InterfaceTemplate& t, Param p, const Interval& v)
{
    switch (p) {
    case Param::Tau: t.tau = v; break;
    case Param::Lambda: t.lambda = v; break;
    case Param::A1: t.cell1.a = v; break;
    case Param::B1: t.cell1.b = v; break;
    case Param::A2: t.cell2.a = v; break;
    case Param::B2: t.cell2.b = v; break;
    }
}

void check_ceiling(const ScanPlan& plan, const InterfaceTemplate& t, double inf_v)
{
    Interval ceiling = Interval(inf_v) - Interval(plan.lambda_margin);
    if (t.lambda.hi() > ceiling.lo()) {
        throw SpectralConditionFailure("lambda " + to_string(t.lambda) + " above the ceiling min inf V - margin = " +
                                       format_double(ceiling.lo()));
    }
}

CriterionResult evaluate_point(const ScanPlan& plan, const InterfaceTemplate& t, EvaluatorCache* cache)
{
    const QuadratureBudget& b = plan.budget;
    switch (t.family) {
    case Family::PwcDislocation: {
        Potential v0 = Potential::piecewise_constant(t.cell1);
        check_ceiling(plan, t, v0.inf_over_period());
        InterfaceSpec::dislocation(v0, t.tau, t.lambda);  // validates
        if (plan.mode != EvalMode::Quadrature) {
            return dislocation_criteria(t.cell1, t.lambda, t.tau, plan.formula, plan.scaled);
        }
        auto ev = cache ? cache->get(v0, t.lambda, b.ode)
                        : std::make_shared<const DislocationEvaluator>(v0, t.lambda, b.ode);
        return CriterionResult{ev->I1(t.tau, t.tau, b), ev->I2(t.tau, t.tau, b), false};
    }
    case Family::PwcGeneral: {
        Potential v1 = Potential::piecewise_constant(t.cell1);
        Potential v2 = Potential::piecewise_constant(t.cell2);
        check_ceiling(plan, t, std::min(v1.inf_over_period(), v2.inf_over_period()));
        InterfaceSpec spec = InterfaceSpec::general(v1, v2, t.lambda);
        bool mid = t.cell1.s == Interval(0.5) && t.cell2.s == Interval(0.5);
        if (plan.mode == EvalMode::ClosedForm || (plan.mode == EvalMode::Auto && mid)) {
            return general_criteria(t.cell1, t.cell2, t.lambda, plan.scaled);
        }
        return quadrature_criteria(spec, b);
    }
    case Family::Dislocation: {
        check_ceiling(plan, t, t.v1.inf_over_period());
        InterfaceSpec::dislocation(t.v1, t.tau, t.lambda);
        auto ev = cache ? cache->get(t.v1, t.lambda, b.ode)
                        : std::make_shared<const DislocationEvaluator>(t.v1, t.lambda, b.ode);
        return CriterionResult{ev->I1(t.tau, t.tau, b), ev->I2(t.tau, t.tau, b), false};
    }
    case Family::General: {
        check_ceiling(plan, t, std::min(t.v1.inf_over_period(), t.v2.inf_over_period()));
        return quadrature_criteria(InterfaceSpec::general(t.v1, t.v2, t.lambda), b);
    }
    }
    throw DomainError("unknown family");
}

ScanCell evaluate_box_cached(const ScanPlan& plan, const std::vector<Interval>& box, EvaluatorCache* cache)
{
    ScanCell cell;
    cell.box = box;
    const std::size_t dims = box.size();
    const std::size_t per = static_cast<std::size_t>(plan.splits);
    std::size_t total = 1;
    for (std::size_t d = 0; d < dims; ++d) total *= per;
    try {
        for (std::size_t k = 0; k < total; ++k) {
            InterfaceTemplate t = plan.base;
            std::size_t rest = k;
            for (std::size_t d = 0; d < dims; ++d) {
                std::size_t j = rest % per;
                rest /= per;
                Interval v = per == 1 ? box[d]
                                      : partition_box(Interval(box[d].lo()), Interval(box[d].hi()), per, j);
                set_param(t, plan.axes[d].param, v);
            }
            CriterionResult r = evaluate_point(plan, t, cache);
            cell.I1 = k == 0 ? r.I1 : hull(cell.I1, r.I1);
            cell.I2 = k == 0 ? r.I2 : hull(cell.I2, r.I2);
        }
        cell.evaluated = true;
        cell.cls = classify(cell.I1, cell.I2);
    } catch (const Error& e) {
        cell.evaluated = false;
        cell.cls = CellClass::None;
        cell.I1 = cell.I2 = Interval(0.0);
        cell.note = e.what();
    }
    return cell;
}

ScanResult run(const ScanPlan& plan)
{
    plan.validate();
    ScanResult res;
    res.axes = plan.axes;
    const std::size_t cols = res.cols(), rows = res.rows();
    const std::size_t n = cols * rows;
    res.cells.resize(n);
    EvaluatorCache cache;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            std::vector<Interval> box{plan.axes[0].box(i % cols)};
            if (plan.axes.size() > 1) box.push_back(plan.axes[1].box(i / cols));
            res.cells[i] = evaluate_box_cached(plan, box, &cache);
        }
    };
    std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(plan.workers), n);
    if (nw <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < nw; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    for (const ScanCell& c : res.cells) ++res.counts[static_cast<std::size_t>(c.cls)];
    return res;
}

}  // namespace

ScanCell evaluate_box(const ScanPlan& plan, const std::vector<Interval>& box)
{
    plan.validate();
    if (box.size() != plan.axes.size()) throw InputError("box dimension does not match the plan axes");
    return evaluate_box_cached(plan, box, nullptr);
}

ScanResult sweep_1d(const ScanPlan& plan)
{
    if (plan.axes.size() != 1) throw InputError("sweep needs exactly one axis");
    return run(plan);
}

ScanResult scan_2d(const ScanPlan& plan)
{
    if (plan.axes.size() != 2) throw InputError("scan needs exactly two axes");
    return run(plan);
}

ScanResult run_scan(const ScanPlan& plan) { return run(plan); }

}  // namespace sgscert
