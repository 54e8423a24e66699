#include <gtest/gtest.h>

#include "sgscert/errors.hpp"
#include "sgscert/scanner.hpp"
#include "support.hpp"

using namespace testing_support;
using namespace sgscert;

namespace {

Axis axis(Param p, double lo, double hi, const char* width)
{
    return Axis{p, Interval(lo), Interval(hi), Interval::from_decimal(width)};
}

ScanPlan tau_plan(double lambda, const char* width = "1/64")
{
    ScanPlan plan;
    plan.base.family = Family::PwcDislocation;
    plan.base.cell1 = pwc_cell(1, 2);
    plan.base.lambda = Interval(lambda);
    plan.axes = {axis(Param::Tau, 0, 1, width)};
    return plan;
}

}  // namespace

TEST(Scanner, AxisCoverIsComplete)
{
    Axis a = axis(Param::Tau, 0, 1, "1/600");
    ASSERT_EQ(a.count(), 600u);
    EXPECT_LE(a.box(0).lo(), 0.0);
    EXPECT_GE(a.box(599).hi(), 1.0);
    for (std::size_t k = 0; k + 1 < a.count(); ++k) {
        EXPECT_GE(a.box(k).hi(), a.box(k + 1).lo()) << k;  // no gaps
        EXPECT_LT(a.box(k).width(), 1.0 / 600 + 1e-12);
    }
    EXPECT_EQ(axis(Param::A1, 0.1, 0.9, "0.3").count(), 3u);
    EXPECT_EQ(axis(Param::Tau, 0.25, 0.25, "0.01").count(), 1u);
}

TEST(Scanner, ZeroWidthRangeGivesOneCell)
{
    ScanPlan plan = tau_plan(0.0);
    plan.axes = {axis(Param::Tau, 0.25, 0.25, "0.01")};
    ScanResult r = sweep_1d(plan);
    ASSERT_EQ(r.cells.size(), 1u);
    EXPECT_TRUE(r.cells[0].evaluated);
    EXPECT_TRUE(r.cells[0].box[0].contains(0.25));
}

TEST(Scanner, Classification)
{
    EXPECT_EQ(classify(Interval(-2.0, -1.0), Interval(-1.0, 1.0)), CellClass::I1Neg);
    EXPECT_EQ(classify(Interval(-1.0, 1.0), Interval(-2.0, -1.0)), CellClass::I2Neg);
    EXPECT_EQ(classify(Interval(-2.0, -1.0), Interval(-2.0, -1.0)), CellClass::Both);
    EXPECT_EQ(classify(Interval(1.0, 2.0), Interval(-1.0, 0.0)), CellClass::None);
}

TEST(Scanner, SweepMatchesPointEvaluations)
{
    ScanPlan plan = tau_plan(0.0);
    ScanResult r = sweep_1d(plan);
    ASSERT_EQ(r.cells.size(), 64u);
    std::size_t total = 0;
    for (std::size_t c : r.counts) total += c;
    EXPECT_EQ(total, 64u);
    for (const ScanCell& c : r.cells) {
        Interval mid(c.box[0].mid());
        CriterionResult p = dislocation_criteria(plan.base.cell1, plan.base.lambda, mid);
        EXPECT_TRUE(c.I1.contains(p.I1)) << c.box[0];
        EXPECT_TRUE(c.I2.contains(p.I2)) << c.box[0];
    }
    // symmetric shifts can never be certified
    EXPECT_EQ(r.cells.front().cls, CellClass::None);
    EXPECT_EQ(r.cells.back().cls, CellClass::None);
}

TEST(Scanner, SplitsTightenButStayConsistent)
{
    ScanPlan plan = tau_plan(0.0, "1/16");
    ScanResult coarse = sweep_1d(plan);
    plan.splits = 4;
    ScanResult fine = sweep_1d(plan);
    for (std::size_t k = 0; k < coarse.cells.size(); ++k) {
        EXPECT_TRUE(coarse.cells[k].I1.intersects(fine.cells[k].I1));
        EXPECT_LE(fine.cells[k].I1.width(), coarse.cells[k].I1.width() * (1 + 1e-12));
    }
}

TEST(Scanner, DeterministicAcrossWorkerCounts)
{
    ScanPlan plan = tau_plan(0.5);
    plan.axes.push_back(axis(Param::Lambda, -1, 0.5, "0.25"));
    plan.workers = 1;
    ScanResult one = scan_2d(plan);
    plan.workers = 4;
    ScanResult four = scan_2d(plan);
    ASSERT_EQ(one.cells.size(), four.cells.size());
    for (std::size_t k = 0; k < one.cells.size(); ++k) {
        EXPECT_EQ(one.cells[k].I1, four.cells[k].I1);
        EXPECT_EQ(one.cells[k].I2, four.cells[k].I2);
        EXPECT_EQ(one.cells[k].cls, four.cells[k].cls);
        EXPECT_EQ(one.cells[k].box, four.cells[k].box);
    }
    EXPECT_EQ(one.counts, four.counts);
}

TEST(Scanner, QuadratureSweepIsDeterministicToo)
{
    ScanPlan plan;
    plan.base.family = Family::Dislocation;
    plan.base.v1 = Potential::piecewise_linear(pwl_cell(kExample2));
    plan.base.lambda = Interval(-1.0);
    plan.axes = {axis(Param::Tau, 0, 1, "0.125")};
    plan.workers = 1;
    ScanResult a = sweep_1d(plan);
    plan.workers = 3;
    ScanResult b = sweep_1d(plan);
    for (std::size_t k = 0; k < a.cells.size(); ++k) EXPECT_EQ(a.cells[k].I1, b.cells[k].I1);
}

TEST(Scanner, LambdaAboveSpectrumIsNotEvaluated)
{
    ScanPlan plan = tau_plan(0.0);
    plan.axes.push_back(axis(Param::Lambda, 1.5, 3.0, "0.5"));
    ScanResult r = scan_2d(plan);
    EXPECT_EQ(r.counts[static_cast<std::size_t>(CellClass::None)], r.cells.size());
    for (const ScanCell& c : r.cells) {
        EXPECT_FALSE(c.evaluated);
        EXPECT_FALSE(c.note.empty());
    }
}

TEST(Scanner, LambdaMarginExcludesBoxesNearTheSpectrum)
{
    ScanPlan plan = tau_plan(0.0, "0.5");
    plan.axes.push_back(axis(Param::Lambda, 0.5, 1.0, "0.25"));
    plan.lambda_margin = 0.3;
    ScanResult r = scan_2d(plan);
    for (const ScanCell& c : r.cells) EXPECT_EQ(c.evaluated, c.box[1].hi() <= 0.7) << c.box[1];
}

TEST(Scanner, TwoDimensionalCertificatesImplyOneDimensional)
{
    ScanPlan plan = tau_plan(0.0, "1/32");
    plan.axes.push_back(axis(Param::Lambda, -1, 0.9, "0.1"));
    ScanResult r2 = scan_2d(plan);
    for (std::size_t row = 0; row < r2.rows(); ++row) {
        ScanPlan p1 = tau_plan(0.0, "1/32");
        p1.base.lambda = Interval(r2.cells[row * r2.cols()].box[1].mid());
        ScanResult r1 = sweep_1d(p1);
        for (std::size_t col = 0; col < r2.cols(); ++col) {
            const ScanCell& c2 = r2.cells[row * r2.cols() + col];
            const ScanCell& c1 = r1.cells[col];
            if (c2.I1.hi() < 0) EXPECT_LT(c1.I1.hi(), 0.0) << row << " " << col;
            if (c2.I2.hi() < 0) EXPECT_LT(c1.I2.hi(), 0.0) << row << " " << col;
            EXPECT_TRUE(c2.I1.intersects(c1.I1));
        }
    }
}

TEST(Scanner, PlanValidation)
{
    ScanPlan plan = tau_plan(0.0);
    plan.axes.clear();
    EXPECT_THROW(sweep_1d(plan), InputError);
    plan = tau_plan(0.0);
    plan.base.family = Family::General;
    EXPECT_THROW(sweep_1d(plan), InputError);  // tau axis without a dislocation
    plan = tau_plan(0.0);
    plan.axes.push_back(plan.axes[0]);
    EXPECT_THROW(scan_2d(plan), InputError);
    plan = tau_plan(0.0);
    plan.workers = 0;
    EXPECT_THROW(sweep_1d(plan), InputError);
    EXPECT_THROW(parse_param("mu"), InputError);
    EXPECT_EQ(parse_param("a"), Param::A1);
}
