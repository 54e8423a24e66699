#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sgscert/criteria_pwc.hpp"
#include "sgscert/interval.hpp"
#include "sgscert/potential.hpp"
#include "sgscert/quadrature.hpp"
#include "sgscert/scanner.hpp"

namespace sgscert {

enum class Command { Check, Sweep, Scan, Bloch };
enum class OutputFormat { Csv, Json, Ppm };

const char* to_string(Command c);
const char* to_string(OutputFormat f);
Command parse_command(const std::string& s);
OutputFormat parse_format(const std::string& s);

// A potential as written in a config: "pwc a b s" or a node list "x:v, x:v, ...".
struct PotentialDesc {
    Potential::Kind kind = Potential::Kind::PiecewiseConstant;
    PiecewiseConstantCell cell{Interval(1.0), Interval(2.0), Interval(0.5)};
    PiecewiseLinearCell nodes;

    Potential build() const;
    std::string to_text() const;  // flat-config syntax, exact endpoints
    static PotentialDesc parse(std::string_view text);

    bool operator==(const PotentialDesc&) const = default;
};

struct RunConfig {
    Command command = Command::Check;
    Family family = Family::PwcDislocation;
    // pwc families: first and second cell. Other families: v1 (V0 of a dislocation) and v2.
    PiecewiseConstantCell cell1{Interval(1.0), Interval(2.0), Interval(0.5)};
    PiecewiseConstantCell cell2{Interval(2.0), Interval(2.0), Interval(0.5)};
    PotentialDesc v1, v2;
    Interval tau = Interval(0.25);
    Interval lambda = Interval(0.0);
    std::vector<Axis> axes;
    EvalMode mode = EvalMode::Auto;
    DislocationFormula formula = DislocationFormula::Exact;
    bool scaled = false;
    double lambda_margin = 0.0;
    int splits = 1;
    QuadratureBudget budget;
    // bloch: sample the profiles on `samples` cells of [profile_lo, profile_hi]
    double profile_lo = -1.0;
    double profile_hi = 1.0;
    int samples = 20;
    OutputFormat format = OutputFormat::Csv;
    std::string out;  // empty: standard output
    int workers = 1;

    bool operator==(const RunConfig&) const = default;

    InterfaceTemplate interface_template() const;
    ScanPlan scan_plan() const;
    // Checks cross-field consistency for the command; throws InputError naming the field.
    void validate() const;
};

// Interval literal: "0.94" (outward enclosed), "1/600", or "[lo, hi]".
Interval parse_interval(std::string_view text, const std::string& field);

// Flat "key = value" text; '#' starts a comment. Throws InputError naming the key.
RunConfig parse_flat_config(std::string_view text);
// JSON object; numbers are taken as exact doubles, intervals are [lo, hi] arrays.
RunConfig parse_json_config(std::string_view text);
// Either format, detected from the first non-blank character.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

std::string to_json(const RunConfig& cfg);
std::string to_flat(const RunConfig& cfg);

}  // namespace sgscert
