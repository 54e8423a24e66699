#include "sgscert/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sgscert/errors.hpp"

namespace sgscert {

using nlohmann::json;

const char* to_string(Command c)
{
    switch (c) {
    case Command::Check: return "check";
    case Command::Sweep: return "sweep";
    case Command::Scan: return "scan";
    case Command::Bloch: return "bloch";
    }
    return "?";
}

const char* to_string(OutputFormat f)
{
    switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Ppm: return "ppm";
    }
    return "?";
}

Command parse_command(const std::string& s)
{
    for (Command c : {Command::Check, Command::Sweep, Command::Scan, Command::Bloch}) {
        if (s == to_string(c)) return c;
    }
    throw InputError("command: unknown value '" + s + "' (expected check, sweep, scan, bloch)");
}

OutputFormat parse_format(const std::string& s)
{
    for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json, OutputFormat::Ppm}) {
        if (s == to_string(f)) return f;
    }
    throw InputError("format: unknown value '" + s + "' (expected csv, json, ppm)");
}

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

// Blank-separated words; "[lo, hi]" stays one word.
std::vector<std::string> words(std::string_view s)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (std::isspace(static_cast<unsigned char>(ch)) && depth == 0) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool is_hex(std::string_view t) { return t.find('x') != std::string_view::npos || t.find('X') != std::string_view::npos; }

// Hex floats are exact; decimals and rationals are outward enclosed.
Interval number(std::string_view t, const std::string& field)
{
    t = trim(t);
    if (t.empty()) throw InputError(field + ": empty number");
    try {
        if (is_hex(t)) {
            std::string s(t);
            char* end = nullptr;
            double v = std::strtod(s.c_str(), &end);
            if (end != s.c_str() + s.size() || !std::isfinite(v)) throw InputError("bad hex float");
            return Interval(v);
        }
        return Interval::from_decimal(t);
    } catch (const Error& e) {
        throw InputError(field + ": cannot parse '" + std::string(t) + "' (" + e.what() + ")");
    }
}

std::string hex(double v)
{
    if (v == 0.0) return std::signbit(v) ? "-0x0p+0" : "0x0p+0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

std::string interval_text(const Interval& x)
{
    if (x.is_point()) return hex(x.lo());
    return "[" + hex(x.lo()) + ", " + hex(x.hi()) + "]";
}

int to_int(const std::string& v, const std::string& field)
{
    int out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw InputError(field + ": expected an integer, got '" + v + "'");
    return out;
}

double to_double(const std::string& v, const std::string& field)
{
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(d)) {
        throw InputError(field + ": expected a number, got '" + v + "'");
    }
    return d;
}

bool to_bool(const std::string& v, const std::string& field)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw InputError(field + ": expected true or false, got '" + v + "'");
}

DislocationFormula parse_formula(const std::string& v)
{
    if (v == "exact") return DislocationFormula::Exact;
    if (v == "published") return DislocationFormula::Published;
    throw InputError("formula: expected exact or published, got '" + v + "'");
}

QuadratureBudget::Target parse_target(const std::string& v)
{
    if (v == "sign") return QuadratureBudget::Target::SignDecision;
    if (v == "width") return QuadratureBudget::Target::Width;
    throw InputError("budget.target: expected sign or width, got '" + v + "'");
}

const char* target_text(QuadratureBudget::Target t)
{
    return t == QuadratureBudget::Target::Width ? "width" : "sign";
}

const char* formula_text(DislocationFormula f) { return f == DislocationFormula::Published ? "published" : "exact"; }

Axis parse_axis(const std::string& v, const std::string& field)
{
    std::vector<std::string> w = words(v);
    if (w.size() != 4) throw InputError(field + ": expected '<param> <lo> <hi> <width>'");
    Axis a;
    try {
        a.param = parse_param(w[0]);
    } catch (const InputError& e) {
        throw InputError(field + ": " + e.what());
    }
    a.lo = parse_interval(w[1], field);
    a.hi = parse_interval(w[2], field);
    a.width = parse_interval(w[3], field);
    return a;
}

std::string axis_text(const Axis& a)
{
    auto one = [](const Interval& x) {
        return x.is_point() ? hex(x.lo()) : "[" + hex(x.lo()) + "," + hex(x.hi()) + "]";
    };
    return std::string(to_string(a.param)) + " " + one(a.lo) + " " + one(a.hi) + " " + one(a.width);
}

// JSON helpers ----------------------------------------------------------------

json jinterval(const Interval& x) { return json::array({x.lo(), x.hi()}); }

Interval jparse_interval(const json& j, const std::string& field)
{
    if (j.is_number()) return Interval(j.get<double>());
    if (j.is_string()) return parse_interval(j.get<std::string>(), field);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        try {
            return Interval(j[0].get<double>(), j[1].get<double>());
        } catch (const Error& e) {
            throw InputError(field + ": " + e.what());
        }
    }
    throw InputError(field + ": expected a number, a literal string or a [lo, hi] array");
}

json jcell(const PiecewiseConstantCell& c) { return json{{"a", jinterval(c.a)}, {"b", jinterval(c.b)}, {"s", jinterval(c.s)}}; }

PiecewiseConstantCell jparse_cell(const json& j, const std::string& field)
{
    if (!j.is_object()) throw InputError(field + ": expected an object with a, b, s");
    PiecewiseConstantCell c;
    c.a = jparse_interval(j.at("a"), field + ".a");
    c.b = jparse_interval(j.at("b"), field + ".b");
    if (j.contains("s")) c.s = jparse_interval(j.at("s"), field + ".s");
    return c;
}

json jpotential(const PotentialDesc& p)
{
    if (p.kind == Potential::Kind::PiecewiseConstant) return json{{"kind", "pwc"}, {"cell", jcell(p.cell)}};
    json nodes = json::array();
    for (const Node& n : p.nodes.nodes) nodes.push_back(json{{"x", jinterval(n.x)}, {"v", jinterval(n.v)}});
    return json{{"kind", "pwl"}, {"nodes", nodes}};
}

PotentialDesc jparse_potential(const json& j, const std::string& field)
{
    if (j.is_string()) return PotentialDesc::parse(j.get<std::string>());
    if (!j.is_object() || !j.contains("kind")) throw InputError(field + ": expected an object with kind");
    PotentialDesc p;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "pwc") {
        p.kind = Potential::Kind::PiecewiseConstant;
        p.cell = jparse_cell(j.at("cell"), field + ".cell");
    } else if (kind == "pwl") {
        p.kind = Potential::Kind::PiecewiseLinear;
        for (const json& n : j.at("nodes")) {
            p.nodes.nodes.push_back(
                Node{jparse_interval(n.at("x"), field + ".nodes.x"), jparse_interval(n.at("v"), field + ".nodes.v")});
        }
    } else {
        throw InputError(field + ".kind: expected pwc or pwl");
    }
    return p;
}

}  // namespace

Interval parse_interval(std::string_view text, const std::string& field)
{
    std::string_view t = trim(text);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') throw InputError(field + ": unterminated interval '" + std::string(t) + "'");
        std::vector<std::string> parts = split(t.substr(1, t.size() - 2), ',');
        if (parts.size() != 2) throw InputError(field + ": expected [lo, hi]");
        Interval lo = number(parts[0], field), hi = number(parts[1], field);
        if (lo.lo() > hi.hi()) throw InputError(field + ": reversed interval");
        return Interval(lo.lo(), hi.hi());
    }
    return number(t, field);
}

Potential PotentialDesc::build() const
{
    return kind == Potential::Kind::PiecewiseConstant ? Potential::piecewise_constant(cell)
                                                      : Potential::piecewise_linear(nodes);
}

std::string PotentialDesc::to_text() const
{
    if (kind == Potential::Kind::PiecewiseConstant) {
        return "pwc " + interval_text(cell.a) + " " + interval_text(cell.b) + " " + interval_text(cell.s);
    }
    std::string s;
    for (std::size_t k = 0; k < nodes.nodes.size(); ++k) {
        if (k) s += ", ";
        s += interval_text(nodes.nodes[k].x) + ":" + interval_text(nodes.nodes[k].v);
    }
    return s;
}

PotentialDesc PotentialDesc::parse(std::string_view text)
{
    std::string_view t = trim(text);
    PotentialDesc p;
    if (t.substr(0, 3) == "pwc") {
        std::vector<std::string> items = words(t.substr(3));
        if (items.size() != 2 && items.size() != 3) throw InputError("potential: expected 'pwc <a> <b> [<s>]'");
        p.kind = Potential::Kind::PiecewiseConstant;
        p.cell.a = parse_interval(items[0], "potential.a");
        p.cell.b = parse_interval(items[1], "potential.b");
        p.cell.s = items.size() == 3 ? parse_interval(items[2], "potential.s") : Interval(0.5);
        return p;
    }
    p.kind = Potential::Kind::PiecewiseLinear;
    std::string_view body = t;
    if (body.substr(0, 3) == "pwl") body = trim(body.substr(3));
    // nodes separated by commas outside brackets
    std::vector<std::string> nodes;
    std::string cur;
    int depth = 0;
    for (char ch : body) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            nodes.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty()) nodes.emplace_back(trim(cur));
    if (nodes.size() < 2) throw InputError("potential: expected 'pwc a b s' or a node list 'x:v, x:v, ...'");
    for (const std::string& n : nodes) {
        auto colon = n.rfind(':');
        if (colon == std::string::npos) throw InputError("potential: node '" + n + "' is not of the form x:v");
        p.nodes.nodes.push_back(Node{parse_interval(n.substr(0, colon), "potential.x"),
                                     parse_interval(n.substr(colon + 1), "potential.v")});
    }
    return p;
}

InterfaceTemplate RunConfig::interface_template() const
{
    InterfaceTemplate t;
    t.family = family;
    t.cell1 = cell1;
    t.cell2 = cell2;
    if (family == Family::Dislocation || family == Family::General) {
        t.v1 = v1.build();
        t.v2 = v2.build();
    }
    t.tau = tau;
    t.lambda = lambda;
    return t;
}

ScanPlan RunConfig::scan_plan() const
{
    ScanPlan p;
    p.axes = axes;
    p.base = interface_template();
    p.mode = mode;
    p.formula = formula;
    p.scaled = scaled;
    p.lambda_margin = lambda_margin;
    p.splits = splits;
    p.budget = budget;
    p.workers = workers;
    return p;
}

void RunConfig::validate() const
{
    if (workers < 1) throw InputError("workers: must be >= 1");
    if (command == Command::Sweep && axes.size() != 1) throw InputError("axis1: sweep needs exactly one axis");
    if (command == Command::Scan && axes.size() != 2) throw InputError("axis2: scan needs exactly two axes");
    if (command == Command::Bloch) {
        if (samples < 1) throw InputError("samples: must be >= 1");
        if (!(profile_lo < profile_hi)) throw InputError("profile_lo: must be below profile_hi");
    }
    if (format == OutputFormat::Ppm && command != Command::Scan && command != Command::Sweep) {
        throw InputError("format: ppm is only available for sweep and scan");
    }
    if (family == Family::Dislocation || family == Family::General) {
        try {
            v1.build();
            v2.build();
        } catch (const Error& e) {
            throw InputError(std::string("v1/v2: ") + e.what());
        }
    }
    if (command == Command::Sweep || command == Command::Scan) {
        scan_plan().validate();
    } else {
        budget.validate();
    }
}

RunConfig parse_flat_config(std::string_view text)
{
    RunConfig c;
    std::map<std::string, std::string> seen;
    std::istringstream is{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string_view l = trim(line);
        if (l.empty()) continue;
        auto eq = l.find('=');
        if (eq == std::string_view::npos) {
            throw InputError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        std::string key(trim(l.substr(0, eq)));
        std::string v(trim(l.substr(eq + 1)));
        if (seen.count(key)) throw InputError(key + ": given twice");
        seen[key] = v;

        if (key == "command") c.command = parse_command(v);
        else if (key == "family") c.family = parse_family(v);
        else if (key == "a1" || key == "a") c.cell1.a = parse_interval(v, key);
        else if (key == "b1" || key == "b") c.cell1.b = parse_interval(v, key);
        else if (key == "s1" || key == "s") c.cell1.s = parse_interval(v, key);
        else if (key == "a2") c.cell2.a = parse_interval(v, key);
        else if (key == "b2") c.cell2.b = parse_interval(v, key);
        else if (key == "s2") c.cell2.s = parse_interval(v, key);
        else if (key == "v1" || key == "v0") c.v1 = PotentialDesc::parse(v);
        else if (key == "v2") c.v2 = PotentialDesc::parse(v);
        else if (key == "tau") c.tau = parse_interval(v, key);
        else if (key == "lambda") c.lambda = parse_interval(v, key);
        else if (key == "axis1" || key == "axis2") {
            std::size_t idx = key == "axis1" ? 0 : 1;
            if (c.axes.size() < idx + 1) c.axes.resize(idx + 1);
            c.axes[idx] = parse_axis(v, key);
        }
        else if (key == "mode") c.mode = parse_eval_mode(v);
        else if (key == "formula") c.formula = parse_formula(v);
        else if (key == "scaled") c.scaled = to_bool(v, key);
        else if (key == "lambda_margin") c.lambda_margin = to_double(v, key);
        else if (key == "splits") c.splits = to_int(v, key);
        else if (key == "budget.initial") c.budget.initial_subintervals = to_int(v, key);
        else if (key == "budget.depth") c.budget.max_refinement_depth = to_int(v, key);
        else if (key == "budget.target") c.budget.target = parse_target(v);
        else if (key == "budget.epsilon") c.budget.epsilon = to_double(v, key);
        else if (key == "budget.taylor") c.budget.taylor = to_bool(v, key);
        else if (key == "ode.order") c.budget.ode.order = to_int(v, key);
        else if (key == "ode.max_step") c.budget.ode.max_step = to_double(v, key);
        else if (key == "ode.max_halvings") c.budget.ode.max_halvings = to_int(v, key);
        else if (key == "profile_lo") c.profile_lo = to_double(v, key);
        else if (key == "profile_hi") c.profile_hi = to_double(v, key);
        else if (key == "samples") c.samples = to_int(v, key);
        else if (key == "format") c.format = parse_format(v);
        else if (key == "out") c.out = v;
        else if (key == "workers") c.workers = to_int(v, key);
        else throw InputError(key + ": unknown key");
    }
    if (seen.count("axis2") && !seen.count("axis1")) throw InputError("axis2: given without axis1");
    return c;
}

RunConfig parse_json_config(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("config: invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) throw InputError("config: expected a JSON object");
    RunConfig c;
    try {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& k = it.key();
            const json& v = it.value();
            if (k == "command") c.command = parse_command(v.get<std::string>());
            else if (k == "family") c.family = parse_family(v.get<std::string>());
            else if (k == "cell1") c.cell1 = jparse_cell(v, k);
            else if (k == "cell2") c.cell2 = jparse_cell(v, k);
            else if (k == "v1") c.v1 = jparse_potential(v, k);
            else if (k == "v2") c.v2 = jparse_potential(v, k);
            else if (k == "tau") c.tau = jparse_interval(v, k);
            else if (k == "lambda") c.lambda = jparse_interval(v, k);
            else if (k == "axes") {
                for (const json& a : v) {
                    Axis ax;
                    ax.param = parse_param(a.at("param").get<std::string>());
                    ax.lo = jparse_interval(a.at("lo"), "axes.lo");
                    ax.hi = jparse_interval(a.at("hi"), "axes.hi");
                    ax.width = jparse_interval(a.at("width"), "axes.width");
                    c.axes.push_back(ax);
                }
            }
            else if (k == "mode") c.mode = parse_eval_mode(v.get<std::string>());
            else if (k == "formula") c.formula = parse_formula(v.get<std::string>());
            else if (k == "scaled") c.scaled = v.get<bool>();
            else if (k == "lambda_margin") c.lambda_margin = v.get<double>();
            else if (k == "splits") c.splits = v.get<int>();
            else if (k == "budget") {
                for (auto b = v.begin(); b != v.end(); ++b) {
                    const std::string& bk = b.key();
                    if (bk == "initial_subintervals") c.budget.initial_subintervals = b->get<int>();
                    else if (bk == "max_refinement_depth") c.budget.max_refinement_depth = b->get<int>();
                    else if (bk == "target") c.budget.target = parse_target(b->get<std::string>());
                    else if (bk == "epsilon") c.budget.epsilon = b->get<double>();
                    else if (bk == "taylor") c.budget.taylor = b->get<bool>();
                    else if (bk == "ode") {
                        const json& o = *b;
                        if (o.contains("order")) c.budget.ode.order = o.at("order").get<int>();
                        if (o.contains("max_step")) c.budget.ode.max_step = o.at("max_step").get<double>();
                        if (o.contains("max_halvings")) c.budget.ode.max_halvings = o.at("max_halvings").get<int>();
                    }
                    else throw InputError("budget." + bk + ": unknown key");
                }
            }
            else if (k == "profile") {
                if (v.contains("lo")) c.profile_lo = v.at("lo").get<double>();
                if (v.contains("hi")) c.profile_hi = v.at("hi").get<double>();
                if (v.contains("samples")) c.samples = v.at("samples").get<int>();
            }
            else if (k == "format") c.format = parse_format(v.get<std::string>());
            else if (k == "out") c.out = v.get<std::string>();
            else if (k == "workers") c.workers = v.get<int>();
            else throw InputError(k + ": unknown key");
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("config: wrong JSON type (") + e.what() + ")");
    }
    return c;
}

RunConfig parse_config(std::string_view text)
{
    std::string_view t = trim(text);
    if (!t.empty() && t.front() == '{') return parse_json_config(t);
    return parse_flat_config(text);
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_json(const RunConfig& c)
{
    json axes = json::array();
    for (const Axis& a : c.axes) {
        axes.push_back(json{{"param", to_string(a.param)},
                            {"lo", jinterval(a.lo)},
                            {"hi", jinterval(a.hi)},
                            {"width", jinterval(a.width)}});
    }
    json j{
        {"command", to_string(c.command)},
        {"family", to_string(c.family)},
        {"cell1", jcell(c.cell1)},
        {"cell2", jcell(c.cell2)},
        {"v1", jpotential(c.v1)},
        {"v2", jpotential(c.v2)},
        {"tau", jinterval(c.tau)},
        {"lambda", jinterval(c.lambda)},
        {"axes", axes},
        {"mode", to_string(c.mode)},
        {"formula", formula_text(c.formula)},
        {"scaled", c.scaled},
        {"lambda_margin", c.lambda_margin},
        {"splits", c.splits},
        {"budget",
         {{"initial_subintervals", c.budget.initial_subintervals},
          {"max_refinement_depth", c.budget.max_refinement_depth},
          {"target", target_text(c.budget.target)},
          {"epsilon", c.budget.epsilon},
          {"taylor", c.budget.taylor},
          {"ode",
           {{"order", c.budget.ode.order},
            {"max_step", c.budget.ode.max_step},
            {"max_halvings", c.budget.ode.max_halvings}}}}},
        {"profile", {{"lo", c.profile_lo}, {"hi", c.profile_hi}, {"samples", c.samples}}},
        {"format", to_string(c.format)},
        {"out", c.out},
        {"workers", c.workers},
    };
    return j.dump(2) + "\n";
}

std::string to_flat(const RunConfig& c)
{
    std::ostringstream os;
    os << "command = " << to_string(c.command) << "\n";
    os << "family = " << to_string(c.family) << "\n";
    os << "a1 = " << interval_text(c.cell1.a) << "\nb1 = " << interval_text(c.cell1.b)
       << "\ns1 = " << interval_text(c.cell1.s) << "\n";
    os << "a2 = " << interval_text(c.cell2.a) << "\nb2 = " << interval_text(c.cell2.b)
       << "\ns2 = " << interval_text(c.cell2.s) << "\n";
    os << "v1 = " << c.v1.to_text() << "\nv2 = " << c.v2.to_text() << "\n";
    os << "tau = " << interval_text(c.tau) << "\nlambda = " << interval_text(c.lambda) << "\n";
    for (std::size_t k = 0; k < c.axes.size(); ++k) os << "axis" << k + 1 << " = " << axis_text(c.axes[k]) << "\n";
    os << "mode = " << to_string(c.mode) << "\nformula = " << formula_text(c.formula) << "\n";
    os << "scaled = " << (c.scaled ? "true" : "false") << "\n";
    os << "lambda_margin = " << hex(c.lambda_margin) << "\nsplits = " << c.splits << "\n";
    os << "budget.initial = " << c.budget.initial_subintervals << "\nbudget.depth = " << c.budget.max_refinement_depth
       << "\nbudget.target = " << target_text(c.budget.target) << "\nbudget.epsilon = " << hex(c.budget.epsilon)
       << "\nbudget.taylor = " << (c.budget.taylor ? "true" : "false") << "\n";
    os << "ode.order = " << c.budget.ode.order << "\node.max_step = " << hex(c.budget.ode.max_step)
       << "\node.max_halvings = " << c.budget.ode.max_halvings << "\n";
    os << "profile_lo = " << hex(c.profile_lo) << "\nprofile_hi = " << hex(c.profile_hi) << "\nsamples = " << c.samples
       << "\n";
    os << "format = " << to_string(c.format) << "\n";
    if (!c.out.empty()) os << "out = " << c.out << "\n";
    os << "workers = " << c.workers << "\n";
    return os.str();
}

}  // namespace sgscert
