// Command-line front end: sgscert {check|sweep|scan|bloch} --config FILE [options]

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sgscert/cli.hpp"
#include "sgscert/errors.hpp"

int main(int argc, char** argv)
{
    using namespace sgscert;
    CLI::App app{"Certified sign verdicts for surface gap soliton existence criteria"};
    app.require_subcommand(1);

    std::string config_path, out_path, format;
    int workers = 0, depth = -1;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file (key = value or JSON)")->required();
        sub->add_option("--out", out_path, "output file (default: standard output)");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json", "ppm"}));
        sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--budget-depth", depth, "maximum quadrature refinement depth")->check(CLI::NonNegativeNumber);
    };
    CLI::App* check = app.add_subcommand("check", "evaluate I1, I2 and the existence verdict at one point");
    CLI::App* sweep = app.add_subcommand("sweep", "classify the boxes of a one-parameter range");
    CLI::App* scan = app.add_subcommand("scan", "classify the boxes of a two-parameter rectangle");
    CLI::App* bloch = app.add_subcommand("bloch", "dump monodromy, Floquet data and Bloch profiles");
    for (CLI::App* s : {check, sweep, scan, bloch}) add_common(s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    if (check->parsed()) cfg.command = Command::Check;
    if (sweep->parsed()) cfg.command = Command::Sweep;
    if (scan->parsed()) cfg.command = Command::Scan;
    if (bloch->parsed()) cfg.command = Command::Bloch;
    if (!out_path.empty()) cfg.out = out_path;
    if (!format.empty()) cfg.format = parse_format(format);
    if (workers > 0) cfg.workers = workers;
    if (depth >= 0) cfg.budget.max_refinement_depth = depth;
    return run_command(cfg, std::cout, std::cerr);
}
