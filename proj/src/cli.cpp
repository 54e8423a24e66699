#include "sgscert/cli.hpp"

#include <cfloat>
#include <fstream>
#include <functional>
#include <sstream>

#include "sgscert/bloch_pwc.hpp"
#include "sgscert/criteria_pwc.hpp"
#include "sgscert/errors.hpp"
#include "sgscert/interface.hpp"
#include "sgscert/ode.hpp"
#include "sgscert/quadrature.hpp"
#include "sgscert/report.hpp"

namespace sgscert {

namespace {

// Runs `body` with the output stream chosen by cfg.out.
int with_output(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                const std::function<int(std::ostream&)>& body)
{
    if (cfg.out.empty()) return body(out);
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
        err << "error: out: cannot write '" << cfg.out << "'\n";
        return kExitInput;
    }
    int code = body(f);
    f.close();
    if (!f) {
        err << "error: out: write to '" << cfg.out << "' failed\n";
        return kExitInternal;
    }
    return code;
}

// Maps exceptions to exit codes.
int guarded(std::ostream& err, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const SpectralConditionFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "validation failure: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

bool pwc_family(Family f) { return f == Family::PwcDislocation || f == Family::PwcGeneral; }

InterfaceSpec build_spec(const RunConfig& cfg)
{
    switch (cfg.family) {
    case Family::PwcDislocation:
        return InterfaceSpec::dislocation(Potential::piecewise_constant(cfg.cell1), cfg.tau, cfg.lambda);
    case Family::PwcGeneral:
        return InterfaceSpec::general(Potential::piecewise_constant(cfg.cell1), Potential::piecewise_constant(cfg.cell2),
                                      cfg.lambda);
    case Family::Dislocation: return InterfaceSpec::dislocation(cfg.v1.build(), cfg.tau, cfg.lambda);
    case Family::General: return InterfaceSpec::general(cfg.v1.build(), cfg.v2.build(), cfg.lambda);
    }
    throw InputError("family: unsupported");
}

std::string describe(const RunConfig& cfg, const InterfaceSpec& spec)
{
    std::ostringstream os;
    os << to_string(cfg.family) << ": ";
    if (spec.kind() == InterfaceKind::Dislocation) {
        os << "V0 = " << spec.base().describe() << ", tau = " << spec.tau();
    } else {
        os << "V1 = " << spec.v1().describe() << ", V2 = " << spec.v2().describe();
    }
    os << ", lambda = " << spec.lambda();
    return os.str();
}

int write_scan(const RunConfig& cfg, const ScanResult& r, std::ostream& os)
{
    switch (cfg.format) {
    case OutputFormat::Csv: write_scan_csv(r, os); break;
    case OutputFormat::Json: write_scan_json(r, os); break;
    case OutputFormat::Ppm: write_scan_ppm(r, os); break;
    }
    return kExitExists;
}

int scan_command(const RunConfig& cfg, Command expected, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        RunConfig c = cfg;
        c.command = expected;
        c.validate();
        ScanPlan plan = c.scan_plan();
        ScanResult r = expected == Command::Sweep ? sweep_1d(plan) : scan_2d(plan);
        err << "cells: " << r.cells.size() << "  none " << r.counts[0] << "  I1neg " << r.counts[1] << "  I2neg "
            << r.counts[2] << "  both " << r.counts[3] << '\n';
        return with_output(c, out, err, [&](std::ostream& os) { return write_scan(c, r, os); });
    });
}

}  // namespace

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        RunConfig c = cfg;
        c.command = Command::Check;
        c.validate();
        InterfaceSpec spec = build_spec(c);
        CheckReport rep;
        rep.interface = describe(c, spec);
        Route natural = route_for(spec);
        if (c.mode == EvalMode::ClosedForm && natural != Route::ClosedForm) {
            throw InputError("mode: closed-form evaluation needs pwc cells with jumps at 1/2 (or a pwc dislocation)");
        }
        if (c.mode == EvalMode::Quadrature) {
            ExistenceReport e;
            e.route = Route::Quadrature;
            try {
                e.result = quadrature_criteria(spec, c.budget);
            } catch (const InputError&) {
                throw;
            } catch (const Error& ex) {
                e.result = CriterionResult{Interval(-DBL_MAX, DBL_MAX), Interval(-DBL_MAX, DBL_MAX), false};
                e.note = ex.what();
            }
            e.verdict = existence_verdict(e.result, spec.kind());
            rep.existence = e;
        } else {
            rep.existence = check_existence(spec, c.budget);
        }
        if (rep.existence.route == Route::ClosedForm && rep.existence.note.empty()) {
            rep.has_scaled = true;
            rep.scaled = c.family == Family::PwcDislocation
                             ? dislocation_criteria(c.cell1, c.lambda, c.tau, DislocationFormula::Exact, true)
                             : general_criteria(c.cell1, c.cell2, c.lambda, true);
        }
        if (c.formula == DislocationFormula::Published) {
            if (c.family != Family::PwcDislocation) throw InputError("formula: published needs pwc-dislocation");
            rep.has_published = true;
            rep.published = dislocation_criteria(c.cell1, c.lambda, c.tau, DislocationFormula::Published, false);
        }
        int code = !rep.existence.note.empty()       ? kExitInternal
                   : rep.existence.verdict.exists() ? kExitExists
                                                    : kExitInconclusive;
        int wcode = with_output(c, out, err, [&](std::ostream& os) {
            if (c.format == OutputFormat::Json) {
                write_check_json(rep, os);
            } else {
                write_check_text(rep, os);
            }
            return kExitExists;
        });
        return wcode != kExitExists ? wcode : code;
    });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return scan_command(cfg, Command::Sweep, out, err);
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return scan_command(cfg, Command::Scan, out, err);
}

int cmd_bloch(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        RunConfig c = cfg;
        c.command = Command::Bloch;
        c.validate();
        bool pwc = pwc_family(c.family);
        Potential p = pwc ? Potential::piecewise_constant(c.cell1) : c.v1.build();
        require_below_spectrum(c.lambda, p.inf_over_period(), "V");

        std::vector<BlochRow> rows;
        auto scalar = [&](const std::string& name, const Interval& v) { rows.push_back(BlochRow{name, false, {}, v}); };
        BlochOde b = bloch_ode(p, c.lambda, c.budget.ode);
        const Matrix2& M = b.monodromy.M;
        scalar("trace", b.monodromy.trace());
        scalar("det", b.monodromy.det());
        scalar("M11", M[0][0]);
        scalar("M12", M[0][1]);
        scalar("M21", M[1][0]);
        scalar("M22", M[1][1]);
        scalar("rho", b.floquet.rho);
        scalar("kappa", b.floquet.kappa);
        scalar("v_u", b.floquet.v.u);
        scalar("v_du", b.floquet.v.du);
        scalar("w_u", b.floquet.w.u);
        scalar("w_du", b.floquet.w.du);
        if (pwc) {
            BlochPwc w = bloch_pwc(c.cell1, c.lambda);
            scalar("kappa_closed_form", w.kappa);
            for (int k = 0; k < 4; ++k) scalar("xi_plus_" + std::to_string(k + 1), w.xi_plus[k]);
            for (int k = 0; k < 4; ++k) scalar("xi_minus_" + std::to_string(k + 1), w.xi_minus[k]);
        }
        for (const ProfileCell& pc : sample_profile(b.minus, c.profile_lo, c.profile_hi, c.samples)) {
            rows.push_back(BlochRow{"u_minus", true, pc.x, pc.u});
        }
        for (const ProfileCell& pc : sample_profile(b.plus, c.profile_lo, c.profile_hi, c.samples)) {
            rows.push_back(BlochRow{"u_plus", true, pc.x, pc.u});
        }
        return with_output(c, out, err, [&](std::ostream& os) {
            if (c.format == OutputFormat::Json) {
                write_bloch_json(rows, os);
            } else {
                write_bloch_csv(rows, os);
            }
            return kExitExists;
        });
    });
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    switch (cfg.command) {
    case Command::Check: return cmd_check(cfg, out, err);
    case Command::Sweep: return cmd_sweep(cfg, out, err);
    case Command::Scan: return cmd_scan(cfg, out, err);
    case Command::Bloch: return cmd_bloch(cfg, out, err);
    }
    err << "internal error: unknown command\n";
    return kExitInternal;
}

}  // namespace sgscert
