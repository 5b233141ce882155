#include "commands.hpp"

#include "csv.hpp"

#include "sa/asymptotics.hpp"
#include "sa/equations.hpp"
#include "sa/errors.hpp"
#include "sa/observables.hpp"
#include "sa/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

namespace cli {

namespace {

constexpr const char* artifact_version = "1.0.0";

CsvTable table(const std::string& command, const RunConfig& cfg, std::vector<std::string> columns)
{
    CsvTable t(std::move(columns));
    t.meta("artifact", std::string("sasolve ") + artifact_version);
    t.meta("command", command);
    for (const auto& [k, v] : describe(cfg)) t.meta(k, v);
    return t;
}

void emit(const CsvTable& t, const RunConfig& cfg, std::ostream& out)
{
    if (cfg.out.empty() || cfg.out == "-") {
        t.write(out);
        out.flush();
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw IoError("cannot open output file " + cfg.out);
    t.write(f);
    f.close();
    if (!f) throw IoError("failed writing output file " + cfg.out);
}

double fixed_value(const RunConfig& cfg, const char* command)
{
    if (cfg.rho) return *cfg.rho;
    if (cfg.e_tilde) return *cfg.e_tilde;
    throw UsageError(std::string(command) + " needs --rho or --e-tilde");
}

void solution_meta(CsvTable& t, const sa::Solution& s)
{
    t.meta("grid_order", static_cast<double>(s.problem->size()));
    t.meta("scattering_length", s.problem->scattering().a);
    t.meta("result_rho", s.rho);
    t.meta("result_e_tilde", s.e_tilde);
    t.meta("result_converged", s.converged ? "true" : "false");
    t.meta("result_iterations", static_cast<double>(s.iterations));
    t.meta("result_residual_norm", s.residual_norm);
}

sa::Solution solve_checked(const RunConfig& cfg, double value, std::ostream& diag)
{
    sa::Solution s = sa::solve(kind(cfg), potential(cfg), value, solver_config(cfg));
    if (!s.converged) diag << "solver did not converge: " << s.message << '\n';
    return s;
}

std::string nan_or(double x, bool ok) { return ok ? format_number(x) : "nan"; }

// log-log between positive values, linear otherwise; w is the position in log rho
double interpolate(double lo, double hi, double w)
{
    if (lo > 0.0 && hi > 0.0) return std::exp((1.0 - w) * std::log(lo) + w * std::log(hi));
    return (1.0 - w) * lo + w * hi;
}

double rel_error(double reference, double model) { return std::abs(reference - model) / std::abs(model); }

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& diag)
{
    const sa::Solution s = solve_checked(cfg, fixed_value(cfg, "solve"), diag);
    if (!s.converged) return not_converged;
    CsvTable t = table("solve", cfg, {"k", "u_hat", "r", "u"});
    solution_meta(t, s);
    const auto& uh = *s.u_hat;
    const auto& u = *s.u;
    const std::size_t rows = std::max(uh.size(), u.size());
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<std::string> cells(4);
        if (i < uh.size()) {
            cells[0] = format_number(uh.grid().node(i));
            cells[1] = format_number(uh[i]);
        }
        if (i < u.size()) {
            cells[2] = format_number(u.grid().node(i));
            cells[3] = format_number(u[i]);
        }
        t.row(cells);
    }
    emit(t, cfg, out);
    return ok;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& diag)
{
    const auto values = sweep(cfg);
    const bool eta = wants(cfg, "eta");
    std::vector<std::string> columns{"rho", "e_tilde"};
    if (eta) columns.emplace_back("eta");
    for (const char* c : {"converged", "iterations", "residual_norm"}) columns.emplace_back(c);
    CsvTable t = table("scan", cfg, columns);
    const auto sols = sa::scan(kind(cfg), potential(cfg), values, solver_config(cfg));
    int status = ok;
    if (!sols.empty() && sols.front().problem) t.meta("grid_order", static_cast<double>(sols.front().problem->size()));
    for (std::size_t i = 0; i < sols.size(); ++i) {
        const auto& s = sols[i];
        if (!s.converged) {
            status = not_converged;
            diag << "row " << i + 1 << " (value " << format_number(values[i]) << "): " << s.message << '\n';
        }
        std::vector<std::string> cells{format_number(s.rho), nan_or(s.e_tilde, s.converged)};
        if (eta) {
            std::string cell = "nan";
            if (s.converged) {
                try {
                    cell = format_number(sa::condensate_linres(s));
                } catch (const sa::NumericalError& e) {
                    diag << "row " << i + 1 << ": eta: " << e.what() << '\n';
                }
            }
            cells.push_back(cell);
        }
        cells.push_back(s.converged ? "1" : "0");
        cells.push_back(std::to_string(s.iterations));
        cells.push_back(format_number(s.residual_norm));
        t.row(cells);
    }
    emit(t, cfg, out);
    return status;
}

int cmd_correlation(const RunConfig& cfg, std::ostream& out, std::ostream& diag)
{
    const sa::Solution s = solve_checked(cfg, fixed_value(cfg, "correlation"), diag);
    if (!s.converged) return not_converged;
    const sa::Correlation c = sa::correlation(s);
    CsvTable t = table("correlation", cfg, {"r", "c2_over_rho2"});
    solution_meta(t, s);
    t.meta("method", s.kind == sa::EquationKind::simple ? "closed formula" : "adjoint");
    for (std::size_t i = 0; i < c.radii.size(); ++i) t.row(std::vector<double>{c.radii[i], c.values[i]});
    emit(t, cfg, out);
    return ok;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& diag)
{
    if (cfg.reference.empty()) throw UsageError("compare needs --reference");
    const ReferenceData ref = read_reference(cfg.reference);
    const bool eta = ref.eta.has_value();
    std::vector<std::string> columns{"rho", "e_reference", "e_model", "rel_error"};
    if (eta)
        for (const char* c : {"eta_reference", "eta_model", "eta_abs_error"}) columns.emplace_back(c);
    CsvTable t = table("compare", cfg, columns);
    t.meta("reference", cfg.reference);

    // model values at the reference densities; a sweep, when given, is interpolated log-log
    std::vector<double> e_model(ref.rho.size()), eta_model(ref.rho.size(), std::numeric_limits<double>::quiet_NaN());
    int status = ok;
    auto eta_of = [&](const sa::Solution& s) { return eta ? sa::condensate_linres(s) : std::numeric_limits<double>::quiet_NaN(); };
    if (cfg.rho_min && cfg.rho_max) {
        const auto grid = sweep(cfg);
        if (grid.size() < 2) throw UsageError("compare: an interpolating sweep needs --points >= 2");
        if (ref.rho.front() < grid.front() || ref.rho.back() > grid.back())
            throw UsageError("compare: reference densities fall outside --rho-min..--rho-max");
        const auto sols = sa::scan(kind(cfg), potential(cfg), grid, solver_config(cfg));
        std::vector<double> le, lh;
        for (const auto& s : sols) {
            if (!s.converged) {
                diag << "sweep point rho = " << format_number(s.rho) << " did not converge: " << s.message << '\n';
                return not_converged;
            }
            le.push_back(s.e_tilde);
            lh.push_back(eta_of(s));
        }
        for (std::size_t i = 0; i < ref.rho.size(); ++i) {
            const auto hi = std::upper_bound(grid.begin(), grid.end() - 1, ref.rho[i]);
            const std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(hi - grid.begin(), 1));
            const double w = (std::log(ref.rho[i]) - std::log(grid[j - 1])) / (std::log(grid[j]) - std::log(grid[j - 1]));
            e_model[i] = interpolate(le[j - 1], le[j], w);
            eta_model[i] = interpolate(lh[j - 1], lh[j], w);
        }
    } else {
        sa::SolverConfig scfg = solver_config(cfg);
        scfg.parametrization = sa::Parametrization::fixed_rho;
        const auto sols = sa::scan(kind(cfg), potential(cfg), ref.rho, scfg);
        for (std::size_t i = 0; i < sols.size(); ++i) {
            if (!sols[i].converged) {
                diag << "rho = " << format_number(ref.rho[i]) << " did not converge: " << sols[i].message << '\n';
                status = not_converged;
                e_model[i] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            e_model[i] = sols[i].e_tilde;
            eta_model[i] = eta_of(sols[i]);
        }
    }

    double max_err = 0.0, max_eta = 0.0;
    for (std::size_t i = 0; i < ref.rho.size(); ++i) {
        const double err = rel_error(ref.e[i], e_model[i]);
        max_err = std::max(max_err, err);
        std::vector<double> cells{ref.rho[i], ref.e[i], e_model[i], err};
        if (eta) {
            const double d = std::abs((*ref.eta)[i] - eta_model[i]);
            max_eta = std::max(max_eta, d);
            cells.insert(cells.end(), {(*ref.eta)[i], eta_model[i], d});
        }
        t.row(cells);
    }
    t.meta("max_rel_error", max_err);
    if (eta) t.meta("max_eta_abs_error", max_eta);
    emit(t, cfg, out);
    diag << "max_rel_error = " << format_number(max_err) << '\n';
    return status;
}

int cmd_asymptotics(const RunConfig& cfg, std::ostream& out, std::ostream& diag)
{
    const sa::EquationKind k = kind(cfg);
    const sa::Potential v = potential(cfg);
    const sa::SolverConfig scfg = solver_config(cfg);
    const auto problem = sa::make_problem(k, v, scfg);
    const double a = problem->scattering().a;
    CsvTable t = table("asymptotics", cfg, {"check", "x", "ratio", "lower", "upper", "pass"});
    t.meta("scattering_length", a);

    std::size_t passed = 0, total = 0;
    auto add = [&](const std::string& check, double x, double ratio, double lo, double hi, bool pass) {
        ++total;
        passed += pass;
        t.row(std::vector<std::string>{check, format_number(x), format_number(ratio), format_number(lo), format_number(hi),
                                       pass ? "PASS" : "FAIL"});
    };
    auto info = [&](const std::string& check, double x, double ratio) {
        t.row(std::vector<std::string>{check, format_number(x), format_number(ratio), "", "", "info"});
    };
    auto solved = [&](double rho) {
        sa::Solution s = sa::solve(problem, rho, scfg);
        if (!s.converged)
            throw sa::ConvergenceError("asymptotics: " + std::string(sa::to_string(k)) + " at rho = " + format_number(rho) +
                                           " did not converge: " + s.message,
                                       s.residual_norm);
        return s;
    };

    // LHY: rho a^3 = x
    std::vector<double> lhy_err;
    for (double x : {1e-6, 1e-7, 1e-8}) {
        const double rho = x / (a * a * a);
        const double r = sa::lhy_ratio(solved(rho).e_tilde, rho, a);
        const double tol = x >= 1e-7 ? 0.2 : 0.05;
        add("lhy", x, r, 1.0 - tol, 1.0 + tol, std::abs(r - 1.0) <= tol);
        lhy_err.push_back(std::abs(r - 1.0));
    }
    add("lhy_monotone", 1e-8, lhy_err.back(), 0.0, lhy_err.front(),
        std::is_sorted(lhy_err.rbegin(), lhy_err.rend()) && lhy_err.back() < lhy_err.front());

    // high density: e / ((rho / 2) int v)
    double last = 0.0;
    bool increasing = true;
    for (double rho : {10.0, 1e2, 1e3, 1e4}) {
        const double r = solved(rho).e_tilde / sa::high_density_energy(rho, v);
        increasing = increasing && r > last;
        last = r;
        info("high_density", rho, r);
    }
    add("high_density", 1e4, last, 0.95, 1.0, increasing && last >= 0.95 && last <= 1.0);

    // Bogolyubov condensate fraction: rho a^3 = x
    for (double x : {1e-8, 1e-9}) {
        const double rho = x / (a * a * a);
        const double r = sa::condensate_linres(solved(rho)) / sa::bogolyubov_eta(rho, a);
        add("bogolyubov", x, r, 0.9, 1.1, r >= 0.9 && r <= 1.1);
    }

    // tail prefactor from the momentum cusp
    if (k == sa::EquationKind::simple) {
        for (double rho : {1e-2, 1.0}) {
            const auto tp = sa::tail_from_slope(solved(rho));
            add("tail_prefactor", rho, tp.ratio(), 0.9, 1.1, tp.ratio() >= 0.9 && tp.ratio() <= 1.1);
            info("tail_prefactor_beta_over_3", rho, tp.measured / tp.prefactor_beta3);
        }
    }
    t.meta("passed", std::to_string(passed) + "/" + std::to_string(total));
    emit(t, cfg, out);
    diag << "asymptotics: " << passed << "/" << total << " checks passed\n";
    return ok;
}

int run_guarded(int (*command)(const RunConfig&, std::ostream&, std::ostream&), const RunConfig& cfg, std::ostream& out,
                std::ostream& diag)
{
    try {
        validate(cfg);
        return command(cfg, out, diag);
    } catch (const UsageError& e) {
        diag << "error: " << e.what() << '\n';
        return usage;
    } catch (const IoError& e) {
        diag << "error: " << e.what() << '\n';
        return io;
    } catch (const sa::ParseError& e) {
        diag << "error: " << e.what() << '\n';
        return usage;
    } catch (const sa::NumericalError& e) {
        diag << "error: " << e.what() << '\n';
        return not_converged;
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return not_converged;
    }
}

}  // namespace cli
