#include "run_config.hpp"

#include "csv.hpp"

#include <algorithm>
#include <cmath>

namespace cli {

namespace {

const std::vector<std::string> equation_names{"simple", "medium", "bigeq", "complete"};

std::string number(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

const CLI::Validator positive(
    [](std::string& in) -> std::string {
        double x = 0.0;
        if (!CLI::detail::lexical_cast(in, x) || !(x > 0.0) || !std::isfinite(x)) return "must be a positive number, got " + in;
        return {};
    },
    "POSITIVE");

}  // namespace

void register_options(CLI::App& app, RunConfig& cfg)
{
    app.set_config("--config", "", "Read `key = value` settings from a file");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.add_option("--equation", cfg.equation, "simple, medium, bigeq or complete")
        ->check(CLI::IsMember(equation_names))
        ->capture_default_str();
    app.add_option("--potential", cfg.potential, "Catalog shape (exp, gauss, yukawa, well) or zero")->capture_default_str();
    app.add_option("--coupling", cfg.coupling, "Coupling multiplying the shape")
        ->check(positive)
        ->capture_default_str();
    app.add_option("--potential-file", cfg.potential_file, "Tabulated potential: two columns r v")
        ->check(CLI::ExistingFile);
    auto* rho = app.add_option("--rho", cfg.rho, "Density")->check(positive);
    auto* e = app.add_option("--e-tilde", cfg.e_tilde, "Energy per particle (fixed-energy solve)")->check(positive);
    rho->excludes(e);
    app.add_option("--rho-min", cfg.rho_min, "Sweep start")->check(positive);
    app.add_option("--rho-max", cfg.rho_max, "Sweep end")->check(positive);
    app.add_option("--points", cfg.points, "Sweep points")->check(CLI::Range(std::size_t{1}, std::size_t{100000}))->capture_default_str();
    app.add_flag("--log", cfg.log, "Logarithmic sweep spacing");
    app.add_option("--order", cfg.order, "Grid order (0: per-kind default)")->capture_default_str();
    app.add_option("--scale", cfg.scale, "Momentum grid scale; smaller values resolve lower densities")
        ->check(positive)
        ->capture_default_str();
    app.add_option("--tol", cfg.tol, "Newton step tolerance")->check(positive)->capture_default_str();
    app.add_option("--max-iter", cfg.max_iter, "Newton iteration cap")
        ->check(CLI::Range(std::size_t{1}, std::size_t{100000}))
        ->capture_default_str();
    app.add_option("--splines", cfg.splines, "Spline intervals (0: default)")->capture_default_str();
    app.add_option("--spline-degree", cfg.spline_degree, "Spline degree (0: default)")->capture_default_str();
    app.add_option("--out", cfg.out, "Output file (default: standard output)");
    app.add_option("--reference", cfg.reference, "Reference CSV with columns rho,e[,eta]");
    app.add_option("--observables", cfg.observables, "Extra columns: eta")
        ->check(CLI::IsMember({"eta"}))
        ->delimiter(',');
}

void validate(const RunConfig& cfg)
{
    if (cfg.rho_min && cfg.rho_max && !(*cfg.rho_min < *cfg.rho_max) && cfg.points > 1)
        throw UsageError("--rho-min must be smaller than --rho-max");
    if (cfg.potential_file.empty() && cfg.potential != "zero") {
        try {
            (void)sa::catalog(cfg.potential, cfg.coupling);
        } catch (const std::invalid_argument& ex) {
            throw UsageError(std::string("--potential: ") + ex.what());
        }
    }
}

sa::EquationKind kind(const RunConfig& cfg) { return sa::parse_kind(cfg.equation); }

sa::Potential potential(const RunConfig& cfg)
{
    if (cfg.potential_file.empty()) return cfg.potential == "zero" ? sa::zero_potential() : sa::catalog(cfg.potential, cfg.coupling);
    sa::Potential v = sa::load_potential(cfg.potential_file);
    if (cfg.coupling != 1.0) {
        const double c = cfg.coupling;
        const auto f = v.profile, h = v.hat, p = v.primitive;
        v.profile = [=](double r) { return c * f(r); };
        v.hat = [=](double k) { return c * h(k); };
        v.primitive = [=](double t) { return c * p(t); };
        v.l1norm *= c;
        v.l2norm *= std::sqrt(c);
        v.second_moment *= c;
        v.coupling = c;
    }
    return v;
}

sa::SolverConfig solver_config(const RunConfig& cfg)
{
    sa::SolverConfig s;
    s.order = cfg.order;
    s.scale = cfg.scale;
    s.splines = cfg.splines;
    s.spline_degree = cfg.spline_degree;
    s.tolerance = cfg.tol;
    s.max_iter = cfg.max_iter;
    if (cfg.e_tilde) s.parametrization = sa::Parametrization::fixed_e;
    try {
        s.validate();
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    return s;
}

bool wants(const RunConfig& cfg, const std::string& observable)
{
    for (const auto& o : cfg.observables)
        if (o == observable) return true;
    return false;
}

std::vector<double> sweep(const RunConfig& cfg)
{
    if (!cfg.rho_min || !cfg.rho_max) throw UsageError("a sweep needs --rho-min and --rho-max");
    const double lo = *cfg.rho_min, hi = *cfg.rho_max;
    std::vector<double> out(cfg.points);
    if (cfg.points == 1) {
        out[0] = lo;
        return out;
    }
    const double n = static_cast<double>(cfg.points - 1);
    for (std::size_t i = 0; i < cfg.points; ++i) {
        const double t = static_cast<double>(i) / n;
        out[i] = cfg.log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& cfg)
{
    std::string obs;
    for (const auto& o : cfg.observables) obs += (obs.empty() ? "" : ",") + o;
    std::vector<std::pair<std::string, std::string>> all{
        {"equation", cfg.equation},
        {"potential", cfg.potential},
        {"potential-file", cfg.potential_file},
        {"coupling", format_number(cfg.coupling)},
        {"rho", number(cfg.rho)},
        {"e-tilde", number(cfg.e_tilde)},
        {"rho-min", number(cfg.rho_min)},
        {"rho-max", number(cfg.rho_max)},
        {"points", std::to_string(cfg.points)},
        {"log", cfg.log ? "true" : "false"},
        {"order", std::to_string(cfg.order)},
        {"scale", format_number(cfg.scale)},
        {"tol", format_number(cfg.tol)},
        {"max-iter", std::to_string(cfg.max_iter)},
        {"splines", std::to_string(cfg.splines)},
        {"spline-degree", std::to_string(cfg.spline_degree)},
        {"observables", obs},
    };
    std::erase_if(all, [](const auto& kv) { return kv.second.empty(); });
    return all;
}

}  // namespace cli
