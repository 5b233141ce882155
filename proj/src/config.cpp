#include "sa/config.hpp"

#include <cmath>
#include <stdexcept>

namespace sa {

std::string_view to_string(EquationKind k)
{
    switch (k) {
    case EquationKind::simple: return "simple";
    case EquationKind::medium: return "medium";
    case EquationKind::bigeq: return "bigeq";
    case EquationKind::complete: return "complete";
    }
    return "?";
}

std::string_view to_string(Parametrization p)
{
    return p == Parametrization::fixed_rho ? "fixed_rho" : "fixed_e";
}

std::string_view to_string(InitPolicy p)
{
    switch (p) {
    case InitPolicy::automatic: return "automatic";
    case InitPolicy::scattering: return "scattering";
    case InitPolicy::medium_solution: return "medium_solution";
    case InitPolicy::supplied: return "supplied";
    }
    return "?";
}

EquationKind parse_kind(std::string_view s)
{
    if (s == "simple") return EquationKind::simple;
    if (s == "medium") return EquationKind::medium;
    if (s == "bigeq" || s == "big") return EquationKind::bigeq;
    if (s == "complete") return EquationKind::complete;
    throw std::invalid_argument("unknown equation '" + std::string(s) + "' (valid: simple, medium, bigeq, complete)");
}

Parametrization parse_parametrization(std::string_view s)
{
    if (s == "fixed_rho" || s == "rho") return Parametrization::fixed_rho;
    if (s == "fixed_e" || s == "e") return Parametrization::fixed_e;
    throw std::invalid_argument("unknown parametrization '" + std::string(s) + "' (valid: fixed_rho, fixed_e)");
}

InitPolicy parse_init_policy(std::string_view s)
{
    if (s == "automatic" || s == "auto") return InitPolicy::automatic;
    if (s == "scattering") return InitPolicy::scattering;
    if (s == "medium_solution" || s == "medium") return InitPolicy::medium_solution;
    if (s == "supplied") return InitPolicy::supplied;
    throw std::invalid_argument("unknown init policy '" + std::string(s) + "'");
}

void SolverConfig::validate() const
{
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw std::invalid_argument("tolerance must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("scale must be positive");
    if (!std::isfinite(mu)) throw std::invalid_argument("mu must be finite");
}

Layout resolve_layout(EquationKind kind, const SolverConfig& cfg)
{
    cfg.validate();
    if (!uses_splines(kind)) {
        const std::size_t n = cfg.order ? cfg.order : 200;
        return {1, n, 0};
    }
    const bool complete = kind == EquationKind::complete;
    const std::size_t panels = cfg.splines ? cfg.splines : (complete ? 3 : 8);
    const std::size_t n = cfg.order ? cfg.order : (complete ? 24 : 104);
    const std::size_t per_panel = (n + panels - 1) / panels;
    const std::size_t degree = cfg.spline_degree ? cfg.spline_degree : per_panel - 1;
    if (per_panel < 2) throw std::invalid_argument("order too small for the number of spline intervals");
    if (degree + 1 > per_panel)
        throw std::invalid_argument("spline degree " + std::to_string(degree) + " needs at least " +
                                    std::to_string(degree + 1) + " nodes per interval, have " +
                                    std::to_string(per_panel));
    return {panels, per_panel, degree};
}

}  // namespace sa
