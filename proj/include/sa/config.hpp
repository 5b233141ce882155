#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace sa {

enum class EquationKind { simple, medium, bigeq, complete };
enum class Parametrization { fixed_rho, fixed_e };
/// `automatic` means scattering for simple/medium and medium_solution for bigeq/complete.
enum class InitPolicy { automatic, scattering, medium_solution, supplied };

[[nodiscard]] std::string_view to_string(EquationKind k);
[[nodiscard]] std::string_view to_string(Parametrization p);
[[nodiscard]] std::string_view to_string(InitPolicy p);
[[nodiscard]] EquationKind parse_kind(std::string_view s);
[[nodiscard]] Parametrization parse_parametrization(std::string_view s);
[[nodiscard]] InitPolicy parse_init_policy(std::string_view s);

/// Zero for order/splines/spline_degree selects the per-kind default.
struct SolverConfig {
    std::size_t order = 0;
    std::size_t splines = 0;
    std::size_t spline_degree = 0;
    double scale = 1.0;
    double tolerance = 1e-11;
    std::size_t max_iter = 50;
    Parametrization parametrization = Parametrization::fixed_rho;
    InitPolicy init_policy = InitPolicy::automatic;
    double mu = 0.0;
    bool parallel = true;
    bool warm_start = true;
    /// Points per dimension of the Complete-equation product rule (0: default).
    std::size_t quintuple_order = 0;

    void validate() const;
};

/// Grid layout actually used for a kind: panels x per_panel nodes, spline degree.
struct Layout {
    std::size_t panels;
    std::size_t per_panel;
    std::size_t degree;
    [[nodiscard]] std::size_t order() const { return panels * per_panel; }
};

[[nodiscard]] Layout resolve_layout(EquationKind kind, const SolverConfig& cfg);

[[nodiscard]] inline bool uses_splines(EquationKind k)
{
    return k == EquationKind::bigeq || k == EquationKind::complete;
}

}  // namespace sa
