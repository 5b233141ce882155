#include "sa/grid.hpp"

#include "sa/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sa {

std::string_view to_string(Space s)
{
    return s == Space::position ? "position" : "momentum";
}

RadialGrid::RadialGrid(std::size_t panels, std::size_t per_panel, Space space, double scale)
    : space_(space), scale_(scale), panels_(panels), per_panel_(per_panel)
{
    if (panels == 0 || per_panel == 0) throw std::invalid_argument("RadialGrid: order must be at least 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("RadialGrid: scale must be positive");
    nodes_.reserve(panels * per_panel);
    weights_.reserve(panels * per_panel);
    const double width = 2.0 / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double s_hi = 1.0 - width * static_cast<double>(p);
        const double s_lo = s_hi - width;
        const GaussRule rule = gauss_legendre(per_panel, s_lo, s_hi);
        // descending s is ascending r
        for (std::size_t j = per_panel; j-- > 0;) {
            const double s = rule.nodes[j];
            nodes_.push_back(uncompact(s, scale));
            weights_.push_back(rule.weights[j] * 2.0 * scale / ((1.0 + s) * (1.0 + s)));
        }
    }
}

double RadialGrid::to_compact(double r) const { return compact(r, scale_); }
double RadialGrid::from_compact(double s) const { return uncompact(s, scale_); }

GridPtr make_grid(std::size_t n, Space space, double scale)
{
    return std::make_shared<const RadialGrid>(1, n, space, scale);
}

GridPtr make_panel_grid(std::size_t panels, std::size_t per_panel, Space space, double scale)
{
    return std::make_shared<const RadialGrid>(panels, per_panel, space, scale);
}

double reliable_radius(const RadialGrid& momentum)
{
    return static_cast<double>(momentum.size()) / (8.0 * momentum.scale());
}

double band_limit(const RadialGrid& position)
{
    return static_cast<double>(position.size()) / (10.0 * std::min(position.scale(), 1.0));
}

}  // namespace sa
