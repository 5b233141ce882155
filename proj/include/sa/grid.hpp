#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace sa {

enum class Space { position, momentum };

[[nodiscard]] std::string_view to_string(Space s);

/// Quadrature on the half line, obtained from Gauss-Legendre panels in the
/// compactified variable s = (scale - r) / (scale + r).
///
/// Nodes are ordered by increasing radius. Panel p covers s in
/// [1 - 2(p+1)/P, 1 - 2p/P] and owns nodes [p*n, (p+1)*n).
/// Weights integrate over dr (no r^2 factor).
class RadialGrid {
public:
    RadialGrid(std::size_t panels, std::size_t per_panel, Space space, double scale);

    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
    [[nodiscard]] std::span<const double> weights() const { return weights_; }
    [[nodiscard]] double node(std::size_t i) const { return nodes_[i]; }
    [[nodiscard]] double weight(std::size_t i) const { return weights_[i]; }
    [[nodiscard]] Space space() const { return space_; }
    [[nodiscard]] double scale() const { return scale_; }
    [[nodiscard]] std::size_t panels() const { return panels_; }
    [[nodiscard]] std::size_t per_panel() const { return per_panel_; }

    [[nodiscard]] double to_compact(double r) const;
    [[nodiscard]] double from_compact(double s) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    Space space_;
    double scale_;
    std::size_t panels_;
    std::size_t per_panel_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

[[nodiscard]] GridPtr make_grid(std::size_t n, Space space, double scale = 1.0);
[[nodiscard]] GridPtr make_panel_grid(std::size_t panels, std::size_t per_panel,
                                      Space space, double scale = 1.0);

/// Largest radius at which an inverse transform from `momentum` is trusted.
[[nodiscard]] double reliable_radius(const RadialGrid& momentum);

/// Largest momentum a forward transform from `position` resolves; larger targets are set to zero.
[[nodiscard]] double band_limit(const RadialGrid& position);
/// Compactification map shared by grids and splines.
[[nodiscard]] inline double compact(double r, double scale) { return (scale - r) / (scale + r); }
[[nodiscard]] inline double uncompact(double s, double scale) { return scale * (1.0 - s) / (1.0 + s); }

}  // namespace sa
