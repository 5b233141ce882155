#pragma once

#include "sa/grid.hpp"
#include "sa/spline.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace sa {

/// Rotation-invariant function sampled on a RadialGrid.
class RadialFn {
public:
    RadialFn(GridPtr grid, std::vector<double> values);

    static RadialFn sample(GridPtr grid, const std::function<double(double)>& f);
    static RadialFn zero(GridPtr grid);

    [[nodiscard]] const RadialGrid& grid() const { return *grid_; }
    [[nodiscard]] const GridPtr& grid_ptr() const { return grid_; }
    [[nodiscard]] std::span<const double> values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    /// Copy carrying a least-squares spline over P intervals of degree D.
    [[nodiscard]] RadialFn with_interpolant(std::size_t intervals, std::size_t degree) const;
    [[nodiscard]] const std::optional<ChebSpline>& interpolant() const { return spline_; }
    /// Off-node value; requires an interpolant.
    [[nodiscard]] double at(double r) const;

private:
    GridPtr grid_;
    std::vector<double> values_;
    std::optional<ChebSpline> spline_;
};

/// Pointwise arithmetic on a shared grid.
[[nodiscard]] RadialFn operator*(const RadialFn& f, const RadialFn& g);
[[nodiscard]] RadialFn operator+(const RadialFn& f, const RadialFn& g);
[[nodiscard]] RadialFn operator-(const RadialFn& f, const RadialFn& g);
[[nodiscard]] RadialFn operator*(double a, const RadialFn& f);

/// 4 pi sum_i w_i r_i^2 f_i
[[nodiscard]] double integrate_3d(const RadialFn& f);

/// f_hat(k) = (4 pi / k) int r f(r) sin(kr) dr, zero past band_limit(f.grid()).
[[nodiscard]] RadialFn fourier_forward(const RadialFn& f, GridPtr momentum, bool parallel = true);
/// g(r) = (1 / (2 pi^2 r)) int k g_hat(k) sin(kr) dk, zero past reliable_radius(g.grid()).
[[nodiscard]] RadialFn fourier_inverse(const RadialFn& g, GridPtr position, bool parallel = true);

/// Convolution through the product in the dual space (dual grid has the same order and scale).
[[nodiscard]] RadialFn convolve(const RadialFn& f, const RadialFn& g);
/// Convolution by two-center bipolar quadrature; g is spline-interpolated with P intervals
/// of degree D. P = 0 derives both from the grid layout.
[[nodiscard]] RadialFn convolve_bipolar(const RadialFn& f, const RadialFn& g, std::size_t intervals = 0,
                                        std::size_t degree = 0);

[[nodiscard]] ChebSpline spline_fit(const RadialFn& f, std::size_t intervals, std::size_t degree);
[[nodiscard]] double spline_eval(const ChebSpline& s, double r);

}  // namespace sa
