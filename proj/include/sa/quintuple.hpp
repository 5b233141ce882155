#pragma once

#include "sa/kernels.hpp"
#include "sa/potential.hpp"
#include "sa/radial_fn.hpp"
#include "sa/spline.hpp"

#include <Eigen/Dense>

#include <memory>

namespace sa {

/// The Complete-equation term
/// (rho^3 / 2) FT[(1-u)(x) int dy dz u(y) u(y-x) u(z) u(z-x) S(z-y)](k_i),
/// with S = (1-u) v, evaluated in position space by a product rule.
class QuintupleTerm {
public:
    /// `order` sets the points per dimension of the product rule.
    QuintupleTerm(const SplineFitter& fitter, const Potential& v, std::size_t order, bool parallel);

    /// x = rho u_hat at the momentum nodes of the fitter's grid.
    [[nodiscard]] Eigen::VectorXd evaluate(const Eigen::VectorXd& x, double rho) const;

    /// u in position space, as the spline used inside the quadrature.
    [[nodiscard]] ChebSpline position_u(const Eigen::VectorXd& x, double rho) const;

    /// The four-fold integral J at radius r for a given u spline.
    [[nodiscard]] std::vector<double> four_fold(const ChebSpline& u, std::span<const double> radii) const;

    [[nodiscard]] const RadialGrid& outer_grid() const { return *outer_; }

private:
    const SplineFitter& fitter_;
    const Potential& v_;
    bool parallel_;
    GridPtr fine_;   // momentum quadrature for the inverse transform of u
    GridPtr outer_;  // position grid for the final forward transform
    kernels::QuintupleRule rule_;
};

}  // namespace sa
