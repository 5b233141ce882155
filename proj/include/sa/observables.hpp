#pragma once

#include "sa/equations.hpp"

#include <Eigen/Dense>

#include <vector>

namespace sa {

/// (rho/2) int (1-u) v on a refined position grid.
[[nodiscard]] double energy(const Solution& sol);

/// Discretization of -Lap + v + 4e(1 - rho u*) on the momentum grid, factorized once.
class KOperator {
public:
    explicit KOperator(Eigen::MatrixXd forward);

    [[nodiscard]] const Eigen::MatrixXd& matrix() const { return a_; }
    /// K psi
    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& psi_hat) const;
    /// K^{-1} phi
    [[nodiscard]] Eigen::VectorXd forward(const Eigen::VectorXd& phi_hat) const;

private:
    Eigen::MatrixXd a_;
    Eigen::VectorXd rows_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

[[nodiscard]] KOperator build_K(const Solution& sol);

/// rho u_hat(0+), polynomial extrapolation from the six smallest momenta.
[[nodiscard]] double normalization(const Solution& sol);

/// Closed quotient for the Simple Equation.
[[nodiscard]] double condensate_simple(const Solution& sol, const KOperator& k);
/// d e_tilde / d mu at mu = 0 from one bordered solve; any kind.
[[nodiscard]] double condensate_linres(const Solution& sol);

struct Correlation {
    std::vector<double> radii;
    std::vector<double> values;  // C2 / rho^2
    double rho = 0.0;
};

/// Closed formula for simple, adjoint path for medium/bigeq.
[[nodiscard]] Correlation correlation(const Solution& sol);
[[nodiscard]] Correlation correlation_closed_form(const Solution& sol);
/// 2 rho d e_tilde / d v(z) / rho^2 from one transposed solve of the bordered system.
[[nodiscard]] Correlation correlation_adjoint(const Solution& sol);

/// Position grid with four times the solution's order, used for the energy-type integrals.
[[nodiscard]] GridPtr refined_position_grid(const Solution& sol);

/// Probe radii: position nodes inside the reliable window.
[[nodiscard]] std::vector<double> probe_radii(const Solution& sol);

/// u at arbitrary radii by direct sine sums over the momentum nodes.
[[nodiscard]] std::vector<double> u_at(const Solution& sol, std::span<const double> radii);

}  // namespace sa
