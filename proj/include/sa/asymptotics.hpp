#pragma once

#include "sa/equations.hpp"
#include "sa/potential.hpp"

#include <span>

namespace sa {

/// 2 pi rho a (1 + 128/(15 sqrt(pi)) sqrt(rho a^3))
[[nodiscard]] double lhy_energy(double rho, double a);
/// (8 / (3 sqrt(pi))) sqrt(rho a^3)
[[nodiscard]] double bogolyubov_eta(double rho, double a);
/// (rho / 2) int v
[[nodiscard]] double high_density_energy(double rho, const Potential& v);

/// (e/(2 pi rho a) - 1) / (128/(15 sqrt(pi)) sqrt(rho a^3))
[[nodiscard]] double lhy_ratio(double e, double rho, double a);

struct TailPrediction {
    double beta = 0.0;           // rho int |x|^2 v (1-u)
    double prefactor = 0.0;      // sqrt(2 + beta) / (2 pi^2 sqrt(e) rho)
    double exponent = -4.0;
    double prefactor_beta3 = 0.0;  // same with beta / 3, the value implied by the closed form's k^2 term
    double measured = 0.0;       // -(1 / (pi^2 rho)) d(rho u_hat)/dk at 0
    double slope = 0.0;          // d(rho u_hat)/dk at 0
    double intercept = 0.0;      // rho u_hat extrapolated to k = 0
    double spread = 0.0;         // relative change of the slope between two fit windows

    [[nodiscard]] double ratio() const { return measured / prefactor; }
};

/// rho int |x|^2 v (1-u) on a refined position grid.
[[nodiscard]] double tail_beta(const Solution& sol);

/// Cusp slope of rho u_hat at the smallest momenta, compared with the tail law.
[[nodiscard]] TailPrediction tail_from_slope(const Solution& sol);

/// Least-squares slope of log|f - f_inf| against log r over r in [rmin, rmax].
[[nodiscard]] double exponent_fit(std::span<const double> r, std::span<const double> f, double rmin, double rmax,
                                  double f_inf = 0.0);

}  // namespace sa
