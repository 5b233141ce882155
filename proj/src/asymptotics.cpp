#include "sa/asymptotics.hpp"

#include "sa/errors.hpp"
#include "sa/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sa {
namespace {

constexpr double pi = std::numbers::pi;
const double lhy_coefficient = 128.0 / (15.0 * std::sqrt(pi));

// c0 + c1 k + c2 k^2 through three points
void quadratic_through(const double* k, const double* y, double& c0, double& c1, double& c2)
{
    const double d01 = (y[1] - y[0]) / (k[1] - k[0]);
    const double d12 = (y[2] - y[1]) / (k[2] - k[1]);
    c2 = (d12 - d01) / (k[2] - k[0]);
    c1 = d01 - c2 * (k[0] + k[1]);
    c0 = y[0] - c1 * k[0] - c2 * k[0] * k[0];
}

}  // namespace

double lhy_energy(double rho, double a)
{
    if (rho < 0.0 || a < 0.0) throw std::invalid_argument("lhy_energy: rho and a must be non-negative");
    return 2.0 * pi * rho * a * (1.0 + lhy_coefficient * std::sqrt(rho * a * a * a));
}

double bogolyubov_eta(double rho, double a)
{
    if (rho < 0.0 || a < 0.0) throw std::invalid_argument("bogolyubov_eta: rho and a must be non-negative");
    return 8.0 / (3.0 * std::sqrt(pi)) * std::sqrt(rho * a * a * a);
}

double high_density_energy(double rho, const Potential& v) { return 0.5 * rho * v.l1norm; }

double lhy_ratio(double e, double rho, double a)
{
    return (e / (2.0 * pi * rho * a) - 1.0) / (lhy_coefficient * std::sqrt(rho * a * a * a));
}

double tail_beta(const Solution& sol)
{
    if (!sol.converged) throw std::invalid_argument("tail_beta: solution did not converge");
    const Potential& v = sol.problem->potential();
    const GridPtr grid = refined_position_grid(sol);
    const auto u = u_at(sol, grid->nodes());
    double acc = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const double r = grid->node(i);
        acc += grid->weight(i) * r * r * r * r * v(r) * (1.0 - u[i]);
    }
    return sol.rho * 4.0 * pi * acc;
}

TailPrediction tail_from_slope(const Solution& sol)
{
    if (!sol.converged) throw std::invalid_argument("tail_from_slope: solution did not converge");
    const RadialGrid& m = *sol.problem->momentum();
    if (m.size() < 4) throw std::invalid_argument("tail_from_slope: need at least four momentum nodes");
    TailPrediction t;
    t.beta = tail_beta(sol);
    const double k[4] = {m.node(0), m.node(1), m.node(2), m.node(3)};
    const double y[4] = {sol.x(0), sol.x(1), sol.x(2), sol.x(3)};
    double c0, c1, c2, d0, d1, d2;
    quadratic_through(k, y, c0, c1, c2);
    quadratic_through(k + 1, y + 1, d0, d1, d2);
    t.intercept = c0;
    t.slope = c1;
    t.spread = std::abs(d1 - c1) / std::abs(c1);
    if (!(t.spread <= 0.2))
        throw NumericalError("tail_from_slope: fit window too noisy (relative spread " + std::to_string(t.spread) + ")");
    const double e = sol.e_tilde, rho = sol.rho;
    t.measured = -t.slope / (pi * pi * rho);
    t.prefactor = std::sqrt(2.0 + t.beta) / (2.0 * pi * pi * std::sqrt(e) * rho);
    t.prefactor_beta3 = std::sqrt(2.0 + t.beta / 3.0) / (2.0 * pi * pi * std::sqrt(e) * rho);
    return t;
}

double exponent_fit(std::span<const double> r, std::span<const double> f, double rmin, double rmax, double f_inf)
{
    if (r.size() != f.size()) throw std::invalid_argument("exponent_fit: r and f differ in length");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    int sign = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] < rmin || r[i] > rmax) continue;
        const double d = f[i] - f_inf;
        const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign))
            throw NumericalError("exponent_fit: f - f_inf changes sign inside the window (r = " + std::to_string(r[i]) + ")");
        sign = s;
        const double x = std::log(r[i]), y = std::log(std::abs(d));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("exponent_fit: fewer than two points in the window");
    const double nn = static_cast<double>(n);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

}  // namespace sa
