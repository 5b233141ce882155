#include "sa/scattering.hpp"

#include "sa/errors.hpp"
#include "sa/operators.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sa {

ScatteringData scattering_solve(const Potential& v, GridPtr momentum, const SolverConfig& cfg)
{
    cfg.validate();
    if (momentum->space() != Space::momentum) throw std::invalid_argument("scattering_solve: momentum grid required");
    const auto& g = *momentum;
    const auto n = static_cast<Eigen::Index>(g.size());
    GridPtr position = make_panel_grid(g.panels(), g.per_panel(), Space::position, g.scale());
    const double pi = std::numbers::pi;

    if (v.is_zero()) {
        return {RadialFn::zero(momentum), RadialFn::zero(position), 0.0, 0, 0.0};
    }

    const Eigen::MatrixXd w = product_matrix(g, v, cfg.parallel);
    const Eigen::VectorXd vh = sample_hat(g, v);
    Eigen::VectorXd k2(n);
    for (Eigen::Index i = 0; i < n; ++i) k2(i) = std::pow(g.node(static_cast<std::size_t>(i)), 2);

    Eigen::MatrixXd jac = w;
    jac.diagonal() += k2;
    // rows span many decades in k^2; equilibrate before factorizing
    const Eigen::VectorXd rows = jac.cwiseAbs().rowwise().maxCoeff().cwiseInverse();
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(rows.asDiagonal() * jac);
    
    // the residual is linear in phi_hat, so Newton settles after one step;
    // the loop also reports the residual it reached
    Eigen::VectorXd phi = vh.cwiseQuotient(k2);
    double res = 0.0;
    std::size_t it = 0;
    for (; it < cfg.max_iter; ++it) {
        const Eigen::VectorXd r = k2.cwiseProduct(phi) + w * phi - vh;
        // scale by v_hat(0) so the threshold is dimensionless
        res = r.lpNorm<Eigen::Infinity>() / v.l1norm;
        if (!std::isfinite(res)) throw NonFiniteError("scattering_solve: non-finite residual");
        if (res < cfg.tolerance) break;
        const Eigen::VectorXd step = lu.solve(rows.cwiseProduct(r));
        if (!step.allFinite()) throw SingularSystemError("scattering_solve: singular Jacobian");
        phi -= step;
    }
    if (res >= cfg.tolerance)
        throw ConvergenceError("scattering_solve: no convergence after " + std::to_string(cfg.max_iter) +
                                   " iterations, residual " + std::to_string(res),
                               res);

    std::vector<double> ph(phi.data(), phi.data() + n);
    RadialFn phi_hat(momentum, std::move(ph));
    RadialFn phi_x = fourier_inverse(phi_hat, position, cfg.parallel);
    ScatteringData sd{phi_hat, phi_x, 0.0, it, res};
    sd.a = (v.l1norm - moment_weights(g, v).dot(phi)) / (4.0 * pi);
    return sd;
}

double scattering_length(const ScatteringData& sd, const Potential& v)
{
    const RadialFn one_minus = RadialFn::sample(sd.phi.grid_ptr(), [](double) { return 1.0; }) - sd.phi;
    const RadialFn vr = RadialFn::sample(sd.phi.grid_ptr(), [&v](double r) { return v(r); });
    return integrate_3d(one_minus * vr) / (4.0 * std::numbers::pi);
}

double scattering_length_from_cusp(const ScatteringData& sd)
{
    const double k = sd.phi_hat.grid().node(0);
    return k * k * sd.phi_hat[0] / (4.0 * std::numbers::pi);
}

}  // namespace sa
