#include "sa/observables.hpp"

#include "sa/errors.hpp"
#include "sa/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sa {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double pi = std::numbers::pi;

void require_converged(const Solution& sol, const char* what)
{
    if (!sol.converged || !sol.problem || !sol.u) throw std::invalid_argument(std::string(what) + ": solution did not converge");
}

// values at the probe radii of inv(g_hat) for g_hat on the momentum grid
std::vector<double> inverse_at(const Solution& sol, const VectorXd& g_hat, std::span<const double> radii)
{
    const RadialGrid& m = *sol.problem->momentum();
    std::vector<double> c(m.size());
    for (std::size_t j = 0; j < m.size(); ++j)
        c[j] = m.weight(j) * m.node(j) * m.node(j) * g_hat(static_cast<Index>(j)) / (2.0 * pi * pi);
    std::vector<double> out(radii.size());
    kernels::sine_transform_serial(m.nodes(), c, radii, out);
    return out;
}

}  // namespace

double energy(const Solution& sol)
{
    require_converged(sol, "energy");
    const Potential& v = sol.problem->potential();
    if (v.is_zero()) return 0.0;
    const GridPtr g = refined_position_grid(sol);
    const auto u = u_at(sol, g->nodes());
    std::vector<double> f(g->size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = (1.0 - u[i]) * v(g->node(i));
    return 0.5 * sol.rho * integrate_3d(RadialFn(g, std::move(f)));
}

double normalization(const Solution& sol)
{
    constexpr std::size_t points = 6;
    const RadialGrid& m = *sol.problem->momentum();
    if (m.size() < points) throw std::invalid_argument("normalization: need at least six momentum nodes");
    double acc = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        double l = 1.0;
        for (std::size_t j = 0; j < points; ++j)
            if (j != i) l *= m.node(j) / (m.node(j) - m.node(i));
        acc += l * sol.x(static_cast<Eigen::Index>(i));
    }
    return acc;
}

KOperator::KOperator(MatrixXd forward) : a_(std::move(forward))
{
    rows_ = a_.rowwise().lpNorm<Eigen::Infinity>();
    for (Index i = 0; i < rows_.size(); ++i) rows_(i) = rows_(i) > 0.0 ? 1.0 / rows_(i) : 1.0;
    lu_.compute(rows_.asDiagonal() * a_);
    if (!(lu_.rcond() > 1e-14)) throw SingularSystemError("build_K: singular operator");
}

VectorXd KOperator::apply(const VectorXd& psi_hat) const { return lu_.solve(rows_.asDiagonal() * psi_hat); }
VectorXd KOperator::forward(const VectorXd& phi_hat) const { return a_ * phi_hat; }

KOperator build_K(const Solution& sol)
{
    require_converged(sol, "build_K");
    const Problem& p = *sol.problem;
    MatrixXd a = p.product();
    a.diagonal() += (p.k2().array() + 4.0 * sol.e_tilde * (1.0 - sol.x.array()) + 2.0 * sol.mu).matrix();
    return KOperator(std::move(a));
}

double condensate_simple(const Solution& sol, const KOperator& k)
{
    require_converged(sol, "condensate_simple");
    if (sol.kind != EquationKind::simple) throw std::invalid_argument("condensate_simple: needs a simple-kind solution");
    const Problem& p = *sol.problem;
    if (p.potential().is_zero()) return 0.0;
    const VectorXd& x = sol.x;
    const double num = p.moment().dot(k.apply(x));
    const double den = 1.0 - p.moment().dot(k.apply((2.0 * x.array() - x.array().square()).matrix()));
    if (!(den > 0.0)) throw NumericalError("condensate_simple: linear-response denominator " + std::to_string(den) + " <= 0");
    return num / den;
}

double condensate_linres(const Solution& sol)
{
    require_converged(sol, "condensate_linres");
    const Problem& p = *sol.problem;
    if (p.potential().is_zero()) return 0.0;
    const State s = sol.state();
    const MatrixXd jac = p.jacobian(sol.kind, s, sol.mu, Parametrization::fixed_rho);
    const Eigen::PartialPivLU<MatrixXd> lu(jac);
    const VectorXd d = lu.solve(-p.mu_derivative(s));
    if (!d.allFinite()) throw SingularSystemError("condensate_linres: singular bordered system");
    return d(static_cast<Index>(p.size()));
}

GridPtr refined_position_grid(const Solution& sol)
{
    const Problem& p = *sol.problem;
    return make_grid(4 * p.size(), Space::position, 2.0 / p.config().scale);
}

std::vector<double> probe_radii(const Solution& sol)
{
    const Problem& p = *sol.problem;
    const double rmax = reliable_radius(*p.momentum());
    std::vector<double> r;
    for (double x : p.position()->nodes())
        if (x <= rmax) r.push_back(x);
    return r;
}

std::vector<double> u_at(const Solution& sol, std::span<const double> radii)
{
    require_converged(sol, "u_at");
    return inverse_at(sol, sol.x / sol.rho, radii);
}

Correlation correlation_closed_form(const Solution& sol)
{
    require_converged(sol, "correlation");
    if (sol.kind != EquationKind::simple) throw std::invalid_argument("correlation: the closed formula needs a simple-kind solution");
    const Problem& p = *sol.problem;
    Correlation c;
    c.rho = sol.rho;
    c.radii = probe_radii(sol);
    if (p.potential().is_zero()) {
        c.values.assign(c.radii.size(), 1.0);
        return c;
    }
    const KOperator k = build_K(sol);
    const VectorXd& x = sol.x;
    const VectorXd psi_hat = k.apply(p.vhat());
    const double den = 1.0 - p.moment().dot(k.apply((2.0 * x.array() - x.array().square()).matrix()));
    if (!(den > 0.0)) throw NumericalError("correlation: linear-response denominator " + std::to_string(den) + " <= 0");
    const auto u = u_at(sol, c.radii);
    const auto psi = inverse_at(sol, psi_hat, c.radii);
    const auto conv = inverse_at(sol, ((x.array().square() - 2.0 * x.array()) * psi_hat.array()).matrix(), c.radii);
    c.values.resize(c.radii.size());
    for (std::size_t i = 0; i < c.radii.size(); ++i)
        c.values[i] = 1.0 - u[i] + (psi[i] * (1.0 - u[i]) + conv[i]) / den;
    return c;
}

Correlation correlation_adjoint(const Solution& sol)
{
    require_converged(sol, "correlation");
    if (sol.kind == EquationKind::complete)
        throw std::invalid_argument("correlation: not available for the complete kind");
    const Problem& p = *sol.problem;
    Correlation c;
    c.rho = sol.rho;
    c.radii = probe_radii(sol);
    if (p.potential().is_zero()) {
        c.values.assign(c.radii.size(), 1.0);
        return c;
    }
    const State s = sol.state();
    const Index n = static_cast<Index>(p.size());
    const MatrixXd jac = p.jacobian(sol.kind, s, sol.mu, Parametrization::fixed_rho);
    const Eigen::PartialPivLU<MatrixXd> lu(jac.transpose());
    VectorXd rhs = VectorXd::Zero(n + 1);
    rhs(n) = 1.0;
    const VectorXd lambda = lu.solve(rhs);
    if (!lambda.allFinite()) throw SingularSystemError("correlation: adjoint solve failed (singular system)");
    const MatrixXd fs = p.sigma_jacobian(sol.kind, s, sol.mu);
    const VectorXd g = -fs.transpose() * lambda.head(n);
    // sum_m g_m sinc(k_m z) is a plain sum, not a quadrature
    const RadialGrid& m = *p.momentum();
    std::vector<double> sum(c.radii.size());
    kernels::sine_transform_serial(m.nodes(), std::span<const double>(g.data(), m.size()), c.radii, sum);
    const auto u = u_at(sol, c.radii);
    c.values.resize(c.radii.size());
    for (std::size_t i = 0; i < c.radii.size(); ++i)
        c.values[i] = 2.0 * (1.0 - u[i]) * (sum[i] + 0.5 * lambda(n));
    return c;
}

Correlation correlation(const Solution& sol)
{
    if (sol.kind == EquationKind::simple) return correlation_closed_form(sol);
    return correlation_adjoint(sol);
}

}  // namespace sa
