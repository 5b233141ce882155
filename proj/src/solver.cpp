#include "sa/equations.hpp"

#include "sa/errors.hpp"

#include <algorithm>
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

// rho u_hat from the closed form; with `clamp` a negative discriminant is set to zero
VectorXd closed_form_values(const VectorXd& k2, const VectorXd& sig, double e, double mu, bool clamp)
{
    VectorXd x(k2.size());
    for (Index i = 0; i < k2.size(); ++i) {
        const double kap = (k2(i) + 2.0 * mu) / (4.0 * e) + 1.0;
        const double src = sig(i) / (2.0 * e);
        double disc = kap * kap - src;
        if (disc < 0.0) {
            if (!clamp && disc < -1e-12 * kap * kap)
                throw UnphysicalStateError("simple_closed_form: negative discriminant at node " + std::to_string(i), static_cast<std::size_t>(i));
            disc = 0.0;
        }
        x(i) = src / (kap + std::sqrt(disc));
    }
    return x;
}

bool is_fixed_rho(const SolverConfig& cfg) { return cfg.parametrization == Parametrization::fixed_rho; }

State scattering_init(const Problem& p, double value, const SolverConfig& cfg)
{
    const Potential& v = p.potential();
    const double a = p.scattering().a;
    State s;
    if (is_fixed_rho(cfg)) {
        s.rho = value;
        s.e = std::clamp(2.0 * pi * value * a, 0.25 * value * v.l1norm, 0.5 * value * v.l1norm);
    } else {
        s.e = value;
        s.rho = std::clamp(value / (2.0 * pi * a), 2.0 * value / v.l1norm, 4.0 * value / v.l1norm);
    }
    const auto ph = p.scattering().phi_hat.values();
    const VectorXd phi = Eigen::Map<const VectorXd>(ph.data(), static_cast<Index>(ph.size()));
    const VectorXd sig = s.rho * (p.vhat() - p.product() * phi);
    s.x = closed_form_values(p.k2(), sig, s.e, cfg.mu, true);
    return s;
}

State zero_init(const Problem& p, double value, const SolverConfig& cfg)
{
    const double l1 = p.potential().l1norm;
    State s;
    s.x = VectorXd::Zero(static_cast<Index>(p.size()));
    if (is_fixed_rho(cfg)) {
        s.rho = value;
        s.e = 0.5 * value * l1;
    } else {
        s.e = value;
        s.rho = 2.0 * value / l1;
    }
    return s;
}

void finish(Solution& sol, const Problem& p)
{
    std::vector<double> uh(static_cast<std::size_t>(sol.x.size()));
    for (std::size_t i = 0; i < uh.size(); ++i) uh[i] = sol.x(static_cast<Index>(i)) / sol.rho;
    sol.u_hat = RadialFn(p.momentum(), std::move(uh));
    sol.u = fourier_inverse(*sol.u_hat, p.position(), p.config().parallel);
}

Solution failed(const ProblemPtr& p, EquationKind kind, double value, const SolverConfig& cfg, std::string msg)
{
    Solution s;
    s.kind = kind;
    s.problem = p;
    s.mu = cfg.mu;
    s.rho = is_fixed_rho(cfg) ? value : std::nan("");
    s.e_tilde = is_fixed_rho(cfg) ? std::nan("") : value;
    s.converged = false;
    s.message = std::move(msg);
    return s;
}

Solution zero_solution(const ProblemPtr& p, EquationKind kind, double value, const SolverConfig& cfg)
{
    if (!is_fixed_rho(cfg)) throw std::invalid_argument("solve: with v = 0 the energy is 0 for every rho; fix rho instead");
    Solution s;
    s.kind = kind;
    s.problem = p;
    s.mu = cfg.mu;
    s.rho = value;
    s.e_tilde = 0.0;
    s.x = VectorXd::Zero(static_cast<Index>(p->size()));
    s.converged = true;
    finish(s, *p);
    return s;
}

}  // namespace

RadialFn simple_closed_form(const RadialFn& s_hat, double e, double rho, double mu)
{
    if (!(e > 0.0)) throw std::invalid_argument("simple_closed_form: e_tilde must be positive");
    const auto& g = s_hat.grid();
    VectorXd k2(static_cast<Index>(g.size())), sig(static_cast<Index>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        k2(static_cast<Index>(i)) = g.node(i) * g.node(i);
        sig(static_cast<Index>(i)) = rho * s_hat[i];
    }
    const VectorXd x = closed_form_values(k2, sig, e, mu, false);
    return RadialFn(s_hat.grid_ptr(), std::vector<double>(x.data(), x.data() + x.size()));
}

Solution newton(const ProblemPtr& problem, EquationKind kind, State s, const SolverConfig& cfg)
{
    const Problem& p = *problem;
    const Index n = static_cast<Index>(p.size());
    const bool fix_rho = is_fixed_rho(cfg);
    Solution sol;
    sol.kind = kind;
    sol.problem = problem;
    sol.mu = cfg.mu;

    for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
        const VectorXd f = p.residual(kind, s, cfg.mu);
        MatrixXd jac = p.jacobian(kind, s, cfg.mu, cfg.parametrization);
        // row and column equilibration keep the conditioning estimate meaningful at small rho
        VectorXd rs = jac.rowwise().lpNorm<Eigen::Infinity>();
        for (Index i = 0; i <= n; ++i) rs(i) = rs(i) > 0.0 ? 1.0 / rs(i) : 1.0;
        jac = rs.asDiagonal() * jac;
        VectorXd cs = jac.colwise().lpNorm<Eigen::Infinity>().transpose();
        for (Index i = 0; i <= n; ++i) cs(i) = cs(i) > 0.0 ? 1.0 / cs(i) : 1.0;
        jac = jac * cs.asDiagonal();
        const Eigen::PartialPivLU<MatrixXd> lu(jac);
        const double rc = lu.rcond();
        if (!(rc > 1e-14))
            throw SingularSystemError("newton: singular Jacobian (reciprocal condition " + std::to_string(rc) +
                                      ") at iteration " + std::to_string(it));
        VectorXd d = -cs.cwiseProduct(lu.solve(rs.asDiagonal() * f));
        if (!d.allFinite()) throw NonFiniteError("non-finite value in term 'newton step'");

        const VectorXd xn = s.x + d.head(n);
        if (xn.minCoeff() < -0.1 || xn.maxCoeff() > 1.1) d *= 0.5;
        double& scalar = fix_rho ? s.e : s.rho;
        for (int h = 0; h < 60 && !(scalar + d(n) > 0.0); ++h) d *= 0.5;

        s.x += d.head(n);
        const double step = std::max(d.head(n).lpNorm<Eigen::Infinity>(), std::abs(d(n)) / std::abs(scalar));
        scalar += d(n);
        sol.step_norms.push_back(step);
        sol.iterations = it;
        if (!std::isfinite(step)) break;
        if (step < cfg.tolerance) {
            sol.converged = true;
            break;
        }
    }
    sol.rho = s.rho;
    sol.e_tilde = s.e;
    sol.x = s.x;
    sol.residual_norm = p.residual(kind, s, cfg.mu).lpNorm<Eigen::Infinity>();
    if (!sol.converged)
        sol.message = "no convergence after " + std::to_string(sol.iterations) + " iterations, last step " +
                      std::to_string(sol.step_norms.empty() ? 0.0 : sol.step_norms.back());
    finish(sol, p);
    return sol;
}

Solution solve(const ProblemPtr& problem, double value, const SolverConfig& cfg, const State* init)
{
    cfg.validate();
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument(std::string(is_fixed_rho(cfg) ? "rho" : "e_tilde") + " must be positive");
    const Problem& p = *problem;
    const EquationKind kind = p.kind();
    if (p.potential().is_zero()) return zero_solution(problem, kind, value, cfg);

    InitPolicy policy = cfg.init_policy;
    if (policy == InitPolicy::automatic)
        policy = uses_splines(kind) ? InitPolicy::medium_solution : InitPolicy::scattering;

    auto attempt = [&](EquationKind k, const State& s0) -> Solution {
        try {
            return newton(problem, k, s0, cfg);
        } catch (const NumericalError& e) {
            return failed(problem, k, value, cfg, e.what());
        }
    };

    if (policy == InitPolicy::supplied) {
        if (!init) throw std::invalid_argument("solve: init policy 'supplied' needs an initial state");
        State s0 = *init;
        (is_fixed_rho(cfg) ? s0.rho : s0.e) = value;
        return attempt(kind, s0);
    }

    // a cold start for the lower equations, with fallbacks
    auto cold = [&](EquationKind k) -> Solution {
        Solution s = attempt(k, scattering_init(p, value, cfg));
        if (s.converged) return s;
        s = attempt(k, zero_init(p, value, cfg));
        if (s.converged || k == EquationKind::simple) return s;
        const Solution simple = attempt(EquationKind::simple, scattering_init(p, value, cfg));
        return simple.converged ? attempt(k, simple.state()) : s;
    };

    if (policy == InitPolicy::scattering) {
        if (!uses_splines(kind)) return cold(kind);
        State s0 = scattering_init(p, value, cfg);
        return attempt(kind, s0);
    }

    // medium_solution
    if (kind == EquationKind::simple) return cold(kind);
    const Solution medium = cold(EquationKind::medium);
    if (kind == EquationKind::medium) return medium;
    if (!medium.converged) return failed(problem, kind, value, cfg, "medium-equation initialization failed: " + medium.message);
    const Solution big = attempt(EquationKind::bigeq, medium.state());
    if (kind == EquationKind::bigeq) return big;
    return attempt(kind, big.converged ? big.state() : medium.state());
}

Solution solve(EquationKind kind, const Potential& v, double value, const SolverConfig& cfg)
{
    return solve(make_problem(kind, v, cfg), value, cfg);
}

std::vector<Solution> scan(const ProblemPtr& problem, std::span<const double> values, const SolverConfig& cfg)
{
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw std::invalid_argument("scan: values must be positive (entry " + std::to_string(i) + ")");
        if (i > 0 && !(values[i] > values[i - 1])) throw std::invalid_argument("scan: values must increase");
    }
    const EquationKind kind = problem->kind();
    std::vector<Solution> out(values.size());
    auto guarded = [&](std::size_t i, const State* init) {
        try {
            if (init) {
                Solution s = newton(problem, kind, *init, cfg);
                if (s.converged) return s;
            }
            return solve(problem, values[i], cfg);
        } catch (const std::exception& e) {
            return failed(problem, kind, values[i], cfg, e.what());
        }
    };
    if (cfg.warm_start) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i == 0 || !out[i - 1].converged || problem->potential().is_zero()) {
                out[i] = guarded(i, nullptr);
                continue;
            }
            State s0 = out[i - 1].state();
            const double ratio = values[i] / values[i - 1];
            if (is_fixed_rho(cfg)) {
                s0.rho = values[i];
                s0.e *= ratio;
            } else {
                s0.e = values[i];
                s0.rho *= ratio;
            }
            out[i] = guarded(i, &s0);
        }
        return out;
    }
    const auto count = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = guarded(static_cast<std::size_t>(i), nullptr);
    return out;
}

std::vector<Solution> scan(EquationKind kind, const Potential& v, std::span<const double> values, const SolverConfig& cfg)
{
    return scan(make_problem(kind, v, cfg), values, cfg);
}

}  // namespace sa
