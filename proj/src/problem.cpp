#include "sa/equations.hpp"

#include "sa/errors.hpp"
#include "sa/kernels.hpp"
#include "sa/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sa {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_finite(const VectorXd& v, const char* term)
{
    for (Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v(i)))
            throw NonFiniteError(std::string("non-finite value in term '") + term + "' at node " + std::to_string(i));
}

std::span<const double> view(const VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

constexpr std::size_t default_quintuple_order = 12;

}  // namespace

Problem::Problem(EquationKind kind, Potential v, const SolverConfig& cfg)
    : kind_(kind), v_(std::move(v)), cfg_(cfg), layout_(resolve_layout(kind, cfg))
{
    momentum_ = make_panel_grid(layout_.panels, layout_.per_panel, Space::momentum, cfg.scale);
    position_ = make_panel_grid(layout_.panels, layout_.per_panel, Space::position, 1.0 / cfg.scale);
    w_ = product_matrix(*momentum_, v_, cfg.parallel);
    vhat_ = sample_hat(*momentum_, v_);
    w0_ = moment_weights(*momentum_, v_);
    k2_ = VectorXd(static_cast<Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) k2_(static_cast<Index>(i)) = momentum_->node(i) * momentum_->node(i);
    SolverConfig scfg = cfg;
    scfg.max_iter = std::max<std::size_t>(cfg.max_iter, 50);
    scattering_ = scattering_solve(v_, momentum_, scfg);
    if (uses_splines(kind)) {
        fitter_ = std::make_unique<SplineFitter>(momentum_, layout_.panels, layout_.degree);
        const std::size_t n = size();
        tensor_.assign(n * n * n, 0.0);
        if (cfg.parallel)
            kernels::bilinear_tensor_omp(*fitter_, layout_.degree + 6, tensor_);
        else
            kernels::bilinear_tensor_serial(*fitter_, layout_.degree + 6, tensor_);
    }
    if (kind == EquationKind::complete) {
        const std::size_t order = cfg.quintuple_order ? cfg.quintuple_order : default_quintuple_order;
        quintuple_ = std::make_unique<QuintupleTerm>(*fitter_, v_, order, cfg.parallel);
    }
}

ProblemPtr make_problem(EquationKind kind, const Potential& v, const SolverConfig& cfg)
{
    return std::make_shared<const Problem>(kind, v, cfg);
}

void Problem::require_tensor(EquationKind kind) const
{
    if (uses_splines(kind) && tensor_.empty())
        throw std::invalid_argument("problem was built for '" + std::string(to_string(kind_)) +
                                    "' and lacks the spline tensor needed by '" + std::string(to_string(kind)) + "'");
    if (kind == EquationKind::complete && !quintuple_)
        throw std::invalid_argument("problem lacks the quintuple term needed by 'complete'");
}

VectorXd Problem::sigma(const State& s) const
{
    VectorXd sig = s.rho * vhat_ - w_ * s.x;
    check_finite(sig, "rho*FT[(1-u)v]");
    return sig;
}

VectorXd Problem::bilinear(const VectorXd& a, const VectorXd& f) const
{
    if (tensor_.empty()) throw std::logic_error("bilinear: no spline tensor");
    VectorXd y(a.size());
    std::span<double> out(y.data(), size());
    if (cfg_.parallel)
        kernels::tensor_apply_omp(tensor_, size(), view(a), view(f), out);
    else
        kernels::tensor_apply_serial(tensor_, size(), view(a), view(f), out);
    return y;
}

Problem::BigParts Problem::big_parts(const VectorXd& x, const VectorXd& sig, double rho) const
{
    BigParts p;
    p.a = x.cwiseProduct(sig);
    p.b = bilinear(x, p.a) / rho;
    check_finite(p.b, "u*(u S)");
    p.c = x.cwiseProduct(x).cwiseProduct(sig) - 2.0 * x.cwiseProduct(p.b);
    p.d = bilinear(x, p.c) / rho;
    check_finite(p.d, "u*(u (u*(u S)))");
    return p;
}

VectorXd Problem::right_side(EquationKind kind, const State& s, const VectorXd& sig) const
{
    const VectorXd& x = s.x;
    switch (kind) {
    case EquationKind::simple:
        return sig + 2.0 * s.e * x.cwiseProduct(x) - 4.0 * s.e * x;
    case EquationKind::medium:
        return sig.cwiseProduct((1.0 - x.array()).square().matrix());
    case EquationKind::bigeq:
    case EquationKind::complete: {
        const BigParts p = big_parts(x, sig, s.rho);
        VectorXd g = sig - 2.0 * p.a + 2.0 * p.b + p.c - p.d;
        if (kind == EquationKind::complete) {
            const VectorXd q = quintuple_->evaluate(x, s.rho);
            check_finite(q, "quintuple integral");
            g += q;
        }
        return g;
    }
    }
    throw std::logic_error("unreachable");
}

VectorXd Problem::residual(EquationKind kind, const State& s, double mu) const
{
    require_tensor(kind);
    if (s.x.size() != static_cast<Index>(size())) throw std::invalid_argument("residual: state size does not match grid");
    if (!(s.rho > 0.0)) throw std::invalid_argument("residual: rho must be positive");
    check_finite(s.x, "state");
    const VectorXd sig = sigma(s);
    const VectorXd g = right_side(kind, s, sig);
    VectorXd f(static_cast<Index>(size()) + 1);
    f.head(static_cast<Index>(size())) = ((k2_.array() + 2.0 * mu) * s.x.array() - g.array()).matrix() / s.rho;
    f(static_cast<Index>(size())) = s.e - 0.5 * (s.rho * v_.l1norm - w0_.dot(s.x));
    check_finite(f, "residual");
    return f;
}

VectorXd Problem::mu_derivative(const State& s) const
{
    VectorXd d = VectorXd::Zero(static_cast<Index>(size()) + 1);
    d.head(static_cast<Index>(size())) = 2.0 * s.x / s.rho;
    return d;
}

Eigen::MatrixXd Problem::sigma_jacobian(EquationKind kind, const State& s, double mu) const
{
    (void)mu;
    require_tensor(kind);
    const Index n = static_cast<Index>(size());
    const VectorXd& x = s.x;
    MatrixXd gs;
    switch (kind) {
    case EquationKind::simple:
        gs = MatrixXd::Identity(n, n);
        break;
    case EquationKind::medium:
        gs = (1.0 - x.array()).square().matrix().asDiagonal();
        break;
    case EquationKind::bigeq: {
        RowMatrix m1(n, n);
        kernels::tensor_contract_middle_omp(tensor_, size(), view(x), {m1.data(), size() * size()});
        const MatrixXd M1 = m1 / s.rho;
        const MatrixXd db = M1 * x.asDiagonal();
        const MatrixXd dc = MatrixXd(x.cwiseProduct(x).asDiagonal()) - 2.0 * x.asDiagonal() * db;
        const MatrixXd dd = M1 * dc;
        gs = MatrixXd::Identity(n, n) - 2.0 * MatrixXd(x.asDiagonal()) + 2.0 * db + dc - dd;
        break;
    }
    case EquationKind::complete:
        throw std::invalid_argument("sigma_jacobian: the quintuple term depends on v beyond sigma");
    }
    return -gs / s.rho;
}

Eigen::MatrixXd Problem::jacobian(EquationKind kind, const State& s, double mu, Parametrization p) const
{
    require_tensor(kind);
    const Index n = static_cast<Index>(size());
    const VectorXd& x = s.x;
    const VectorXd sig = sigma(s);
    const double rho = s.rho;

    MatrixXd gx, gs;
    VectorXd grho = VectorXd::Zero(n), ge = VectorXd::Zero(n);
    switch (kind) {
    case EquationKind::simple:
        gx = (4.0 * s.e * x.array() - 4.0 * s.e).matrix().asDiagonal();
        gs = MatrixXd::Identity(n, n);
        ge = (2.0 * x.array().square() - 4.0 * x.array()).matrix();
        break;
    case EquationKind::medium:
        gx = (-2.0 * sig.array() * (1.0 - x.array())).matrix().asDiagonal();
        gs = (1.0 - x.array()).square().matrix().asDiagonal();
        break;
    case EquationKind::bigeq:
    case EquationKind::complete: {
        const BigParts bp = big_parts(x, sig, rho);
        const std::size_t nn = size() * size();
        RowMatrix m1(n, n), ma(n, n), mc(n, n);
        if (cfg_.parallel) {
            kernels::tensor_contract_middle_omp(tensor_, size(), view(x), {m1.data(), nn});
            kernels::tensor_contract_last_omp(tensor_, size(), view(bp.a), {ma.data(), nn});
            kernels::tensor_contract_last_omp(tensor_, size(), view(bp.c), {mc.data(), nn});
        } else {
            kernels::tensor_contract_middle_serial(tensor_, size(), view(x), {m1.data(), nn});
            kernels::tensor_contract_last_serial(tensor_, size(), view(bp.a), {ma.data(), nn});
            kernels::tensor_contract_last_serial(tensor_, size(), view(bp.c), {mc.data(), nn});
        }
        const MatrixXd M1 = m1 / rho, MA = ma / rho, MC = mc / rho;
        const auto X = x.asDiagonal();
        // partials at fixed sigma of a = x sigma, b = U(a), c = x^2 sigma - 2 x b, d = U(c)
        const MatrixXd da_x = sig.asDiagonal();
        const MatrixXd da_s = X;
        const MatrixXd db_x = MA + M1 * da_x;
        const MatrixXd db_s = M1 * da_s;
        const VectorXd db_r = -bp.b / rho;
        const MatrixXd dc_x = MatrixXd((2.0 * x.cwiseProduct(sig) - 2.0 * bp.b).asDiagonal()) - 2.0 * X * db_x;
        const MatrixXd dc_s = MatrixXd(x.cwiseProduct(x).asDiagonal()) - 2.0 * X * db_s;
        const VectorXd dc_r = -2.0 * x.cwiseProduct(db_r);
        const MatrixXd dd_x = MC + M1 * dc_x;
        const MatrixXd dd_s = M1 * dc_s;
        const VectorXd dd_r = M1 * dc_r - bp.d / rho;
        gx = -2.0 * da_x + 2.0 * db_x + dc_x - dd_x;
        gs = MatrixXd::Identity(n, n) - 2.0 * da_s + 2.0 * db_s + dc_s - dd_s;
        grho = 2.0 * db_r + dc_r - dd_r;
        if (kind == EquationKind::complete) {
            // forward differences of the quintuple term only
            const double h = 1e-6;
            const VectorXd q0 = quintuple_->evaluate(x, rho);
            for (Index m = 0; m < n; ++m) {
                VectorXd xp = x;
                xp(m) += h;
                gx.col(m) += (quintuple_->evaluate(xp, rho) - q0) / h;
            }
            if (p == Parametrization::fixed_e) {
                const double hr = h * rho;
                grho += (quintuple_->evaluate(x, rho + hr) - q0) / hr;
            }
        }
        break;
    }
    }

    // total derivatives through sigma = rho v_hat - W x
    const MatrixXd gx_total = gx - gs * w_;
    const VectorXd grho_total = gs * vhat_ + grho;

    MatrixXd jac(n + 1, n + 1);
    jac.topLeftCorner(n, n) = -gx_total / rho;
    jac.topLeftCorner(n, n).diagonal() += ((k2_.array() + 2.0 * mu) / rho).matrix();
    jac.bottomLeftCorner(1, n) = 0.5 * w0_.transpose();
    if (p == Parametrization::fixed_rho) {
        jac.topRightCorner(n, 1) = -ge / rho;
        jac(n, n) = 1.0;
    } else {
        const VectorXd g = right_side(kind, s, sig);
        const VectorXd f = ((k2_.array() + 2.0 * mu) * x.array() - g.array()).matrix() / rho;
        jac.topRightCorner(n, 1) = -grho_total / rho - f / rho;
        jac(n, n) = -0.5 * v_.l1norm;
    }
    if (!jac.allFinite()) throw NonFiniteError("non-finite value in term 'jacobian'");
    return jac;
}

VectorXd Problem::big_minus_medium(const State& s) const
{
    require_tensor(EquationKind::bigeq);
    const VectorXd sig = sigma(s);
    const BigParts p = big_parts(s.x, sig, s.rho);
    // terms absent from the Medium equation, moved to the left side
    return -(2.0 * p.b - 2.0 * s.x.cwiseProduct(p.b) - p.d) / s.rho;
}

VectorXd Problem::complete_minus_big(const State& s) const
{
    require_tensor(EquationKind::complete);
    return -quintuple_->evaluate(s.x, s.rho) / s.rho;
}

RadialFn position_u(const Problem& p, const Eigen::VectorXd& x, double rho)
{
    std::vector<double> uh(static_cast<std::size_t>(x.size()));
    for (std::size_t i = 0; i < uh.size(); ++i) uh[i] = x(static_cast<Index>(i)) / rho;
    return fourier_inverse(RadialFn(p.momentum(), std::move(uh)), p.position(), p.config().parallel);
}

}  // namespace sa
