#pragma once

#include "sa/config.hpp"
#include "sa/potential.hpp"
#include "sa/quintuple.hpp"
#include "sa/radial_fn.hpp"
#include "sa/scattering.hpp"
#include "sa/spline.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sa {

/// Unknowns: x = rho * u_hat at the momentum nodes, plus rho and e_tilde
/// (one of them fixed by the parametrization).
struct State {
    Eigen::VectorXd x;
    double rho = 0.0;
    double e = 0.0;
};

/// Discretized operators shared by all solves of one kind on one grid.
/// Immutable after construction; safe to share across threads.
class Problem {
public:
    Problem(EquationKind kind, Potential v, const SolverConfig& cfg);

    [[nodiscard]] EquationKind kind() const { return kind_; }
    [[nodiscard]] const Potential& potential() const { return v_; }
    [[nodiscard]] const SolverConfig& config() const { return cfg_; }
    [[nodiscard]] const Layout& layout() const { return layout_; }
    [[nodiscard]] std::size_t size() const { return momentum_->size(); }
    [[nodiscard]] const GridPtr& momentum() const { return momentum_; }
    [[nodiscard]] const GridPtr& position() const { return position_; }
    [[nodiscard]] const Eigen::MatrixXd& product() const { return w_; }
    [[nodiscard]] const Eigen::VectorXd& vhat() const { return vhat_; }
    [[nodiscard]] const Eigen::VectorXd& moment() const { return w0_; }
    [[nodiscard]] const Eigen::VectorXd& k2() const { return k2_; }
    [[nodiscard]] const ScatteringData& scattering() const { return *scattering_; }
    [[nodiscard]] const SplineFitter* fitter() const { return fitter_.get(); }
    [[nodiscard]] std::span<const double> tensor() const { return tensor_; }
    [[nodiscard]] const QuintupleTerm* quintuple() const { return quintuple_.get(); }

    /// sigma = rho * FT[(1-u) v] at the nodes.
    [[nodiscard]] Eigen::VectorXd sigma(const State& s) const;

    /// N grid rows (k^2 + 2 mu) u_hat - [right side], then e - (rho/2) int (1-u) v.
    [[nodiscard]] Eigen::VectorXd residual(EquationKind kind, const State& s, double mu) const;
    [[nodiscard]] Eigen::VectorXd residual(const State& s, double mu) const { return residual(kind_, s, mu); }

    /// Derivative of residual() in (x, free scalar).
    [[nodiscard]] Eigen::MatrixXd jacobian(EquationKind kind, const State& s, double mu, Parametrization p) const;
    [[nodiscard]] Eigen::MatrixXd jacobian(const State& s, double mu, Parametrization p) const
    {
        return jacobian(kind_, s, mu, p);
    }

    /// Partial derivative of the grid rows in sigma at fixed (x, rho, e); N x N.
    [[nodiscard]] Eigen::MatrixXd sigma_jacobian(EquationKind kind, const State& s, double mu) const;

    /// Partial derivative of residual() in mu.
    [[nodiscard]] Eigen::VectorXd mu_derivative(const State& s) const;

    /// Bilinear spline product: FT[inv(a) inv(f)] at the nodes.
    [[nodiscard]] Eigen::VectorXd bilinear(const Eigen::VectorXd& a, const Eigen::VectorXd& f) const;

    /// Grid rows of the Big equation minus those of the Medium equation (public scaling).
    [[nodiscard]] Eigen::VectorXd big_minus_medium(const State& s) const;
    /// Grid rows of the Complete equation minus those of the Big equation (public scaling).
    [[nodiscard]] Eigen::VectorXd complete_minus_big(const State& s) const;

private:
    struct BigParts {
        Eigen::VectorXd a, b, c, d;
    };
    [[nodiscard]] BigParts big_parts(const Eigen::VectorXd& x, const Eigen::VectorXd& sig, double rho) const;
    [[nodiscard]] Eigen::VectorXd right_side(EquationKind kind, const State& s, const Eigen::VectorXd& sig) const;
    void require_tensor(EquationKind kind) const;

    EquationKind kind_;
    Potential v_;
    SolverConfig cfg_;
    Layout layout_;
    GridPtr momentum_;
    GridPtr position_;
    Eigen::MatrixXd w_;
    Eigen::VectorXd vhat_, w0_, k2_;
    std::optional<ScatteringData> scattering_;
    std::unique_ptr<SplineFitter> fitter_;
    std::vector<double> tensor_;
    std::unique_ptr<QuintupleTerm> quintuple_;
};

using ProblemPtr = std::shared_ptr<const Problem>;

[[nodiscard]] ProblemPtr make_problem(EquationKind kind, const Potential& v, const SolverConfig& cfg = {});

struct Solution {
    EquationKind kind = EquationKind::simple;
    double rho = 0.0;
    double e_tilde = 0.0;
    double mu = 0.0;
    std::optional<RadialFn> u_hat;  // momentum grid
    std::optional<RadialFn> u;      // position grid
    bool converged = false;
    std::size_t iterations = 0;
    double residual_norm = 0.0;
    std::vector<double> step_norms;
    std::string message;
    ProblemPtr problem;
    Eigen::VectorXd x;

    [[nodiscard]] State state() const { return {x, rho, e_tilde}; }
};

/// rho u_hat = kappa^2 + 1 - sqrt((kappa^2 + 1)^2 - rho S_hat / (2 e)), kappa^2 = k^2 / (4 e).
/// `mu` shifts k^2 to k^2 + 2 mu.
[[nodiscard]] RadialFn simple_closed_form(const RadialFn& s_hat, double e, double rho, double mu = 0.0);

/// `value` is rho or e_tilde depending on cfg.parametrization.
[[nodiscard]] Solution solve(EquationKind kind, const Potential& v, double value, const SolverConfig& cfg = {});
[[nodiscard]] Solution solve(const ProblemPtr& problem, double value, const SolverConfig& cfg,
                             const State* init = nullptr);

/// Newton from a given state; the free scalar is picked by cfg.parametrization.
[[nodiscard]] Solution newton(const ProblemPtr& problem, EquationKind kind, State init, const SolverConfig& cfg);

/// Sweep over increasing values; warm-started sequentially or cold-started in parallel.
[[nodiscard]] std::vector<Solution> scan(EquationKind kind, const Potential& v, std::span<const double> values,
                                         const SolverConfig& cfg = {});
[[nodiscard]] std::vector<Solution> scan(const ProblemPtr& problem, std::span<const double> values,
                                         const SolverConfig& cfg);

/// u in position space from x = rho u_hat.
[[nodiscard]] RadialFn position_u(const Problem& p, const Eigen::VectorXd& x, double rho);

}  // namespace sa
