#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sa/equations.hpp"
#include "sa/errors.hpp"
#include "sa/observables.hpp"
#include "sa/potential.hpp"
#include "sa/scattering.hpp"

using namespace sa;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// c exp(-p r^2)
struct Gauss {
    double c, p;
};
using GaussSum = std::vector<Gauss>;

GaussSum conv(const GaussSum& a, const GaussSum& b)
{
    GaussSum out;
    for (const auto& x : a)
        for (const auto& y : b)
            out.push_back({x.c * y.c * std::pow(pi / (x.p + y.p), 1.5), x.p * y.p / (x.p + y.p)});
    return out;
}

GaussSum mul(const GaussSum& a, const GaussSum& b)
{
    GaussSum out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back({x.c * y.c, x.p + y.p});
    return out;
}

GaussSum scaled(GaussSum f, double a)
{
    for (auto& t : f) t.c *= a;
    return f;
}

GaussSum operator+(GaussSum a, const GaussSum& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// (1 - u) f
GaussSum damp(const GaussSum& u, const GaussSum& f)
{
    GaussSum out = f;
    for (const auto& t : mul(u, f)) out.push_back({-t.c, t.p});
    return out;
}

double ft(const GaussSum& f, double k)
{
    double acc = 0.0;
    for (const auto& t : f) acc += t.c * std::pow(pi / t.p, 1.5) * std::exp(-k * k / (4.0 * t.p));
    return acc;
}

// x = rho u_hat for u = c exp(-r^2)
Eigen::VectorXd gaussian_state(const Problem& p, double rho, double c)
{
    const auto& k = *p.momentum();
    Eigen::VectorXd x(static_cast<Eigen::Index>(k.size()));
    for (std::size_t i = 0; i < k.size(); ++i) x[static_cast<Eigen::Index>(i)] = rho * ft({{c, 1.0}}, k.node(i));
    return x;
}

const Potential& exp1()
{
    static const Potential v = catalog("exp", 1.0);
    return v;
}

SolverConfig fixed_e()
{
    SolverConfig c;
    c.parametrization = Parametrization::fixed_e;
    return c;
}

double column_error(const Problem& p, EquationKind kind, const State& s, Parametrization par)
{
    const Eigen::MatrixXd j = p.jacobian(kind, s, 0.0, par);
    const auto n = static_cast<Eigen::Index>(p.size());
    double worst = 0.0;
    for (Eigen::Index c = 0; c <= n; ++c) {
        State plus = s, minus = s;
        double h = 1e-6;
        if (c < n) {
            plus.x[c] += h;
            minus.x[c] -= h;
        } else if (par == Parametrization::fixed_rho) {
            h *= s.e;
            plus.e += h;
            minus.e -= h;
        } else {
            h *= s.rho;
            plus.rho += h;
            minus.rho -= h;
        }
        const Eigen::VectorXd fd = (p.residual(kind, plus, 0.0) - p.residual(kind, minus, 0.0)) / (2.0 * h);
        const double scale = std::max(j.col(c).cwiseAbs().maxCoeff(), 1e-300);
        worst = std::max(worst, (fd - j.col(c)).cwiseAbs().maxCoeff() / scale);
    }
    return worst;
}

}  // namespace

TEST_CASE("residual of the empty state is the source term")
{
    const auto p = make_problem(EquationKind::simple, exp1());
    const State s{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p->size())), 0.01, 0.05};
    const Eigen::VectorXd f = p->residual(s, 0.0);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(p->size()); ++i)
        CHECK(std::abs(f[i] + p->vhat()[i]) <= 1e-13 * p->vhat()[i] + 1e-300);
    CHECK(f[static_cast<Eigen::Index>(p->size())] == doctest::Approx(0.05 - 0.005 * 8.0 * pi).epsilon(1e-14));
}

TEST_CASE("non-finite states are rejected with the offending term")
{
    const auto p = make_problem(EquationKind::simple, exp1());
    State s{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p->size())), 0.01, 0.05};
    s.x[3] = std::nan("");
    CHECK_THROWS_AS(p->residual(s, 0.0), NonFiniteError);
}

TEST_CASE("Big minus Medium equals the dropped term on Gaussians")
{
    const auto v = catalog("gauss", 1.0);
    const auto p = make_problem(EquationKind::bigeq, v);
    const double rho = 0.3, c = 0.4;
    const State s{gaussian_state(*p, rho, c), rho, 0.2};

    const GaussSum u{{c, 1.0}};
    const GaussSum vv{{1.0, 1.0}};
    const GaussSum sv = damp(u, vv);
    const GaussSum k = conv(u, sv);
    // Medium also drops the (1 - u) factor in front of -2 rho K + rho^2 u*u*S
    const GaussSum outer = mul(u, scaled(k, -2.0 * rho) + scaled(conv(u, k), rho * rho));
    const GaussSum dropped = outer + scaled(damp(u, conv(u, mul(u, k))), 2.0 * rho * rho);

    const Eigen::VectorXd got = p->big_minus_medium(s);
    const Eigen::VectorXd direct = p->residual(EquationKind::bigeq, s, 0.0) - p->residual(EquationKind::medium, s, 0.0);
    const auto& grid = *p->momentum();
    const double peak = std::abs(ft(dropped, 0.0));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double want = ft(dropped, grid.node(i));
        CHECK(std::abs(got[static_cast<Eigen::Index>(i)] - want) < 1e-7 * peak);
        CHECK(std::abs(direct[static_cast<Eigen::Index>(i)] - got[static_cast<Eigen::Index>(i)]) < 1e-12 * peak);
    }
}

TEST_CASE("Complete minus Big equals the quintuple term on Gaussians")
{
    const auto v = catalog("gauss", 1.0);
    SolverConfig cfg;
    cfg.splines = 8;
    cfg.order = 104;
    const auto p = make_problem(EquationKind::complete, v, cfg);
    const double rho = 0.3, c = 0.4;
    const State s{gaussian_state(*p, rho, c), rho, 0.2};

    // int dy dz u(y) u(z-x) u(z) u(y-x) exp(-g |z-y|^2) = c^4 (pi^2 / (4 (1 + g)))^{3/2} exp(-|x|^2)
    auto j = [&](double g) { return std::pow(c, 4) * std::pow(pi * pi / (4.0 * (1.0 + g)), 1.5); };
    const GaussSum four{{j(1.0) - c * j(2.0), 1.0}};
    const GaussSum term = damp({{c, 1.0}}, four);

    const Eigen::VectorXd got = p->complete_minus_big(s);
    const auto& k = *p->momentum();
    const double peak = 0.5 * rho * rho * ft(term, 0.0);
    for (std::size_t i = 0; i < k.size(); ++i) {
        const double want = -0.5 * rho * rho * ft(term, k.node(i));
        CHECK(std::abs(got[static_cast<Eigen::Index>(i)] - want) < 1e-3 * peak);
    }
}

TEST_CASE("simple_closed_form branch and edge cases")
{
    const auto p = make_problem(EquationKind::simple, exp1());
    const auto& k = p->momentum();
    const double e = 0.3, rho = 0.5;
    std::vector<double> flat(k->size());
    for (std::size_t i = 0; i < k->size(); ++i) {
        const double kap = k->node(i) * k->node(i) / (4.0 * e) + 1.0;
        flat[i] = 2.0 * e / rho * kap * kap;
    }
    const auto root = simple_closed_form(RadialFn(k, flat), e, rho);
    for (std::size_t i = 0; i < k->size(); ++i) {
        const double kap = k->node(i) * k->node(i) / (4.0 * e) + 1.0;
        CHECK(root[i] == doctest::Approx(kap).epsilon(1e-7));
    }
    CHECK(root[0] == doctest::Approx(1.0).epsilon(1e-8));

    const auto zero = simple_closed_form(RadialFn::zero(k), e, rho);
    for (std::size_t i = 0; i < k->size(); ++i) CHECK(zero[i] == 0.0);

    flat[5] *= 1.5;
    CHECK_THROWS_AS(simple_closed_form(RadialFn(k, flat), e, rho), UnphysicalStateError);

    const auto sol = solve(EquationKind::simple, exp1(), 1.0);
    REQUIRE(sol.converged);
    CHECK(sol.x[static_cast<Eigen::Index>(sol.x.size() - 1)] < 1e-3);
}

TEST_CASE("Simple energies")
{
    struct Case {
        double rho, e;
    };
    for (const auto& c : {Case{1e-6, 7.934458318e-6}, Case{0.01, 0.1105504828}, Case{1.0, 12.530442},
                          Case{1e4, 125663.6694}}) {
        const auto sol = solve(EquationKind::simple, exp1(), c.rho);
        REQUIRE(sol.converged);
        CHECK(rel(sol.e_tilde, c.e) < 1e-8);
    }
}

TEST_CASE("Medium and Big energies")
{
    const auto m = solve(EquationKind::medium, exp1(), 0.01);
    REQUIRE(m.converged);
    CHECK(rel(m.e_tilde, 0.1069255388) < 1e-8);
    const auto b = solve(EquationKind::bigeq, exp1(), 0.01);
    REQUIRE(b.converged);
    CHECK(rel(b.e_tilde, 0.1061166637) < 1e-8);
    const auto b1 = solve(EquationKind::bigeq, exp1(), 0.1);
    REQUIRE(b1.converged);
    CHECK(rel(b1.e_tilde, 1.191928563) < 1e-8);
}

TEST_CASE("low and high density limits")
{
    const double a = scattering_solve(exp1(), make_grid(200, Space::momentum)).a;
    const auto lo = solve(EquationKind::simple, exp1(), 1e-6);
    REQUIRE(lo.converged);
    const double r = lo.e_tilde / (2.0 * pi * 1e-6 * a);
    CHECK(r >= 1.0);
    CHECK(r <= 1.01);

    const auto h3 = solve(EquationKind::simple, exp1(), 1e3);
    const auto h4 = solve(EquationKind::simple, exp1(), 1e4);
    REQUIRE(h3.converged);
    REQUIRE(h4.converged);
    const double q3 = h3.e_tilde / (4.0 * pi * 1e3), q4 = h4.e_tilde / (4.0 * pi * 1e4);
    CHECK(q4 >= 0.9);
    CHECK(q4 <= 1.0);
    CHECK(q4 > q3);
}

TEST_CASE("slowly decaying potentials converge at very low density")
{
    for (const char* name : {"yukawa", "well"}) {
        const Potential v = catalog(name, 1.0);
        const double a = scattering_solve(v, make_grid(200, Space::momentum)).a;
        for (double rho : {1e-8, 1e-10}) {
            CAPTURE(name);
            CAPTURE(rho);
            const auto s = solve(EquationKind::simple, v, rho);
            REQUIRE(s.converged);
            CHECK(s.iterations <= 5);
            CHECK(rel(s.e_tilde, 2.0 * pi * rho * a) < 1e-2);
        }
    }
}

TEST_CASE("fixed_e and fixed_rho are inverse")
{
    for (auto kind : {EquationKind::simple, EquationKind::medium}) {
        const auto a = solve(kind, exp1(), 0.1, fixed_e());
        REQUIRE(a.converged);
        CHECK(a.e_tilde == 0.1);
        const auto b = solve(kind, exp1(), a.rho);
        REQUIRE(b.converged);
        CHECK(rel(b.e_tilde, 0.1) < 1e-8);
    }
}

TEST_CASE("Jacobian matches finite differences")
{
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    for (auto kind : {EquationKind::simple, EquationKind::medium, EquationKind::bigeq}) {
        const auto sol = solve(kind, exp1(), 0.01);
        REQUIRE(sol.converged);
        State s = sol.state();
        for (Eigen::Index i = 0; i < s.x.size(); ++i) s.x[i] *= 1.0 + jitter(gen);
        for (auto par : {Parametrization::fixed_rho, Parametrization::fixed_e}) {
            CAPTURE(to_string(kind));
            CAPTURE(to_string(par));
            CHECK(column_error(*sol.problem, kind, sol.state(), par) < 1e-4);
            CHECK(column_error(*sol.problem, kind, s, par) < 1e-4);
        }
    }
}

TEST_CASE("Jacobian linear part")
{
    const auto p = make_problem(EquationKind::simple, exp1());
    const auto n = static_cast<Eigen::Index>(p->size());
    const double rho = 0.01, e = 0.07;
    const State s{Eigen::VectorXd::Zero(n), rho, e};
    const Eigen::MatrixXd j = p->jacobian(s, 0.0, Parametrization::fixed_rho);
    const Eigen::MatrixXd lin = rho * j.topLeftCorner(n, n) - p->product();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double want = p->k2()[i] + 4.0 * e;
        CHECK(std::abs(lin(i, i) - want) <= 1e-12 * want);
        for (Eigen::Index c = 0; c < n; ++c)
            if (c != i) CHECK(std::abs(lin(i, c)) <= 1e-12 * want);
    }
}

TEST_CASE("mu derivative is 2 u_hat")
{
    const auto sol = solve(EquationKind::simple, exp1(), 0.05);
    REQUIRE(sol.converged);
    const auto& p = *sol.problem;
    const State s = sol.state();
    const Eigen::VectorXd d = p.mu_derivative(s);
    const double h = 1e-4;
    const Eigen::VectorXd fd = (p.residual(s, h) - p.residual(s, -h)) / (2.0 * h);
    const auto n = static_cast<Eigen::Index>(p.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        CHECK(d[i] == doctest::Approx(2.0 * s.x[i] / s.rho).epsilon(1e-14));
        CHECK(std::abs(fd[i] - d[i]) < 1e-8 * (1.0 + std::abs(d[i])));
    }
    CHECK(d[n] == 0.0);
}

TEST_CASE("Newton converges quadratically")
{
    for (double rho : {1e-4, 0.01, 1.0}) {
        const auto sol = solve(EquationKind::simple, exp1(), rho);
        REQUIRE(sol.converged);
        const auto& st = sol.step_norms;
        REQUIRE(st.size() >= 2);
        for (std::size_t i = 1; i < st.size(); ++i)
            if (st[i - 1] < 1e-3) CHECK(st[i] < std::max(10.0 * st[i - 1] * st[i - 1], 1e-11));
    }
}

TEST_CASE("Solution invariants for Simple and Medium")
{
    for (auto kind : {EquationKind::simple, EquationKind::medium}) {
        for (double rho : {1e-3, 0.05, 2.0}) {
            const auto sol = solve(kind, exp1(), rho);
            REQUIRE(sol.converged);
            CAPTURE(rho);
            CAPTURE(to_string(kind));
            CHECK(std::abs(normalization(sol) - 1.0) < 1e-8);
            CHECK(rel(energy(sol), sol.e_tilde) < 1e-8);
            CHECK(sol.residual_norm < 1e-9);
            const auto r = probe_radii(sol);
            const auto u = u_at(sol, r);
            const double floor = 1e-3 * u.front();
            for (double ui : u) {
                if (kind == EquationKind::simple || rho < 1.0) CHECK(ui >= -floor);
                CHECK(ui <= 1.0 + floor);
            }
            if (kind == EquationKind::simple) {
                CHECK(sol.e_tilde >= rho / 4.0 * exp1().l1norm);
                CHECK(sol.e_tilde <= rho / 2.0 * exp1().l1norm);
            }
        }
    }
}

TEST_CASE("Medium u dips below zero at high density")
{
    const auto sol = solve(EquationKind::medium, exp1(), 2.0);
    REQUIRE(sol.converged);
    const auto r = probe_radii(sol);
    const auto u = u_at(sol, r);
    const auto it = std::min_element(u.begin(), u.end());
    const double rmin = r[static_cast<std::size_t>(it - u.begin())];
    CHECK(*it < -1e-3 * u.front());
    CHECK(*it == doctest::Approx(-2.97e-4).epsilon(2e-2));
    CHECK(rmin > 2.8);
    CHECK(rmin < 3.5);
}

TEST_CASE("Big is not normalized")
{
    const auto sol = solve(EquationKind::bigeq, exp1(), 0.01);
    REQUIRE(sol.converged);
    const double n = normalization(sol);
    CHECK(n == doctest::Approx(0.911683).epsilon(1e-5));
    SolverConfig fine;
    fine.splines = 10;
    fine.order = 140;
    const auto ref = solve(EquationKind::bigeq, exp1(), 0.01, fine);
    REQUIRE(ref.converged);
    CHECK(std::abs(normalization(ref) - n) < 1e-5);
    CHECK(rel(energy(sol), sol.e_tilde) < 1e-8);
}

TEST_CASE("Simple solution is a fixed point of the closed form")
{
    const auto sol = solve(EquationKind::simple, exp1(), 0.02);
    REQUIRE(sol.converged);
    const auto& p = *sol.problem;
    const Eigen::VectorXd sig = p.sigma(sol.state()) / sol.rho;
    const auto sh = RadialFn(p.momentum(), std::vector<double>(sig.data(), sig.data() + sig.size()));
    const auto cf = simple_closed_form(sh, sol.e_tilde, sol.rho);
    for (std::size_t i = 0; i < cf.size(); ++i) CHECK(std::abs(cf[i] - sol.x[static_cast<Eigen::Index>(i)]) < 1e-8);
}

TEST_CASE("Simple solution obeys the pointwise lower bound")
{
    const auto sol = solve(EquationKind::simple, exp1(), 0.02);
    REQUIRE(sol.converged);
    const auto& p = *sol.problem;
    Eigen::MatrixXd a = p.product();
    a.diagonal() += p.k2() + Eigen::VectorXd::Constant(a.rows(), 4.0 * sol.e_tilde);
    const Eigen::VectorXd w = a.partialPivLu().solve(p.vhat());
    Solution lower = sol;
    lower.x = sol.rho * w;
    const auto r = probe_radii(sol);
    const auto u = u_at(sol, r);
    const auto b = u_at(lower, r);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(u[i] >= b[i] - 1e-8);
}

TEST_CASE("equation family ordering")
{
    for (double rho : {0.01, 0.1, 1.0}) {
        const auto s = solve(EquationKind::simple, exp1(), rho);
        const auto m = solve(EquationKind::medium, exp1(), rho);
        const auto b = solve(EquationKind::bigeq, exp1(), rho);
        REQUIRE(s.converged);
        REQUIRE(m.converged);
        REQUIRE(b.converged);
        CHECK(std::abs(m.e_tilde - b.e_tilde) < std::abs(s.e_tilde - b.e_tilde));
    }
}

TEST_CASE("zero potential")
{
    for (auto kind : {EquationKind::simple, EquationKind::bigeq}) {
        const auto sol = solve(kind, zero_potential(), 0.3);
        CHECK(sol.converged);
        CHECK(sol.iterations == 0);
        CHECK(sol.e_tilde == 0.0);
        for (Eigen::Index i = 0; i < sol.x.size(); ++i) CHECK(sol.x[i] == 0.0);
    }
}

TEST_CASE("scan sweeps")
{
    std::vector<double> rhos(30);
    for (std::size_t i = 0; i < rhos.size(); ++i) rhos[i] = std::pow(10.0, -6.0 + 8.0 * static_cast<double>(i) / 29.0);
    const auto warm = scan(EquationKind::simple, exp1(), rhos);
    REQUIRE(warm.size() == rhos.size());
    for (std::size_t i = 0; i < warm.size(); ++i) {
        CHECK(warm[i].converged);
        CHECK(warm[i].rho == rhos[i]);
        if (i > 0) CHECK(warm[i].e_tilde > warm[i - 1].e_tilde);
    }
    SolverConfig cold;
    cold.warm_start = false;
    const auto c = scan(EquationKind::simple, exp1(), rhos, cold);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(rel(c[i].e_tilde, warm[i].e_tilde) < 1e-9);

    const double one[1] = {0.3};
    const auto single = scan(EquationKind::simple, exp1(), one);
    CHECK(single.at(0).e_tilde == solve(EquationKind::simple, exp1(), 0.3).e_tilde);

    const double bad[2] = {0.3, 0.1};
    CHECK_THROWS_AS(scan(EquationKind::simple, exp1(), bad), std::invalid_argument);
    const double neg[1] = {-1.0};
    CHECK_THROWS_AS(scan(EquationKind::simple, exp1(), neg), std::invalid_argument);
}

TEST_CASE("config validation")
{
    SolverConfig c;
    c.tolerance = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.max_iter = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.splines = 8;
    c.order = 40;
    c.spline_degree = 12;
    CHECK_THROWS(resolve_layout(EquationKind::bigeq, c));
    CHECK(parse_kind("big") == EquationKind::bigeq);
    CHECK(parse_kind("complete") == EquationKind::complete);
    CHECK_THROWS(parse_kind("huge"));
    CHECK(resolve_layout(EquationKind::simple, {}).order() == 200);
    CHECK(resolve_layout(EquationKind::bigeq, {}).order() == 104);
    CHECK(resolve_layout(EquationKind::complete, {}).order() == 24);
}

TEST_CASE("non-convergence is reported")
{
    SolverConfig c;
    c.max_iter = 1;
    const auto sol = solve(EquationKind::simple, exp1(), 0.01, c);
    CHECK_FALSE(sol.converged);
    CHECK(sol.iterations == 1);
    CHECK_FALSE(sol.message.empty());
}
