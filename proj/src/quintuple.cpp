#include "sa/quintuple.hpp"

#include "sa/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sa {
namespace {

constexpr double pi = std::numbers::pi;

void radial_rule(std::size_t n, double scale, std::vector<double>& r, std::vector<double>& w)
{
    const RadialGrid g(1, n, Space::position, scale);
    r.assign(g.nodes().begin(), g.nodes().end());
    w.resize(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = g.weight(i) * r[i] * r[i];
}

}  // namespace

QuintupleTerm::QuintupleTerm(const SplineFitter& fitter, const Potential& v, std::size_t order, bool parallel)
    : fitter_(fitter), v_(v), parallel_(parallel)
{
    const RadialGrid& g = fitter.grid();
    fine_ = make_panel_grid(g.panels(), 10 * g.per_panel(), Space::momentum, g.scale());
    outer_ = make_panel_grid(g.panels(), g.per_panel(), Space::position, 1.0 / g.scale());

    const std::size_t nr = order + 4, na = order, nphi = std::max<std::size_t>(4, 2 * order / 3);
    radial_rule(nr, 1.0, rule_.y, rule_.wy);
    radial_rule(nr, 1.0, rule_.w, rule_.ww);
    const GaussRule c = gauss_legendre(na);
    rule_.cy = c.nodes;
    rule_.wcy = c.weights;
    // azimuth of y around x is trivial
    for (auto& x : rule_.wcy) x *= 2.0 * pi;
    rule_.cw = c.nodes;
    rule_.wcw = c.weights;
    const GaussRule p = gauss_legendre(nphi, 0.0, pi);
    rule_.phi = p.nodes;
    rule_.wphi = p.weights;
    // the integrand depends on cos(phi) only
    for (auto& x : rule_.wphi) x *= 2.0;
}

ChebSpline QuintupleTerm::position_u(const Eigen::VectorXd& x, double rho) const
{
    const ChebSpline xs = fitter_.fit(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    const RadialGrid& f = *fine_;
    std::vector<double> k(f.size()), c(f.size());
    const RadialGrid& g = fitter_.grid();
    const double kmax = g.node(g.size() - 1);
    for (std::size_t j = 0; j < f.size(); ++j) {
        k[j] = f.node(j);
        // the spline is not trusted past the last node, where x is negligible anyway
        const double xv = k[j] <= kmax ? xs(k[j]) : 0.0;
        c[j] = f.weight(j) * k[j] * k[j] * xv / (2.0 * pi * pi * rho);
    }
    auto sum = [&](double r) {
        std::vector<double> out(1);
        const double rr[1] = {r};
        kernels::sine_transform_serial(k, c, rr, out);
        return out[0];
    };
    // past the reliable radius of the sine sum, continue with the |x|^-4 law
    const double r_rel = reliable_radius(g);
    const double u_rel = sum(r_rel);
    auto u = [&](double r) {
        if (r <= r_rel) return sum(r);
        const double t = r_rel / r;
        return u_rel * t * t * t * t;
    };
    return ChebSpline::from_function(u, 16, 12, 1.0 / fitter_.grid().scale());
}

std::vector<double> QuintupleTerm::four_fold(const ChebSpline& u, std::span<const double> radii) const
{
    std::vector<double> u_at_y(rule_.y.size()), s_at_w(rule_.w.size());
    for (std::size_t a = 0; a < u_at_y.size(); ++a) u_at_y[a] = u(rule_.y[a]);
    for (std::size_t c = 0; c < s_at_w.size(); ++c) s_at_w[c] = (1.0 - u(rule_.w[c])) * v_(rule_.w[c]);
    std::vector<double> out(radii.size());
    if (parallel_)
        kernels::quintuple_omp(rule_, u, u_at_y, s_at_w, radii, out);
    else
        kernels::quintuple_serial(rule_, u, u_at_y, s_at_w, radii, out);
    return out;
}

Eigen::VectorXd QuintupleTerm::evaluate(const Eigen::VectorXd& x, double rho) const
{
    const ChebSpline u = position_u(x, rho);
    const RadialGrid& o = *outer_;
    const std::vector<double> j = four_fold(u, o.nodes());
    std::vector<double> c(o.size());
    for (std::size_t a = 0; a < o.size(); ++a) {
        const double r = o.node(a);
        c[a] = 4.0 * pi * o.weight(a) * r * r * (1.0 - u(r)) * j[a] * 0.5 * rho * rho * rho;
    }
    const RadialGrid& g = fitter_.grid();
    const auto k = g.nodes();
    const auto n = static_cast<std::size_t>(std::upper_bound(k.begin(), k.end(), band_limit(o)) - k.begin());
    Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.size()));
    kernels::sine_transform_serial(o.nodes(), c, k.first(n), std::span<double>(q.data(), n));
    return q;
}

}  // namespace sa
