#include "sa/radial_fn.hpp"

#include "sa/kernels.hpp"
#include "sa/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sa {
namespace {

constexpr double pi = std::numbers::pi;

void check_finite(std::span<const double> v, const char* what)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw std::domain_error(std::string(what) + ": non-finite value at node " + std::to_string(i));
}

void check_same_grid(const RadialFn& f, const RadialFn& g, const char* what)
{
    if (f.grid_ptr() != g.grid_ptr()) {
        const auto& a = f.grid();
        const auto& b = g.grid();
        if (a.size() != b.size() || a.space() != b.space() || a.scale() != b.scale() ||
            a.panels() != b.panels())
            throw std::invalid_argument(std::string(what) + ": grids differ");
    }
}

RadialFn sine_transform(const RadialFn& f, GridPtr target, double prefactor, bool parallel, double kmax)
{
    const auto& g = f.grid();
    std::vector<double> c(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) c[i] = prefactor * g.weight(i) * g.node(i) * g.node(i) * f[i];
    const auto t = target->nodes();
    const auto n = static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), kmax) - t.begin());
    std::vector<double> out(target->size(), 0.0);
    const std::span<double> head(out.data(), n);
    if (parallel)
        kernels::sine_transform_omp(g.nodes(), c, t.first(n), head);
    else
        kernels::sine_transform_serial(g.nodes(), c, t.first(n), head);
    return RadialFn(std::move(target), std::move(out));
}

}  // namespace

RadialFn::RadialFn(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values))
{
    if (!grid_) throw std::invalid_argument("RadialFn: null grid");
    if (values_.size() != grid_->size()) throw std::invalid_argument("RadialFn: value count does not match grid");
    check_finite(values_, "RadialFn");
}

RadialFn RadialFn::sample(GridPtr grid, const std::function<double(double)>& f)
{
    std::vector<double> v(grid->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid->node(i));
    return RadialFn(std::move(grid), std::move(v));
}

RadialFn RadialFn::zero(GridPtr grid)
{
    const std::size_t n = grid->size();
    return RadialFn(std::move(grid), std::vector<double>(n, 0.0));
}

RadialFn RadialFn::with_interpolant(std::size_t intervals, std::size_t degree) const
{
    RadialFn out = *this;
    out.spline_ = spline_fit(*this, intervals, degree);
    return out;
}

double RadialFn::at(double r) const
{
    if (!spline_) throw std::logic_error("RadialFn::at: no interpolant attached");
    return (*spline_)(r);
}

RadialFn operator*(const RadialFn& f, const RadialFn& g)
{
    check_same_grid(f, g, "product");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] * g[i];
    return RadialFn(f.grid_ptr(), std::move(v));
}

RadialFn operator+(const RadialFn& f, const RadialFn& g)
{
    check_same_grid(f, g, "sum");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] + g[i];
    return RadialFn(f.grid_ptr(), std::move(v));
}

RadialFn operator-(const RadialFn& f, const RadialFn& g)
{
    check_same_grid(f, g, "difference");
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f[i] - g[i];
    return RadialFn(f.grid_ptr(), std::move(v));
}

RadialFn operator*(double a, const RadialFn& f)
{
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * f[i];
    return RadialFn(f.grid_ptr(), std::move(v));
}

double integrate_3d(const RadialFn& f)
{
    const auto& g = f.grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) acc += g.weight(i) * g.node(i) * g.node(i) * f[i];
    const double out = 4.0 * pi * acc;
    if (!std::isfinite(out)) throw std::domain_error("integrate_3d: non-finite result");
    return out;
}

RadialFn fourier_forward(const RadialFn& f, GridPtr momentum, bool parallel)
{
    if (momentum->space() != Space::momentum) throw std::invalid_argument("fourier_forward: target must be a momentum grid");
    const double kmax = band_limit(f.grid());
    return sine_transform(f, std::move(momentum), 4.0 * pi, parallel, kmax);
}

RadialFn fourier_inverse(const RadialFn& g, GridPtr position, bool parallel)
{
    if (position->space() != Space::position) throw std::invalid_argument("fourier_inverse: target must be a position grid");
    return sine_transform(g, std::move(position), 1.0 / (2.0 * pi * pi), parallel,
                          reliable_radius(g.grid()));
}

RadialFn convolve(const RadialFn& f, const RadialFn& g)
{
    check_same_grid(f, g, "convolve");
    const auto& grid = f.grid();
    const Space dual_space = grid.space() == Space::position ? Space::momentum : Space::position;
    // oversampled dual grid; trusted ranges stay those of a same-size dual
    const double trusted = static_cast<double>(grid.size()) / (8.0 * grid.scale());
    GridPtr dual = make_panel_grid(grid.panels(), 3 * grid.per_panel(), dual_space, grid.scale());
    if (grid.space() == Space::position) {
        const RadialFn fh = fourier_forward(f, dual);
        const RadialFn gh = fourier_forward(g, dual);
        return sine_transform(fh * gh, f.grid_ptr(), 1.0 / (2.0 * pi * pi), true, trusted);
    }
    const RadialFn fx = sine_transform(f, dual, 1.0 / (2.0 * pi * pi), true, trusted);
    const RadialFn gx = sine_transform(g, dual, 1.0 / (2.0 * pi * pi), true, trusted);
    const double c = 8.0 * pi * pi * pi;
    return c * fourier_forward(fx * gx, f.grid_ptr());
}

RadialFn convolve_bipolar(const RadialFn& f, const RadialFn& g, std::size_t intervals, std::size_t degree)
{
    check_same_grid(f, g, "convolve_bipolar");
    const auto& grid = f.grid();
    if (intervals == 0) {
        intervals = grid.panels() > 1 ? grid.panels() : std::max<std::size_t>(1, grid.size() / 16);
        degree = std::min<std::size_t>(grid.size() / intervals - 1, 12);
    }
    const ChebSpline gs = spline_fit(g, intervals, degree);
    const GaussRule ref = gauss_legendre(degree + 4);
    const double scale = grid.scale();
    const auto bp = gs.breakpoints();
    // int_lo^hi t g(t) dt, split at spline breakpoints in the compact variable
    auto moment = [&](double lo, double hi) {
        const double s_lo = compact(hi, scale), s_hi = compact(lo, scale);
        double acc = 0.0;
        for (std::size_t q = 0; q + 1 < bp.size(); ++q) {
            const double a = std::max(bp[q], s_lo), b = std::min(bp[q + 1], s_hi);
            if (!(b > a)) continue;
            const double h = 0.5 * (b - a), m = 0.5 * (b + a);
            for (std::size_t p = 0; p < ref.nodes.size(); ++p) {
                const double s = m + h * ref.nodes[p];
                const double t = uncompact(s, scale);
                acc += ref.weights[p] * h * 2.0 * scale / ((1.0 + s) * (1.0 + s)) * t * gs.eval_compact(s);
            }
        }
        return acc;
    };
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.node(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double s = grid.node(j);
            acc += grid.weight(j) * s * f[j] * moment(std::abs(r - s), r + s);
        }
        out[i] = 2.0 * pi * acc / r;
    }
    return RadialFn(f.grid_ptr(), std::move(out));
}

ChebSpline spline_fit(const RadialFn& f, std::size_t intervals, std::size_t degree)
{
    const SplineFitter fitter(f.grid_ptr(), intervals, degree);
    return fitter.fit(f.values());
}

double spline_eval(const ChebSpline& s, double r) { return s(r); }

}  // namespace sa
