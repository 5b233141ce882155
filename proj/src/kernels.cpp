#include "sa/kernels.hpp"

#include "sa/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sa::kernels {
namespace {

constexpr double four_pi2 = 4.0 * std::numbers::pi * std::numbers::pi;

inline double sinc(double x)
{
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

inline void sine_row(std::span<const double> r, std::span<const double> c, double k, double& out)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) acc += c[i] * sinc(k * r[i]);
    out = acc;
}

inline void product_row(std::size_t i, std::span<const double> k, std::span<const double> w,
                        const std::function<double(double)>& primitive, std::span<double> out)
{
    const std::size_t n = k.size();
    const double ki = k[i];
    for (std::size_t j = 0; j < n; ++j) {
        const double q = k[j];
        out[i * n + j] = w[j] * q * (primitive(ki + q) - primitive(std::abs(ki - q))) / (four_pi2 * ki);
    }
}

// int_lo^hi t B_l(t) dt for every basis function l, accumulated into row (scaled by f)
void basis_moment(const SplineFitter& fitter, const GaussRule& ref, double lo, double hi, double factor,
                  std::span<double> row, std::span<double> scratch)
{
    const RadialGrid& g = fitter.grid();
    const double scale = g.scale();
    const double s_lo = compact(hi, scale), s_hi = compact(lo, scale);
    const auto bp = fitter.breakpoints();
    for (std::size_t q = 0; q + 1 < bp.size(); ++q) {
        const double a = std::max(bp[q], s_lo), b = std::min(bp[q + 1], s_hi);
        if (!(b > a)) continue;
        const double h = 0.5 * (b - a), m = 0.5 * (b + a);
        for (std::size_t p = 0; p < ref.nodes.size(); ++p) {
            const double s = m + h * ref.nodes[p];
            const double t = uncompact(s, scale);
            const double dt = ref.weights[p] * h * 2.0 * scale / ((1.0 + s) * (1.0 + s));
            const std::size_t first = fitter.basis_into(s, scratch);
            const std::size_t cnt = fitter.node_count(q);
            const double c = factor * t * dt;
            for (std::size_t l = 0; l < cnt; ++l) row[first + l] += c * scratch[l];
        }
    }
}

void tensor_row(const SplineFitter& fitter, const GaussRule& ref, std::size_t i, std::span<double> out)
{
    const RadialGrid& g = fitter.grid();
    const std::size_t n = g.size();
    std::vector<double> scratch(fitter.max_node_count());
    const double ki = g.node(i);
    for (std::size_t j = 0; j < n; ++j) {
        const double q = g.node(j);
        const double factor = g.weight(j) * q / (four_pi2 * ki);
        basis_moment(fitter, ref, std::abs(ki - q), ki + q, factor, out.subspan((i * n + j) * n, n), scratch);
    }
}

inline double apply_row(std::span<const double> t, std::size_t n, std::size_t i, std::span<const double> a,
                        std::span<const double> f)
{
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[j] == 0.0) continue;
        const double* tj = t.data() + (i * n + j) * n;
        double inner = 0.0;
        for (std::size_t l = 0; l < n; ++l) inner += tj[l] * f[l];
        acc += a[j] * inner;
    }
    return acc;
}

inline void contract_last_row(std::span<const double> t, std::size_t n, std::size_t i, std::span<const double> f,
                              std::span<double> m)
{
    for (std::size_t j = 0; j < n; ++j) {
        const double* tj = t.data() + (i * n + j) * n;
        double inner = 0.0;
        for (std::size_t l = 0; l < n; ++l) inner += tj[l] * f[l];
        m[i * n + j] = inner;
    }
}

inline void contract_middle_row(std::span<const double> t, std::size_t n, std::size_t i,
                                std::span<const double> a, std::span<double> m)
{
    double* row = m.data() + i * n;
    std::fill(row, row + n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double aj = a[j];
        const double* tj = t.data() + (i * n + j) * n;
        for (std::size_t l = 0; l < n; ++l) row[l] += aj * tj[l];
    }
}

double quintuple_point(const QuintupleRule& rule, const ChebSpline& u, std::span<const double> u_at_y,
                       std::span<const double> s_at_w, std::span<const double> u_yw, double x)
{
    const std::size_t ny = rule.y.size(), nc = rule.cy.size(), nw = rule.w.size(), ncw = rule.cw.size(),
                      nphi = rule.phi.size();
    std::vector<double> cosphi(nphi);
    for (std::size_t p = 0; p < nphi; ++p) cosphi[p] = std::cos(rule.phi[p]);
    double total = 0.0;
    for (std::size_t a = 0; a < ny; ++a) {
        const double y = rule.y[a];
        if (u_at_y[a] == 0.0) continue;
        for (std::size_t b = 0; b < nc; ++b) {
            const double cy = rule.cy[b];
            const double sy = std::sqrt(std::max(0.0, 1.0 - cy * cy));
            const double d_yx = std::sqrt(std::max(0.0, y * y + x * x - 2.0 * x * y * cy));
            const double outer = rule.wy[a] * rule.wcy[b] * u_at_y[a] * u(d_yx);
            if (outer == 0.0) continue;
            double inner = 0.0;
            for (std::size_t c = 0; c < nw; ++c) {
                const double r = rule.w[c];
                const double sw_weight = rule.ww[c] * s_at_w[c];
                if (sw_weight == 0.0) continue;
                for (std::size_t d = 0; d < ncw; ++d) {
                    const double cw = rule.cw[d];
                    const double sw = std::sqrt(std::max(0.0, 1.0 - cw * cw));
                    const double uyw = u_yw[(a * nw + c) * ncw + d];
                    const double yw2 = y * y + r * r + 2.0 * y * r * cw;
                    const double z0 = y * cy + r * cw * cy;
                    const double z1 = r * sw * sy;
                    double acc = 0.0;
                    for (std::size_t p = 0; p < nphi; ++p) {
                        const double zc = z0 - z1 * cosphi[p];
                        const double d2 = yw2 + x * x - 2.0 * x * zc;
                        acc += rule.wphi[p] * u(std::sqrt(std::max(0.0, d2)));
                    }
                    inner += sw_weight * rule.wcw[d] * uyw * acc;
                }
            }
            total += outer * inner;
        }
    }
    return total;
}

std::vector<double> quintuple_table(const QuintupleRule& rule, const ChebSpline& u)
{
    const std::size_t ny = rule.y.size(), nw = rule.w.size(), ncw = rule.cw.size();
    std::vector<double> t(ny * nw * ncw);
    for (std::size_t a = 0; a < ny; ++a)
        for (std::size_t c = 0; c < nw; ++c)
            for (std::size_t d = 0; d < ncw; ++d) {
                const double y = rule.y[a], r = rule.w[c];
                t[(a * nw + c) * ncw + d] = u(std::sqrt(std::max(0.0, y * y + r * r + 2.0 * y * r * rule.cw[d])));
            }
    return t;
}

}  // namespace

void sine_transform_serial(std::span<const double> r, std::span<const double> c, std::span<const double> k,
                           std::span<double> out)
{
    for (std::size_t j = 0; j < k.size(); ++j) sine_row(r, c, k[j], out[j]);
}

void sine_transform_omp(std::span<const double> r, std::span<const double> c, std::span<const double> k,
                        std::span<double> out)
{
    const auto n = static_cast<std::ptrdiff_t>(k.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) sine_row(r, c, k[j], out[j]);
}

void product_matrix_serial(std::span<const double> k, std::span<const double> w,
                           const std::function<double(double)>& primitive, std::span<double> out)
{
    for (std::size_t i = 0; i < k.size(); ++i) product_row(i, k, w, primitive, out);
}

void product_matrix_omp(std::span<const double> k, std::span<const double> w,
                        const std::function<double(double)>& primitive, std::span<double> out)
{
    const auto n = static_cast<std::ptrdiff_t>(k.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) product_row(static_cast<std::size_t>(i), k, w, primitive, out);
}

void bilinear_tensor_serial(const SplineFitter& fitter, std::size_t quad_order, std::span<double> out)
{
    const std::size_t n = fitter.grid().size();
    std::fill(out.begin(), out.end(), 0.0);
    const GaussRule ref = gauss_legendre(quad_order);
    for (std::size_t i = 0; i < n; ++i) tensor_row(fitter, ref, i, out);
}

void bilinear_tensor_omp(const SplineFitter& fitter, std::size_t quad_order, std::span<double> out)
{
    const auto n = static_cast<std::ptrdiff_t>(fitter.grid().size());
    std::fill(out.begin(), out.end(), 0.0);
    const GaussRule ref = gauss_legendre(quad_order);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) tensor_row(fitter, ref, static_cast<std::size_t>(i), out);
}

void tensor_apply_serial(std::span<const double> t, std::size_t n, std::span<const double> a,
                         std::span<const double> f, std::span<double> y)
{
    for (std::size_t i = 0; i < n; ++i) y[i] = apply_row(t, n, i, a, f);
}

void tensor_apply_omp(std::span<const double> t, std::size_t n, std::span<const double> a,
                      std::span<const double> f, std::span<double> y)
{
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nn; ++i) y[i] = apply_row(t, n, static_cast<std::size_t>(i), a, f);
}

void tensor_contract_last_serial(std::span<const double> t, std::size_t n, std::span<const double> f,
                                 std::span<double> m)
{
    for (std::size_t i = 0; i < n; ++i) contract_last_row(t, n, i, f, m);
}

void tensor_contract_last_omp(std::span<const double> t, std::size_t n, std::span<const double> f,
                              std::span<double> m)
{
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nn; ++i) contract_last_row(t, n, static_cast<std::size_t>(i), f, m);
}

void tensor_contract_middle_serial(std::span<const double> t, std::size_t n, std::span<const double> a,
                                   std::span<double> m)
{
    for (std::size_t i = 0; i < n; ++i) contract_middle_row(t, n, i, a, m);
}

void tensor_contract_middle_omp(std::span<const double> t, std::size_t n, std::span<const double> a,
                                std::span<double> m)
{
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nn; ++i) contract_middle_row(t, n, static_cast<std::size_t>(i), a, m);
}

void quintuple_serial(const QuintupleRule& rule, const ChebSpline& u, std::span<const double> u_at_y,
                      std::span<const double> s_at_w, std::span<const double> x, std::span<double> out)
{
    const auto table = quintuple_table(rule, u);
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = quintuple_point(rule, u, u_at_y, s_at_w, table, x[i]);
}

void quintuple_omp(const QuintupleRule& rule, const ChebSpline& u, std::span<const double> u_at_y,
                   std::span<const double> s_at_w, std::span<const double> x, std::span<double> out)
{
    const auto table = quintuple_table(rule, u);
    const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = quintuple_point(rule, u, u_at_y, s_at_w, table, x[i]);
}

}  // namespace sa::kernels
