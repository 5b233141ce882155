#include "sa/spline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sa {
namespace {

std::vector<double> uniform_breakpoints(std::size_t intervals)
{
    std::vector<double> b(intervals + 1);
    for (std::size_t q = 0; q <= intervals; ++q)
        b[q] = -1.0 + 2.0 * static_cast<double>(q) / static_cast<double>(intervals);
    b.back() = 1.0;
    return b;
}

double to_s(double r, double scale)
{
    if (std::isnan(r) || r < 0.0) throw std::domain_error("spline: radius must lie in [0, inf)");
    if (std::isinf(r)) return -1.0;
    return compact(r, scale);
}

}  // namespace

double clenshaw(std::span<const double> c, double x)
{
    double b1 = 0.0, b2 = 0.0;
    const double x2 = 2.0 * x;
    for (std::size_t d = c.size(); d-- > 1;) {
        const double b0 = c[d] + x2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + x * b1 - b2;
}

void chebyshev_values(double x, std::span<double> out)
{
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() > 1) out[1] = x;
    for (std::size_t d = 2; d < out.size(); ++d) out[d] = 2.0 * x * out[d - 1] - out[d - 2];
}

ChebSpline::ChebSpline(double scale, std::vector<double> breakpoints, std::size_t degree,
                       std::vector<double> coeffs)
    : scale_(scale), breakpoints_(std::move(breakpoints)), degree_(degree), coeffs_(std::move(coeffs))
{
    if (!(scale_ > 0.0)) throw std::invalid_argument("ChebSpline: scale must be positive");
    if (breakpoints_.size() < 2) throw std::invalid_argument("ChebSpline: need at least one interval");
    if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()))
        throw std::invalid_argument("ChebSpline: breakpoints must increase");
    if (coeffs_.size() != intervals() * (degree_ + 1))
        throw std::invalid_argument("ChebSpline: coefficient count does not match intervals*(degree+1)");
}

ChebSpline ChebSpline::from_function(const std::function<double(double)>& f, std::size_t intervals,
                                     std::size_t degree, double scale)
{
    if (intervals == 0 || degree == 0) throw std::invalid_argument("ChebSpline: P and D must be at least 1");
    auto b = uniform_breakpoints(intervals);
    const std::size_t m = degree + 1;
    std::vector<double> coeffs(intervals * m, 0.0);
    std::vector<double> fx(m);
    for (std::size_t q = 0; q < intervals; ++q) {
        const double lo = b[q], hi = b[q + 1];
        for (std::size_t j = 0; j < m; ++j) {
            const double x = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(m));
            const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
            fx[j] = f(uncompact(s, scale));
        }
        for (std::size_t d = 0; d < m; ++d) {
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                acc += fx[j] * std::cos(std::numbers::pi * static_cast<double>(d) * (static_cast<double>(j) + 0.5) /
                                        static_cast<double>(m));
            coeffs[q * m + d] = acc * (d == 0 ? 1.0 : 2.0) / static_cast<double>(m);
        }
    }
    return ChebSpline(scale, std::move(b), degree, std::move(coeffs));
}

std::size_t ChebSpline::interval_of(double s) const
{
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s);
    const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
    return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, intervals() - 1);
}

double ChebSpline::local(std::size_t q, double s) const
{
    const double lo = breakpoints_[q], hi = breakpoints_[q + 1];
    return (2.0 * s - lo - hi) / (hi - lo);
}

double ChebSpline::eval_compact(double s) const
{
    const std::size_t q = interval_of(s);
    const std::span<const double> c(coeffs_.data() + q * (degree_ + 1), degree_ + 1);
    return clenshaw(c, local(q, s));
}

double ChebSpline::operator()(double r) const { return eval_compact(to_s(r, scale_)); }

SplineFitter::SplineFitter(GridPtr grid, std::size_t intervals, std::size_t degree)
    : grid_(std::move(grid)), breakpoints_(uniform_breakpoints(intervals)), degree_(degree)
{
    if (intervals == 0 || degree == 0) throw std::invalid_argument("SplineFitter: P and D must be at least 1");
    if (degree > 63) throw std::invalid_argument("SplineFitter: degree above 63 is not supported");
    const std::size_t n = grid_->size();
    first_.assign(intervals, 0);
    count_.assign(intervals, 0);
    fit_.resize(intervals);
    // nodes ascend in r, so s descends: interval q collects a contiguous block
    for (std::size_t q = 0; q < intervals; ++q) {
        const double lo = breakpoints_[q], hi = breakpoints_[q + 1];
        std::size_t first = n, count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = grid_->to_compact(grid_->node(i));
            if (s >= lo && s < hi) {
                first = std::min(first, i);
                ++count;
            }
        }
        if (count < degree + 1)
            throw std::invalid_argument("SplineFitter: interval " + std::to_string(q) + " holds " +
                                        std::to_string(count) + " nodes, degree " + std::to_string(degree) +
                                        " needs " + std::to_string(degree + 1));
        first_[q] = first;
        count_[q] = count;
        Eigen::MatrixXd v(count, degree + 1);
        std::vector<double> t(degree + 1);
        for (std::size_t j = 0; j < count; ++j) {
            const double s = grid_->to_compact(grid_->node(first + j));
            chebyshev_values((2.0 * s - lo - hi) / (hi - lo), t);
            for (std::size_t d = 0; d <= degree; ++d) v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(d)) = t[d];
        }
        fit_[q] = v.completeOrthogonalDecomposition().pseudoInverse();
    }
}

std::size_t SplineFitter::max_node_count() const
{
    return *std::max_element(count_.begin(), count_.end());
}

ChebSpline SplineFitter::fit(std::span<const double> values) const
{
    if (values.size() != grid_->size()) throw std::invalid_argument("SplineFitter: value count does not match grid");
    const std::size_t m = degree_ + 1;
    std::vector<double> coeffs(intervals() * m, 0.0);
    for (std::size_t q = 0; q < intervals(); ++q) {
        const auto& a = fit_[q];
        for (std::size_t d = 0; d < m; ++d) {
            double acc = 0.0;
            for (std::size_t j = 0; j < count_[q]; ++j)
                acc += a(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(j)) * values[first_[q] + j];
            coeffs[q * m + d] = acc;
        }
    }
    return ChebSpline(grid_->scale(), breakpoints_, degree_, std::move(coeffs));
}

std::size_t SplineFitter::basis_into(double s, std::span<double> weights) const
{
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s);
    auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
    const std::size_t q = std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, intervals() - 1);
    const double lo = breakpoints_[q], hi = breakpoints_[q + 1];
    double t[64];
    const std::size_t m = degree_ + 1;
    chebyshev_values((2.0 * s - lo - hi) / (hi - lo), std::span<double>(t, m));
    const auto& a = fit_[q];
    std::fill(weights.begin(), weights.end(), 0.0);
    for (std::size_t j = 0; j < count_[q]; ++j) {
        double acc = 0.0;
        for (std::size_t d = 0; d < m; ++d) acc += t[d] * a(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(j));
        weights[j] = acc;
    }
    return first_[q];
}

SplineFitter::Basis SplineFitter::basis(double r) const
{
    Basis b;
    b.weights.assign(max_node_count(), 0.0);
    b.first = basis_into(to_s(r, grid_->scale()), b.weights);
    const std::size_t q = std::find(first_.begin(), first_.end(), b.first) - first_.begin();
    b.weights.resize(count_[q]);
    return b;
}

}  // namespace sa
