#pragma once

#include "sa/grid.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sa {

/// Piecewise Chebyshev series in the compactified variable s = (scale-r)/(scale+r).
/// Breakpoints increase from -1 (r = inf) to 1 (r = 0).
class ChebSpline {
public:
    ChebSpline(double scale, std::vector<double> breakpoints, std::size_t degree,
               std::vector<double> coeffs);

    /// Interpolates f at first-kind Chebyshev points of P uniform intervals.
    static ChebSpline from_function(const std::function<double(double)>& f, std::size_t intervals,
                                    std::size_t degree, double scale);

    [[nodiscard]] double operator()(double r) const;
    [[nodiscard]] double eval_compact(double s) const;

    [[nodiscard]] std::size_t intervals() const { return breakpoints_.size() - 1; }
    [[nodiscard]] std::size_t degree() const { return degree_; }
    [[nodiscard]] double scale() const { return scale_; }
    [[nodiscard]] std::span<const double> breakpoints() const { return breakpoints_; }
    [[nodiscard]] std::span<const double> coeffs() const { return coeffs_; }

    [[nodiscard]] std::size_t interval_of(double s) const;
    /// Local coordinate in [-1, 1] of s inside interval q.
    [[nodiscard]] double local(std::size_t q, double s) const;

private:
    double scale_;
    std::vector<double> breakpoints_;
    std::size_t degree_;
    std::vector<double> coeffs_;  // interval-major, degree+1 per interval
};

/// Sum_{d<=D} c_d T_d(x).
[[nodiscard]] double clenshaw(std::span<const double> c, double x);
/// T_0(x) .. T_D(x).
void chebyshev_values(double x, std::span<double> out);

/// Least-squares piecewise Chebyshev fit of node values on a fixed grid.
/// The map from node values to the spline is linear and precomputed.
class SplineFitter {
public:
    SplineFitter(GridPtr grid, std::size_t intervals, std::size_t degree);

    [[nodiscard]] ChebSpline fit(std::span<const double> values) const;

    /// Node range and weights with spline(r) = sum_j w_j values[first + j].
    struct Basis {
        std::size_t first;
        std::vector<double> weights;
    };
    [[nodiscard]] Basis basis(double r) const;
    /// Same as basis() but writes into caller storage; returns first.
    std::size_t basis_into(double s, std::span<double> weights) const;

    [[nodiscard]] const RadialGrid& grid() const { return *grid_; }
    [[nodiscard]] std::size_t intervals() const { return breakpoints_.size() - 1; }
    [[nodiscard]] std::size_t degree() const { return degree_; }
    [[nodiscard]] std::span<const double> breakpoints() const { return breakpoints_; }
    [[nodiscard]] std::size_t first_node(std::size_t q) const { return first_[q]; }
    [[nodiscard]] std::size_t node_count(std::size_t q) const { return count_[q]; }
    [[nodiscard]] std::size_t max_node_count() const;

private:
    GridPtr grid_;
    std::vector<double> breakpoints_;
    std::size_t degree_;
    std::vector<std::size_t> first_;
    std::vector<std::size_t> count_;
    std::vector<Eigen::MatrixXd> fit_;  // (D+1) x count per interval
};

}  // namespace sa
