#pragma once

#include "sa/spline.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

/// Hot loops, each in a serial reference form and an OpenMP form.
/// The two forms run the same arithmetic per output entry, so results are
/// bit-identical regardless of thread count.
namespace sa::kernels {

/// out_j = sum_i c_i sin(k_j r_i) / (k_j r_i)
void sine_transform_serial(std::span<const double> r, std::span<const double> c,
                           std::span<const double> k, std::span<double> out);
void sine_transform_omp(std::span<const double> r, std::span<const double> c,
                        std::span<const double> k, std::span<double> out);

/// Momentum-space product with a known radial kernel:
/// W_ij = w_j q_j [P(k_i + q_j) - P(|k_i - q_j|)] / (4 pi^2 k_i),
/// where P(t) = int_0^t s g(s) ds, so that (W a)_i = FT[g * inv(a)](k_i)
/// with a sampled on the grid (k, w). W is row-major N x N.
void product_matrix_serial(std::span<const double> k, std::span<const double> w,
                           const std::function<double(double)>& primitive, std::span<double> out);
void product_matrix_omp(std::span<const double> k, std::span<const double> w,
                        const std::function<double(double)>& primitive, std::span<double> out);

/// Bilinear momentum product through the spline basis of `fitter`:
/// T_ijl = (w_j q_j / (4 pi^2 k_i)) int_{|k_i-q_j|}^{k_i+q_j} t B_l(t) dt,
/// so sum_jl T_ijl a_j f_l = FT[inv(a) inv(f)](k_i) with f spline-interpolated.
/// Stored dense, index (i*N + j)*N + l.
void bilinear_tensor_serial(const SplineFitter& fitter, std::size_t quad_order, std::span<double> out);
void bilinear_tensor_omp(const SplineFitter& fitter, std::size_t quad_order, std::span<double> out);

/// y_i = sum_jl T_ijl a_j f_l
void tensor_apply_serial(std::span<const double> t, std::size_t n, std::span<const double> a,
                         std::span<const double> f, std::span<double> y);
void tensor_apply_omp(std::span<const double> t, std::size_t n, std::span<const double> a,
                      std::span<const double> f, std::span<double> y);

/// M_ij = sum_l T_ijl f_l  (row-major N x N)
void tensor_contract_last_serial(std::span<const double> t, std::size_t n, std::span<const double> f,
                                 std::span<double> m);
void tensor_contract_last_omp(std::span<const double> t, std::size_t n, std::span<const double> f,
                              std::span<double> m);

/// M_il = sum_j T_ijl a_j  (row-major N x N)
void tensor_contract_middle_serial(std::span<const double> t, std::size_t n, std::span<const double> a,
                                   std::span<double> m);
void tensor_contract_middle_omp(std::span<const double> t, std::size_t n, std::span<const double> a,
                                std::span<double> m);

/// Product rule for the four-fold integral
/// J(x) = int dy dw u(y) u(|y-x|) S(|w|) u(|y+w|) u(|y+w-x|),
/// with x along the z axis. Radial rules carry the r^2 factor already.
struct QuintupleRule {
    std::vector<double> y, wy;          // |y| nodes, weights * |y|^2
    std::vector<double> cy, wcy;        // cos(theta_y)
    std::vector<double> w, ww;          // |w| nodes, weights * |w|^2
    std::vector<double> cw, wcw;        // cos(theta_w) relative to y
    std::vector<double> phi, wphi;      // azimuth of w around y, on [0, pi]
};

/// out_a = J(x_a); u_at_y and s_at_w are u and S tabulated on rule.y and rule.w.
void quintuple_serial(const QuintupleRule& rule, const ChebSpline& u, std::span<const double> u_at_y,
                      std::span<const double> s_at_w, std::span<const double> x, std::span<double> out);
void quintuple_omp(const QuintupleRule& rule, const ChebSpline& u, std::span<const double> u_at_y,
                   std::span<const double> s_at_w, std::span<const double> x, std::span<double> out);

}  // namespace sa::kernels
