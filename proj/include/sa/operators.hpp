#pragma once

#include "sa/grid.hpp"
#include "sa/potential.hpp"

#include <Eigen/Dense>

namespace sa {

/// Matrix W with (W a)_i = FT[v * inv(a)](k_i) for a sampled on the momentum grid.
[[nodiscard]] Eigen::MatrixXd product_matrix(const RadialGrid& momentum, const Potential& v, bool parallel = true);

/// Row w0 with w0 . a = int dx v(x) inv(a)(x).
[[nodiscard]] Eigen::VectorXd moment_weights(const RadialGrid& momentum, const Potential& v);

/// v_hat at the grid nodes.
[[nodiscard]] Eigen::VectorXd sample_hat(const RadialGrid& momentum, const Potential& v);

}  // namespace sa
