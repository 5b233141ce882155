#include "sa/operators.hpp"

#include "sa/kernels.hpp"

#include <numbers>
#include <stdexcept>

namespace sa {

Eigen::MatrixXd product_matrix(const RadialGrid& momentum, const Potential& v, bool parallel)
{
    if (momentum.space() != Space::momentum) throw std::invalid_argument("product_matrix: momentum grid required");
    const auto n = static_cast<Eigen::Index>(momentum.size());
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> w(n, n);
    std::span<double> out(w.data(), static_cast<std::size_t>(n * n));
    if (parallel)
        kernels::product_matrix_omp(momentum.nodes(), momentum.weights(), v.primitive, out);
    else
        kernels::product_matrix_serial(momentum.nodes(), momentum.weights(), v.primitive, out);
    return w;
}

Eigen::VectorXd moment_weights(const RadialGrid& momentum, const Potential& v)
{
    const auto n = static_cast<Eigen::Index>(momentum.size());
    Eigen::VectorXd w0(n);
    const double c = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
    for (Eigen::Index j = 0; j < n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const double q = momentum.node(ju);
        w0(j) = c * momentum.weight(ju) * q * q * v.hat(q);
    }
    return w0;
}

Eigen::VectorXd sample_hat(const RadialGrid& momentum, const Potential& v)
{
    const auto n = static_cast<Eigen::Index>(momentum.size());
    Eigen::VectorXd h(n);
    for (Eigen::Index j = 0; j < n; ++j) h(j) = v.hat(momentum.node(static_cast<std::size_t>(j)));
    return h;
}

}  // namespace sa
