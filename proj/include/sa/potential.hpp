#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sa {

/// Radial pair interaction with its Fourier transform and norms.
struct Potential {
    std::string name;
    double coupling = 0.0;
    std::function<double(double)> profile;    // r -> v(r)
    std::function<double(double)> hat;        // k -> v_hat(k)
    std::function<double(double)> primitive;  // t -> int_0^t s v_hat(s) ds
    double l1norm = 0.0;
    double l2norm = 0.0;
    double second_moment = 0.0;
    bool positive_type = false;

    [[nodiscard]] double operator()(double r) const { return profile(r); }
    [[nodiscard]] bool is_zero() const { return l1norm == 0.0; }
};

[[nodiscard]] const std::vector<std::string>& catalog_names();

/// Built-in shapes: exp, gauss, yukawa, well.
[[nodiscard]] Potential catalog(std::string_view name, double coupling);

[[nodiscard]] Potential zero_potential();

/// Piecewise-linear potential from (r, v) samples, zero beyond the last radius.
[[nodiscard]] Potential tabulated_potential(std::string name, std::vector<double> r, std::vector<double> v);

/// Two whitespace-separated columns `r v`, increasing r, '#' comments.
[[nodiscard]] Potential load_potential(const std::filesystem::path& path);

}  // namespace sa
