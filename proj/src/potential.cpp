#include "sa/potential.hpp"

#include "sa/errors.hpp"
#include "sa/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace sa {
namespace {

constexpr double pi = std::numbers::pi;

void check_coupling(double a)
{
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("potential: coupling must be positive");
}

Potential make_exp(double a)
{
    Potential p;
    p.name = "exp";
    p.coupling = a;
    p.profile = [a](double r) { return a * std::exp(-r); };
    p.hat = [a](double k) { const double d = 1.0 + k * k; return 8.0 * pi * a / (d * d); };
    p.primitive = [a](double t) { const double t2 = t * t; return 4.0 * pi * a * t2 / (1.0 + t2); };
    p.l1norm = 8.0 * pi * a;
    p.l2norm = a * std::sqrt(pi);
    p.second_moment = 96.0 * pi * a;
    p.positive_type = true;
    return p;
}

Potential make_gauss(double a)
{
    const double c = a * std::pow(pi, 1.5);
    Potential p;
    p.name = "gauss";
    p.coupling = a;
    p.profile = [a](double r) { return a * std::exp(-r * r); };
    p.hat = [c](double k) { return c * std::exp(-0.25 * k * k); };
    p.primitive = [c](double t) { return -2.0 * c * std::expm1(-0.25 * t * t); };
    p.l1norm = c;
    p.l2norm = a * std::pow(0.5 * pi, 0.75);
    p.second_moment = 1.5 * c;
    p.positive_type = true;
    return p;
}

Potential make_yukawa(double a)
{
    Potential p;
    p.name = "yukawa";
    p.coupling = a;
    p.profile = [a](double r) { return a * std::exp(-r) / r; };
    p.hat = [a](double k) { return 4.0 * pi * a / (1.0 + k * k); };
    p.primitive = [a](double t) { return 2.0 * pi * a * std::log1p(t * t); };
    p.l1norm = 4.0 * pi * a;
    p.l2norm = a * std::sqrt(2.0 * pi);
    p.second_moment = 24.0 * pi * a;
    p.positive_type = true;
    return p;
}

Potential make_well(double a)
{
    Potential p;
    p.name = "well";
    p.coupling = a;
    p.profile = [a](double r) { return r < 1.0 ? a : 0.0; };
    p.hat = [a](double k) {
        if (k < 1e-2) {
            const double k2 = k * k;
            return 4.0 * pi * a * (1.0 / 3.0 - k2 / 30.0 + k2 * k2 / 840.0);
        }
        return 4.0 * pi * a * (std::sin(k) - k * std::cos(k)) / (k * k * k);
    };
    p.primitive = [a](double t) {
        if (t < 1e-3) {
            const double t2 = t * t;
            return 4.0 * pi * a * t2 / 6.0 * (1.0 - t2 / 20.0);
        }
        return 4.0 * pi * a * (1.0 - std::sin(t) / t);
    };
    p.l1norm = 4.0 * pi * a / 3.0;
    p.l2norm = a * std::sqrt(4.0 * pi / 3.0);
    p.second_moment = 4.0 * pi * a / 5.0;
    p.positive_type = false;
    return p;
}

// Piecewise-linear table; integrals use an 8-point rule per segment.
struct Table {
    std::vector<double> r, v;
    GaussRule ref = gauss_legendre(8);

    [[nodiscard]] double value(double x) const
    {
        if (x < r.front()) return v.front();
        if (x >= r.back()) return 0.0;
        const auto it = std::upper_bound(r.begin(), r.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
        const double t = (x - r[i]) / (r[i + 1] - r[i]);
        return (1.0 - t) * v[i] + t * v[i + 1];
    }

    // int_0^rmax g(x) v(x) dx, with v constant on [0, r_0]
    template <class G>
    [[nodiscard]] double integrate(G g) const
    {
        double acc = 0.0;
        auto segment = [&](double a, double b) {
            const double h = 0.5 * (b - a), m = 0.5 * (b + a);
            for (std::size_t p = 0; p < ref.nodes.size(); ++p) {
                const double x = m + h * ref.nodes[p];
                acc += h * ref.weights[p] * g(x) * value(x);
            }
        };
        if (r.front() > 0.0) segment(0.0, r.front());
        for (std::size_t i = 0; i + 1 < r.size(); ++i) segment(r[i], r[i + 1]);
        return acc;
    }
};

}  // namespace

const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names{"exp", "gauss", "yukawa", "well"};
    return names;
}

Potential catalog(std::string_view name, double coupling)
{
    check_coupling(coupling);
    if (name == "exp") return make_exp(coupling);
    if (name == "gauss") return make_gauss(coupling);
    if (name == "yukawa") return make_yukawa(coupling);
    if (name == "well") return make_well(coupling);
    std::string list;
    for (const auto& n : catalog_names()) list += (list.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown potential '" + std::string(name) + "' (valid: " + list + ")");
}

Potential zero_potential()
{
    Potential p;
    p.name = "zero";
    p.profile = [](double) { return 0.0; };
    p.hat = [](double) { return 0.0; };
    p.primitive = [](double) { return 0.0; };
    p.positive_type = true;
    return p;
}

Potential tabulated_potential(std::string name, std::vector<double> r, std::vector<double> v)
{
    if (r.size() < 2 || r.size() != v.size()) throw std::invalid_argument("tabulated potential: need at least two (r, v) rows");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(r[i] >= 0.0) || !std::isfinite(v[i])) throw std::invalid_argument("tabulated potential: bad row " + std::to_string(i + 1));
        if (v[i] < 0.0) throw std::invalid_argument("tabulated potential: v must be non-negative (row " + std::to_string(i + 1) + ")");
        if (i > 0 && !(r[i] > r[i - 1])) throw std::invalid_argument("tabulated potential: r must increase (row " + std::to_string(i + 1) + ")");
    }
    auto t = std::make_shared<Table>();
    t->r = std::move(r);
    t->v = std::move(v);
    Potential p;
    p.name = std::move(name);
    p.coupling = 1.0;
    p.profile = [t](double x) { return t->value(x); };
    p.hat = [t](double k) {
        return 4.0 * pi * t->integrate([k](double x) {
            const double kx = k * x;
            return x * x * (std::abs(kx) < 1e-4 ? 1.0 - kx * kx / 6.0 : std::sin(kx) / kx);
        });
    };
    p.primitive = [t](double s) { return 4.0 * pi * t->integrate([s](double x) { return 2.0 * std::pow(std::sin(0.5 * s * x), 2); }); };
    p.l1norm = 4.0 * pi * t->integrate([](double x) { return x * x; });
    p.l2norm = std::sqrt(4.0 * pi * t->integrate([t](double x) { return x * x * t->value(x); }));
    p.second_moment = 4.0 * pi * t->integrate([](double x) { return x * x * x * x; });
    p.positive_type = false;
    if (!(p.l1norm > 0.0)) throw std::invalid_argument("tabulated potential: integral of v must be positive");
    return p;
}

Potential load_potential(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open potential file " + path.string());
    std::vector<double> r, v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a)) continue;
        if (!(ls >> b)) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected two columns", lineno);
        std::string extra;
        if (ls >> extra) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": trailing text '" + extra + "'", lineno);
        if (!r.empty() && !(a > r.back()))
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": r must increase", lineno);
        if (b < 0.0) throw ParseError(path.string() + ":" + std::to_string(lineno) + ": v must be non-negative", lineno);
        r.push_back(a);
        v.push_back(b);
    }
    return tabulated_potential(path.stem().string(), std::move(r), std::move(v));
}

}  // namespace sa
