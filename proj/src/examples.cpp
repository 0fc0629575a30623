#include "finsler/examples.hpp"

#include <cmath>
#include <regex>

namespace finsler {

namespace {

SamplerSpec box(double w, std::function<bool(const Sample&)> excluded = {})
{
    SamplerSpec s;
    s.x_lo = {-w, -w};
    s.x_hi = {w, w};
    s.excluded = std::move(excluded);
    return s;
}

bool inside(const std::vector<double>& x, double w)
{
    return std::abs(x[0]) <= w && std::abs(x[1]) <= w;
}

// Samples keep |y1|, |y2| >= 0.3 |y| so that the axes, where the quartic phi degenerates, stay away.
bool near_axis(const Sample& s)
{
    const double r = std::hypot(s.y[0], s.y[1]);
    return std::abs(s.y[0]) < 0.3 * r || std::abs(s.y[1]) < 0.3 * r;
}

Domain off_axes(const std::string& name, double w)
{
    auto member = [w](const std::vector<double>& x, const std::vector<double>& y) {
        return inside(x, w) && y[0] * y[1] != 0.0;
    };
    return std::make_shared<const ConicDomain>(name, 2, member, box(1.0, near_axis));
}

// Open sector |y1|, |y2| > 0.2 |y|; geodesics that approach an axis stop there.
Domain sector(const std::string& name, double w)
{
    auto member = [w](const std::vector<double>& x, const std::vector<double>& y) {
        const double r = std::hypot(y[0], y[1]);
        return inside(x, w) && std::abs(y[0]) > 0.2 * r && std::abs(y[1]) > 0.2 * r;
    };
    return std::make_shared<const ConicDomain>(name, 2, member, box(1.0, near_axis));
}

// Whole chart for membership, samples in the unit box; geodesics may wander.
Domain wide(const std::string& name, double w = 10.0)
{
    auto member = [w](const std::vector<double>& x, const std::vector<double>&) { return inside(x, w); };
    return std::make_shared<const ConicDomain>(name, 2, member, box(1.0));
}

TensorField euclidean_l(const Domain& d)
{
    return TensorField("L_euc", d, 0, 0, 2.0, [](const Point&, const Point& y) {
        return Components{y[0] * y[0] + y[1] * y[1]};
    });
}

TensorField quartic_l(const Domain& d, bool conformal)
{
    return TensorField(conformal ? "L_cq" : "L_quartic", d, 0, 0, 2.0, [conformal](const Point& x, const Point& y) {
        const Dual y1 = y[0] * y[0], y2 = y[1] * y[1];
        Dual q = sqrt(y1 * y1 + y2 * y2);
        if (conformal) q = exp(2.0 * x[0]) * q;
        return Components{q};
    });
}

std::vector<double> zeros(std::size_t n)
{
    return std::vector<double>(n, 0.0);
}

std::optional<double> parse_wick(const std::string& name)
{
    static const std::regex pattern(R"(wick\(\s*([^)\s]+)\s*\))");
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) return std::nullopt;
    const std::string num = m[1];
    std::size_t used = 0;
    double k = 0.0;
    try {
        k = std::stod(num, &used);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (used != num.size() || !std::isfinite(k)) return std::nullopt;
    return k;
}

}  // namespace

std::vector<std::string> example_names()
{
    return {"conformal2",  "conformal_quartic2", "euclidean2", "handmadeN",
            "minkowski2",  "quadchart",          "quartic2",   "wick(-2)",
            "wick(0.5)"};
}

bool is_example(const std::string& name)
{
    if (parse_wick(name)) return true;
    for (const auto& n : example_names())
        if (n == name) return true;
    return false;
}

Signature wick_signature(double kappa, int n)
{
    if (kappa > -1.0) return {n, 0, 0};
    if (kappa == -1.0) return {n - 1, 0, 1};
    return {n - 1, 1, 0};
}

std::vector<double> conformal_spray(const std::vector<double>&, const std::vector<double>& y)
{
    return {0.5 * (y[0] * y[0] - y[1] * y[1]), y[0] * y[1]};
}

std::vector<double> conformal_levi_civita(const std::vector<double>&, const std::vector<double>&)
{
    // Gamma^1_11 = 1, Gamma^1_22 = -1, Gamma^2_12 = Gamma^2_21 = 1
    return {1.0, 0.0, 0.0, -1.0, 0.0, 1.0, 1.0, 0.0};
}

Example make_example(const std::string& name, const DiffEngine& engine)
{
    Example e;
    e.name = name;
    if (name == "euclidean2" || name == "quadchart") {
        e.domain = wide(name);
        e.lagrangian.emplace(euclidean_l(e.domain), engine);
        e.riemannian = true;
        e.spray_oracle = [](const auto&, const auto&) { return zeros(2); };
        e.christoffel_oracle = [](const auto&, const auto&) { return zeros(8); };
        e.signature = Signature{2, 0, 0};
        if (name == "quadchart") e.chart = quadratic_shear();
    } else if (name == "minkowski2") {
        auto member = [](const std::vector<double>& x, const std::vector<double>& y) {
            return inside(x, 10.0) && y[1] * y[1] > y[0] * y[0];
        };
        auto margin = [](const Sample& s) { return std::abs(s.y[1]) <= 1.2 * std::abs(s.y[0]); };
        e.domain = std::make_shared<const ConicDomain>(name, 2, member, box(1.0, margin));
        e.lagrangian.emplace(TensorField("L_mink", e.domain, 0, 0, 2.0,
                                         [](const Point&, const Point& y) {
                                             return Components{y[1] * y[1] - y[0] * y[0]};
                                         }),
                             engine);
        e.riemannian = true;
        e.spray_oracle = [](const auto&, const auto&) { return zeros(2); };
        e.christoffel_oracle = [](const auto&, const auto&) { return zeros(8); };
        e.signature = Signature{1, 1, 0};
    } else if (name == "conformal2") {
        e.domain = wide(name);
        e.lagrangian.emplace(TensorField("L_conf", e.domain, 0, 0, 2.0,
                                         [](const Point& x, const Point& y) {
                                             return Components{exp(2.0 * x[0]) * (y[0] * y[0] + y[1] * y[1])};
                                         }),
                             engine);
        e.riemannian = true;
        e.spray_oracle = conformal_spray;
        e.christoffel_oracle = conformal_levi_civita;
        e.signature = Signature{2, 0, 0};
    } else if (name == "quartic2") {
        e.domain = off_axes(name, 10.0);
        e.lagrangian.emplace(quartic_l(e.domain, false), engine);
        e.spray_oracle = [](const auto&, const auto&) { return zeros(2); };
        e.signature = Signature{2, 0, 0};
    } else if (name == "conformal_quartic2") {
        e.domain = sector(name, 10.0);
        e.lagrangian.emplace(quartic_l(e.domain, true), engine);
        e.signature = Signature{2, 0, 0};
    } else if (name == "handmadeN") {
        e.domain = wide(name);
        e.nonlinear.emplace(TensorField("N_hand", e.domain, 1, 1, 1.0, [](const Point&, const Point& y) {
            return Components{y[1], Dual(0.0), Dual(0.0), Dual(0.0)};
        }));
    } else if (auto k = parse_wick(name)) {
        e.domain = wide(name);
        e.lagrangian.emplace(euclidean_l(e.domain), engine);
        e.metric = wick_metric(*e.lagrangian, *k);
        e.kappa = *k;
        e.riemannian = true;
        e.spray_oracle = [](const auto&, const auto&) { return zeros(2); };
        e.christoffel_oracle = [](const auto&, const auto&) { return zeros(8); };
        e.signature = wick_signature(*k, 2);
    } else {
        throw ConfigError("unknown example '" + name + "'");
    }
    return e;
}

}  // namespace finsler
