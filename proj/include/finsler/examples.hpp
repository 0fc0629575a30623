#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "finsler/atlas.hpp"
#include "finsler/connections.hpp"
#include "finsler/metrics.hpp"

namespace finsler {

using Oracle = std::function<std::vector<double>(const std::vector<double>& x, const std::vector<double>& y)>;

struct Example {
    std::string name;
    Domain domain;
    std::optional<Lagrangian> lagrangian;
    std::optional<AnisotropicMetric> metric;       // wick(k)
    std::optional<NonlinearConnection> nonlinear;  // handmadeN
    std::optional<ChartTransition> chart;          // quadchart
    std::optional<double> kappa;
    bool riemannian = false;  // L quadratic in y

    // Closed-form values, when known.
    Oracle spray_oracle;        // canonical spray G^i
    Oracle christoffel_oracle;  // Levi-Civita Gamma^i_jk
    std::optional<Signature> signature;  // of phi, or of the metric at every sample
};

// Registry names; wick(k) is listed with k = 0.5 and -2.
std::vector<std::string> example_names();

bool is_example(const std::string& name);

// Throws ConfigError for unknown names.
Example make_example(const std::string& name, const DiffEngine& engine = {});

// Signature of the Wick deformation of a Riemannian phi along v.
Signature wick_signature(double kappa, int n);

// L = e^{2 x1} |y|^2 on the whole chart; its oracles.
std::vector<double> conformal_spray(const std::vector<double>& x, const std::vector<double>& y);
std::vector<double> conformal_levi_civita(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace finsler
