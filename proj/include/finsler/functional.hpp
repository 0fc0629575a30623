#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "finsler/connections.hpp"
#include "finsler/linear_connection.hpp"
#include "finsler/metrics.hpp"

namespace finsler {

enum class Level { spray, nonlinear, anisotropic, linear, lagrangian, anis_metric };

const char* to_string(Level l);

// Alternatives are in the same order as Level.
using LevelObject =
    std::variant<Spray, NonlinearConnection, AnisotropicConnection, LinearConnection, Lagrangian, AnisotropicMetric>;

Level level_of(const LevelObject& obj);

// Coefficients of the object at (x, y); a linear connection lists hat1 then hat2.
std::vector<double> coefficients(const LevelObject& obj, const std::vector<double>& x, const std::vector<double>& y);

struct Quadrature {
    std::vector<Sample> points;
    std::vector<double> weights;
};

// `count` seeded samples of the domain with equal weights summing to 1.
Quadrature uniform_quadrature(const ConicDomain& d, std::size_t count, std::uint64_t seed);

using Density = std::function<double(const LevelObject&, const std::vector<double>& x, const std::vector<double>& y)>;

class ActionFunctional {
public:
    ActionFunctional(Level level, Density density, Quadrature quadrature);

    Level level() const { return level_; }
    const Density& density() const { return density_; }
    const Quadrature& quadrature() const { return quadrature_; }

private:
    Level level_;
    Density density_;
    Quadrature quadrature_;
};

// sum_k w_k density(obj, x_k, y_k)
double evaluate_action(const ActionFunctional& f, const LevelObject& obj);

// Downward edges: linear->anisotropic (embed_trivial), anisotropic->nonlinear (d),
// nonlinear->spray (d), anis_metric->lagrangian (1/2 dd L).
ActionFunctional restrict_functional(const ActionFunctional& f, Level from, Level to, const DiffEngine& engine = {});

// Upward edges: anisotropic->linear (project_intrinsic), nonlinear->anisotropic (iC),
// spray->nonlinear (1/2 iC).
ActionFunctional extend_functional(const ActionFunctional& f, Level from, Level to, const DiffEngine& engine = {});

// Precompose with project-then-embed at the given level.
ActionFunctional gauge_symmetrize(const ActionFunctional& f, Level level, const DiffEngine& engine = {});

}  // namespace finsler
