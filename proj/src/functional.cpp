#include "finsler/functional.hpp"

#include <string>

namespace finsler {

const char* to_string(Level l)
{
    switch (l) {
    case Level::spray: return "spray";
    case Level::nonlinear: return "nonlinear";
    case Level::anisotropic: return "anisotropic";
    case Level::linear: return "linear";
    case Level::lagrangian: return "lagrangian";
    case Level::anis_metric: return "anis-metric";
    }
    return "?";
}

Level level_of(const LevelObject& obj)
{
    return static_cast<Level>(obj.index());
}

std::vector<double> coefficients(const LevelObject& obj, const std::vector<double>& x, const std::vector<double>& y)
{
    if (const auto* c = std::get_if<LinearConnection>(&obj)) {
        std::vector<double> a = c->hat1().evaluate(x, y);
        const std::vector<double> b = c->hat2().evaluate(x, y);
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }
    return std::visit(
        [&](const auto& o) -> std::vector<double> {
            if constexpr (std::is_same_v<std::decay_t<decltype(o)>, LinearConnection>)
                return {};
            else
                return o.field().evaluate(x, y);
        },
        obj);
}

Quadrature uniform_quadrature(const ConicDomain& d, std::size_t count, std::uint64_t seed)
{
    Quadrature q;
    q.points = d.samples(count, seed);
    q.weights.assign(count, 1.0 / static_cast<double>(count));
    return q;
}

ActionFunctional::ActionFunctional(Level level, Density density, Quadrature quadrature)
    : level_(level), density_(std::move(density)), quadrature_(std::move(quadrature))
{
    if (quadrature_.points.size() != quadrature_.weights.size())
        throw ShapeError("ActionFunctional: quadrature points and weights differ in length");
}

double evaluate_action(const ActionFunctional& f, const LevelObject& obj)
{
    if (level_of(obj) != f.level())
        throw TypeError(std::string("functional on level '") + to_string(f.level()) + "' given a '" +
                        to_string(level_of(obj)) + "' object");
    double total = 0.0;
    const Quadrature& q = f.quadrature();
    for (std::size_t k = 0; k < q.points.size(); ++k) total += q.weights[k] * f.density()(obj, q.points[k].x, q.points[k].y);
    return total;
}

namespace {

using ObjectMap = std::function<LevelObject(const LevelObject&)>;

ActionFunctional pull_back(const ActionFunctional& f, Level new_level, ObjectMap map)
{
    Density inner = f.density();
    Density d = [inner, map](const LevelObject& obj, const std::vector<double>& x, const std::vector<double>& y) {
        return inner(map(obj), x, y);
    };
    return ActionFunctional(new_level, d, f.quadrature());
}

void require_level(const ActionFunctional& f, Level expected, const char* op)
{
    if (f.level() != expected)
        throw TypeError(std::string(op) + ": functional lives on '" + to_string(f.level()) + "', not '" +
                        to_string(expected) + "'");
}

std::string edge(Level from, Level to)
{
    return std::string(to_string(from)) + " -> " + to_string(to);
}

}  // namespace

ActionFunctional restrict_functional(const ActionFunctional& f, Level from, Level to, const DiffEngine& engine)
{
    require_level(f, from, "restrict_functional");
    if (from == Level::linear && to == Level::anisotropic)
        return pull_back(f, to, [](const LevelObject& o) {
            return LevelObject(embed_trivial(std::get<AnisotropicConnection>(o)));
        });
    if (from == Level::anisotropic && to == Level::nonlinear)
        return pull_back(f, to, [engine](const LevelObject& o) {
            return LevelObject(raise_connection(std::get<NonlinearConnection>(o), engine));
        });
    if (from == Level::nonlinear && to == Level::spray)
        return pull_back(f, to, [engine](const LevelObject& o) {
            return LevelObject(raise_connection(std::get<Spray>(o), engine));
        });
    if (from == Level::anis_metric && to == Level::lagrangian)
        return pull_back(f, to, [](const LevelObject& o) {
            return LevelObject(fundamental_tensor(std::get<Lagrangian>(o)));
        });
    throw UnsupportedTransition("restrict_functional: unsupported edge " + edge(from, to));
}

ActionFunctional extend_functional(const ActionFunctional& f, Level from, Level to, const DiffEngine&)
{
    require_level(f, from, "extend_functional");
    if (from == Level::anisotropic && to == Level::linear)
        return pull_back(f, to, [](const LevelObject& o) {
            return LevelObject(project_intrinsic(std::get<LinearConnection>(o)));
        });
    if (from == Level::nonlinear && to == Level::anisotropic)
        return pull_back(f, to, [](const LevelObject& o) {
            return LevelObject(lower_connection(std::get<AnisotropicConnection>(o)));
        });
    if (from == Level::spray && to == Level::nonlinear)
        return pull_back(f, to, [](const LevelObject& o) {
            return LevelObject(lower_connection(std::get<NonlinearConnection>(o)));
        });
    throw UnsupportedTransition("extend_functional: unsupported edge " + edge(from, to));
}

ActionFunctional gauge_symmetrize(const ActionFunctional& f, Level level, const DiffEngine& engine)
{
    require_level(f, level, "gauge_symmetrize");
    switch (level) {
    case Level::linear:
        return pull_back(f, level, [](const LevelObject& o) {
            return LevelObject(embed_trivial(project_intrinsic(std::get<LinearConnection>(o))));
        });
    case Level::anisotropic:
        return pull_back(f, level, [engine](const LevelObject& o) {
            return LevelObject(raise_connection(lower_connection(std::get<AnisotropicConnection>(o)), engine));
        });
    case Level::nonlinear:
        return pull_back(f, level, [engine](const LevelObject& o) {
            return LevelObject(raise_connection(lower_connection(std::get<NonlinearConnection>(o)), engine));
        });
    default:
        throw UnsupportedTransition(std::string("gauge_symmetrize: no residue split at level '") + to_string(level) +
                                    "'");
    }
}

}  // namespace finsler
