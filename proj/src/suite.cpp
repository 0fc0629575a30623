#include "finsler/suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

#include "finsler/functional.hpp"
#include "finsler/ladder.hpp"
#include "finsler/linalg.hpp"
#include "finsler/linear_connection.hpp"
#include "finsler/random_fields.hpp"

namespace finsler {

namespace {

using Vec = std::vector<double>;

double max_abs(const Vec& v)
{
    double m = 0.0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
}

double max_abs_diff(const Vec& a, const Vec& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Worst defect over samples; NaN sticks.
struct Worst {
    double value = 0.0;
    std::optional<Sample> where;
    std::size_t used = 0;

    void add(double d, const Sample& s)
    {
        ++used;
        if (where && std::isnan(value)) return;
        if (!where || std::isnan(d) || d > value) {
            value = d;
            where = s;
        }
    }
};

struct Context {
    const RunConfig& cfg;
    const Example& ex;
    DiffEngine engine;
    std::vector<Sample> samples;
};

CheckReport finish(const std::string& name, const Worst& w, std::string detail = {})
{
    CheckReport r;
    r.check = name;
    r.max_abs_defect = w.value;
    r.samples_used = w.used;
    r.worst_sample = w.where;
    r.detail = std::move(detail);
    return r;
}

CheckReport not_applicable(const std::string& name, const std::string& why)
{
    CheckReport r;
    r.check = name;
    r.detail = "not applicable: " + why;
    return r;
}

std::optional<Spray> spray_of(const Context& c)
{
    if (c.ex.lagrangian) return canonical_spray(*c.ex.lagrangian, c.engine);
    if (c.ex.nonlinear) return lower_connection(*c.ex.nonlinear);
    return std::nullopt;
}

std::optional<NonlinearConnection> nonlinear_of(const Context& c)
{
    if (c.ex.nonlinear) return c.ex.nonlinear;
    if (c.ex.lagrangian) return canonical_nonlinear(*c.ex.lagrangian, c.engine);
    return std::nullopt;
}

std::optional<AnisotropicConnection> anisotropic_of(const Context& c)
{
    if (c.ex.lagrangian) return berwald_connection(*c.ex.lagrangian, c.engine);
    if (c.ex.nonlinear) return raise_connection(*c.ex.nonlinear, c.engine);
    return std::nullopt;
}

// ---------------------------------------------------------------------------

// The fields are built exactly; only the derivative inside iC dT - alpha T
// follows the configured method. Nested fd4 construction is not meaningful here.
CheckReport check_euler(const Context& c)
{
    const Example ex = make_example(c.ex.name, DiffEngine::exact());
    const Context exact{c.cfg, ex, DiffEngine::exact(), c.samples};
    std::vector<TensorField> fields;
    if (const auto& l = ex.lagrangian) {
        fields.push_back(l->field());
        fields.push_back(vertical_derivative(l->field(), exact.engine));
        fields.push_back(l->phi());
    }
    if (ex.metric) fields.push_back(ex.metric->field());
    if (auto g = spray_of(exact)) fields.push_back(g->field());
    if (auto n = nonlinear_of(exact)) fields.push_back(n->field());
    if (auto a = anisotropic_of(exact)) fields.push_back(a->field());

    DiffEngine probe = c.engine;
    probe.x_method = DiffMethod::analytic;
    Worst w;
    for (const Sample& s : c.samples) {
        double worst = 0.0;
        for (const TensorField& f : fields) {
            const Vec d = homogeneity_defect(f, probe, s.x, s.y);
            const double scale = std::max(1.0, max_abs(f.evaluate(s.x, s.y)) * std::max(1.0, std::abs(f.alpha())));
            worst = std::max(worst, max_abs(d) / scale);
        }
        w.add(worst, s);
    }
    return finish("euler", w, std::to_string(fields.size()) + " fields, relative defect");
}

CheckReport check_ladder_roundtrip(const Context& c)
{
    std::optional<TensorField> target;
    if (c.ex.metric)
        target = c.ex.metric->field();
    else if (c.ex.lagrangian)
        target = c.ex.lagrangian->phi();
    else if (c.ex.nonlinear)
        target = c.ex.nonlinear->field();
    if (!target) return not_applicable("ladder_roundtrip", "no field to decompose");

    const int beta = integer_alpha(*target) + target->co();
    const LadderDecomposition d = decompose(*target, beta, c.engine);
    const TensorField back = reconstruct(d, c.engine);
    std::vector<TensorField> contracted;
    for (const TensorField& r : d.residues) contracted.push_back(liouville_contract(r));

    Worst w;
    for (const Sample& s : c.samples) {
        double worst = max_abs_diff(back.evaluate(s.x, s.y), target->evaluate(s.x, s.y));
        for (const TensorField& r : contracted) worst = std::max(worst, max_abs(r.evaluate(s.x, s.y)));
        w.add(worst, s);
    }
    return finish("ladder_roundtrip", w, "decomposed '" + target->name() + "' to level 0");
}

CheckReport check_legendre_residue(const Context& c)
{
    if (!c.ex.lagrangian) return not_applicable("legendre_residue", "no Lagrangian");
    const TensorField res = legendre_residue(legendre_of(*c.ex.lagrangian, {}, c.engine), c.engine);
    Worst w;
    for (const Sample& s : c.samples) w.add(max_abs(res.evaluate(s.x, s.y)), s);
    return finish("legendre_residue", w);
}

std::string signature_text(const Signature& s)
{
    return "(" + std::to_string(s.plus) + "," + std::to_string(s.minus) + "," + std::to_string(s.zero) + ")";
}

CheckReport check_signature_table(const Context& c)
{
    if (!c.ex.signature) return not_applicable("signature_table", "no expected signature");
    std::optional<AnisotropicMetric> g = c.ex.metric;
    if (!g && c.ex.lagrangian) g = AnisotropicMetric(c.ex.lagrangian->phi());
    if (!g) return not_applicable("signature_table", "no metric");

    std::vector<Sample> points;
    if (c.ex.kappa) {
        for (const Vec& v : {Vec{1.0, 0.0}, Vec{0.0, 1.0}, Vec{1.0, 1.0}, Vec{-1.0, 2.0}}) points.push_back({{0.0, 0.0}, v});
    }
    points.insert(points.end(), c.samples.begin(), c.samples.end());

    Worst w;
    std::set<std::string> seen;
    for (const Sample& s : points) {
        const Signature sig = signature_at(*g, s.x, s.y);
        seen.insert(signature_text(sig));
        w.add(sig == *c.ex.signature ? 0.0 : 1.0, s);
    }
    std::string detail = "expected " + signature_text(*c.ex.signature) + ", observed";
    for (const auto& s : seen) detail += " " + s;
    return finish("signature_table", w, detail);
}

CheckReport check_canonical_spray_oracle(const Context& c)
{
    if (!c.ex.lagrangian || !c.ex.spray_oracle) return not_applicable("canonical_spray_oracle", "no stored oracle");
    const TensorField g = canonical_spray(*c.ex.lagrangian, c.engine).field();
    Worst w;
    for (const Sample& s : c.samples) w.add(max_abs_diff(g.evaluate(s.x, s.y), c.ex.spray_oracle(s.x, s.y)), s);
    return finish("canonical_spray_oracle", w);
}

CheckReport check_christoffel_oracle(const Context& c)
{
    if (!c.ex.lagrangian || !c.ex.christoffel_oracle)
        return not_applicable("christoffel_oracle", "no stored Levi-Civita oracle");
    const TensorField b = berwald_connection(*c.ex.lagrangian, c.engine).field();
    const TensorField ch = chern_connection(*c.ex.lagrangian, c.engine).field();
    Worst w;
    for (const Sample& s : c.samples) {
        const Vec o = c.ex.christoffel_oracle(s.x, s.y);
        w.add(std::max(max_abs_diff(b.evaluate(s.x, s.y), o), max_abs_diff(ch.evaluate(s.x, s.y), o)), s);
    }
    return finish("christoffel_oracle", w, "berwald and chern against Levi-Civita");
}

CheckReport check_landsberg_kernel(const Context& c)
{
    if (!c.ex.lagrangian) return not_applicable("landsberg_kernel", "no Lagrangian");
    const TensorField lan = liouville_contract(landsberg_tensor(*c.ex.lagrangian, c.engine));
    Worst w;
    for (const Sample& s : c.samples) w.add(max_abs(lan.evaluate(s.x, s.y)), s);
    return finish("landsberg_kernel", w);
}

CheckReport check_landsberg_vanishing(const Context& c)
{
    if (!c.ex.lagrangian || !c.ex.riemannian) return not_applicable("landsberg_vanishing", "L is not quadratic");
    const TensorField lan = landsberg_tensor(*c.ex.lagrangian, c.engine);
    Worst w;
    for (const Sample& s : c.samples) w.add(max_abs(lan.evaluate(s.x, s.y)), s);
    return finish("landsberg_vanishing", w);
}

CheckReport check_torsion_residue(const Context& c)
{
    const auto nl = nonlinear_of(c);
    if (!nl) return not_applicable("torsion_residue", "no nonlinear connection");
    const int n = nl->field().dim();
    const TensorField delta = nonlinear_residue(*nl, c.engine);
    const TensorField tor = torsion(*nl, c.engine);
    const TensorField contracted = liouville_contract(delta);
    Worst w;
    for (const Sample& s : c.samples) {
        const Vec d = delta.evaluate(s.x, s.y);
        const Vec t = tor.evaluate(s.x, s.y);
        double worst = max_abs(contracted.evaluate(s.x, s.y));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double half = 0.0;
                for (int a = 0; a < n; ++a) half += 0.5 * t[(i * n + j) * n + a] * s.y[a];
                worst = std::max(worst, std::abs(d[i * n + j] - half));
            }
        w.add(worst, s);
    }
    return finish("torsion_residue", w, "residue of '" + nl->field().name() + "'");
}

CheckReport check_torsion_free(const Context& c)
{
    if (!c.ex.lagrangian) return not_applicable("torsion_free", "no canonical connection");
    const TensorField tor = torsion(canonical_nonlinear(*c.ex.lagrangian, c.engine), c.engine);
    Worst w;
    for (const Sample& s : c.samples) w.add(max_abs(tor.evaluate(s.x, s.y)), s);
    return finish("torsion_free", w);
}

CheckReport check_cartan_symmetry(const Context& c)
{
    if (!c.ex.lagrangian) return not_applicable("cartan_symmetry", "no Lagrangian");
    const TensorField dphi = vertical_derivative(c.ex.lagrangian->phi(), c.engine);
    const int n = dphi.dim();
    Worst w;
    for (const Sample& s : c.samples) {
        const Vec v = dphi.evaluate(s.x, s.y);
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double a = v[(i * n + j) * n + k];
                    for (double b : {v[(j * n + i) * n + k], v[(i * n + k) * n + j], v[(k * n + j) * n + i]})
                        worst = std::max(worst, std::abs(a - b));
                }
        w.add(worst, s);
    }
    return finish("cartan_symmetry", w);
}

CheckReport check_linear_roundtrip(const Context& c)
{
    const auto gamma = anisotropic_of(c);
    if (!gamma) return not_applicable("linear_roundtrip", "no anisotropic connection");
    std::mt19937_64 rng(c.cfg.seed ^ 0x6c696e656172ULL);
    const TensorField delta = c.ex.lagrangian ? cartan_tensor(*c.ex.lagrangian, c.engine)
                                              : random_field(c.ex.domain, 1, 2, -1.0, rng, 0.1);
    const AnisotropicConnection trivial = project_intrinsic(embed_trivial(*gamma));
    const NonlinearConnection nl = lower_connection(*gamma);
    const LinearConnection rebuilt = rebuild_linear(*gamma, delta, nl);
    const HorizontalSplit split = project_with_N(rebuilt, nl);
    const AnisotropicConnection intrinsic = project_intrinsic(rebuilt);

    Worst w;
    for (const Sample& s : c.samples) {
        const Vec g = gamma->field().evaluate(s.x, s.y);
        double worst = max_abs_diff(trivial.field().evaluate(s.x, s.y), g);
        worst = std::max(worst, max_abs_diff(split.gamma.field().evaluate(s.x, s.y), g));
        worst = std::max(worst, max_abs_diff(split.delta.evaluate(s.x, s.y), delta.evaluate(s.x, s.y)));
        worst = std::max(worst, max_abs_diff(intrinsic.field().evaluate(s.x, s.y), g));
        w.add(worst, s);
    }
    return finish("linear_roundtrip", w, "j(embed) = id and (Gamma, Delta) round trip");
}

CheckReport check_classical_regular(const Context& c)
{
    if (!c.ex.lagrangian) return not_applicable("classical_regular", "no Lagrangian");
    const TensorField n0 = canonical_nonlinear(*c.ex.lagrangian, c.engine).field();
    std::vector<LinearConnection> kinds;
    for (ClassicalKind k : {ClassicalKind::berwald, ClassicalKind::chern, ClassicalKind::hashiguchi, ClassicalKind::cartan})
        kinds.push_back(classical_linear(*c.ex.lagrangian, k, c.engine));
    std::vector<TensorField> induced;
    for (const auto& k : kinds) induced.push_back(induced_nonlinear(k).field());

    Worst w;
    std::size_t weak = 0;
    for (const Sample& s : c.samples) {
        const Vec n = n0.evaluate(s.x, s.y);
        double worst = 0.0;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            const BMatrix b = b_matrix(kinds[k], s.x, s.y);
            if (!b.strongly_regular) ++weak;
            worst = std::max({worst, b.contraction, max_abs_diff(induced[k].evaluate(s.x, s.y), n)});
        }
        w.add(worst, s);
    }
    return finish("classical_regular", w, std::to_string(weak) + " not strongly regular");
}

CheckReport check_cocycle(const Context& c)
{
    const ChartTransition chart = c.ex.chart ? *c.ex.chart : quadratic_shear();
    const auto g = spray_of(c);
    if (!g) return not_applicable("cocycle", "no spray");
    const NonlinearConnection nl = *nonlinear_of(c);
    const AnisotropicConnection gamma = *anisotropic_of(c);

    // Closed forms are known for the flat spray under quadchart.
    const bool closed = c.ex.chart && c.ex.lagrangian && c.ex.spray_oracle && c.ex.christoffel_oracle;
    std::optional<Spray> gt;
    std::optional<NonlinearConnection> nt;
    std::optional<AnisotropicConnection> at;
    if (closed) {
        gt = transform_connection(*g, chart);
        nt = transform_connection(nl, chart);
        at = transform_connection(gamma, chart);
    }

    Worst w;
    for (const Sample& s : c.samples) {
        if (!chart.overlap(s.x)) continue;
        double worst = 0.0;
        for (const CoherenceReport& r : {coherence_defect(*g, chart, {s}, c.engine),
                                         coherence_defect(nl, chart, {s}, c.engine),
                                         coherence_defect(gamma, chart, {s}, c.engine)})
            for (const auto& [key, v] : r) worst = std::max(worst, v);
        if (closed) {
            const Sample t = map_sample(chart, s);
            const double y2 = t.y[1];
            worst = std::max(worst, std::abs(gt->field().evaluate(t.x, t.y)[0] + y2 * y2));
            worst = std::max(worst, std::abs(nt->field().evaluate(t.x, t.y)[1] + 2.0 * y2));
            worst = std::max(worst, std::abs(at->field().evaluate(t.x, t.y)[3] + 2.0));
        }
        w.add(worst, s);
    }
    return finish("cocycle", w, "chart '" + chart.name + "'" + (closed ? ", closed forms" : ""));
}

CheckReport check_geodesic_energy(const Context& c)
{
    if (!c.ex.lagrangian) return not_applicable("geodesic_energy", "no Lagrangian");
    const Spray g = canonical_spray(*c.ex.lagrangian, c.engine);
    const TensorField& l = c.ex.lagrangian->field();
    const std::size_t starts = std::min<std::size_t>(c.samples.size(), 4);
    Worst w;
    int truncated = 0;
    for (std::size_t k = 0; k < starts; ++k) {
        const Sample& s = c.samples[k];
        const Trajectory t = geodesic_integrate(g, s.x, s.y, 1e-3, 1000);
        if (t.truncated) ++truncated;
        const double l0 = l.evaluate(s.x, s.y)[0];
        double drift = 0.0;
        for (const Sample& p : t.states) drift = std::max(drift, std::abs(l.evaluate(p.x, p.y)[0] - l0) / std::abs(l0));
        w.add(drift, s);
    }
    return finish("geodesic_energy", w,
                  "dt=0.001, 1000 steps, relative drift; " + std::to_string(truncated) + " truncated");
}

// Smooth nonlinear test density in the coefficients of an object.
Density test_density(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(64);
    for (double& v : a) v = u(rng);
    return [a](const LevelObject& obj, const Vec& x, const Vec& y) {
        const Vec c = coefficients(obj, x, y);
        double lin = 0.0, quad = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            lin += a[k % a.size()] * c[k];
            quad += c[k] * c[k];
        }
        return lin + std::sin(quad);
    };
}

CheckReport check_functional_laws(const Context& c)
{
    const auto g = spray_of(c);
    if (!g) return not_applicable("functional_laws", "no spray");
    const NonlinearConnection nl = *nonlinear_of(c);
    const AnisotropicConnection gamma = *anisotropic_of(c);

    const Quadrature q = uniform_quadrature(*c.ex.domain, std::min<std::size_t>(c.samples.size(), 16), c.cfg.seed);
    const Density dens = test_density(c.cfg.seed + 1);
    std::mt19937_64 rng(c.cfg.seed ^ 0x6761756765ULL);
    double worst = 0.0;

    // Extend then restrict along each edge.
    auto through = [&](Level low, Level high, const LevelObject& obj) {
        const ActionFunctional f0(low, dens, q);
        const ActionFunctional back = restrict_functional(extend_functional(f0, low, high, c.engine), high, low, c.engine);
        worst = std::max(worst, std::abs(evaluate_action(back, obj) - evaluate_action(f0, obj)));
    };
    through(Level::spray, Level::nonlinear, *g);
    through(Level::nonlinear, Level::anisotropic, nl);
    through(Level::anisotropic, Level::linear, gamma);

    // Residue shifts.
    const int shifts = 50;
    const ActionFunctional sn = gauge_symmetrize(ActionFunctional(Level::nonlinear, dens, q), Level::nonlinear, c.engine);
    const ActionFunctional sa =
        gauge_symmetrize(ActionFunctional(Level::anisotropic, dens, q), Level::anisotropic, c.engine);
    const ActionFunctional sl = gauge_symmetrize(ActionFunctional(Level::linear, dens, q), Level::linear, c.engine);
    const double vn = evaluate_action(sn, nl);
    const double va = evaluate_action(sa, gamma);
    const TensorField delta0 = random_field(c.ex.domain, 1, 2, -1.0, rng, 0.05);
    const double vl = evaluate_action(sl, rebuild_linear(gamma, delta0));
    for (int k = 0; k < shifts; ++k) {
        const TensorField rn = nonlinear_residue(NonlinearConnection(random_field(c.ex.domain, 1, 1, 1.0, rng)), c.engine);
        const TensorField ra =
            anisotropic_residue(AnisotropicConnection(random_field(c.ex.domain, 1, 2, 0.0, rng)), c.engine);
        const TensorField rl = random_field(c.ex.domain, 1, 2, -1.0, rng, 0.05);
        worst = std::max(worst, std::abs(evaluate_action(sn, NonlinearConnection(add(nl.field(), rn))) - vn));
        worst = std::max(worst, std::abs(evaluate_action(sa, AnisotropicConnection(add(gamma.field(), ra))) - va));
        worst = std::max(worst, std::abs(evaluate_action(sl, rebuild_linear(gamma, add(delta0, rl))) - vl));
    }

    // Chern and Berwald share their iC image.
    if (c.ex.lagrangian)
        worst = std::max(worst, std::abs(evaluate_action(sa, chern_connection(*c.ex.lagrangian, c.engine)) - va));

    CheckReport r;
    r.check = "functional_laws";
    r.max_abs_defect = worst;
    r.samples_used = q.points.size();
    r.detail = "3 extend/restrict edges, " + std::to_string(shifts) + " residue shifts per level";
    return r;
}

using CheckFn = CheckReport (*)(const Context&);

const std::map<std::string, CheckFn>& registry()
{
    static const std::map<std::string, CheckFn> checks = {
        {"canonical_spray_oracle", check_canonical_spray_oracle},
        {"cartan_symmetry", check_cartan_symmetry},
        {"christoffel_oracle", check_christoffel_oracle},
        {"classical_regular", check_classical_regular},
        {"cocycle", check_cocycle},
        {"euler", check_euler},
        {"functional_laws", check_functional_laws},
        {"geodesic_energy", check_geodesic_energy},
        {"ladder_roundtrip", check_ladder_roundtrip},
        {"landsberg_kernel", check_landsberg_kernel},
        {"landsberg_vanishing", check_landsberg_vanishing},
        {"legendre_residue", check_legendre_residue},
        {"linear_roundtrip", check_linear_roundtrip},
        {"signature_table", check_signature_table},
        {"torsion_free", check_torsion_free},
        {"torsion_residue", check_torsion_residue},
    };
    return checks;
}

// ---------------------------------------------------------------------------
// Config parsing

std::pair<int, int> line_column(const std::string& text, std::size_t offset)
{
    int line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

// Position of the first occurrence of "key" used as an object key.
std::pair<int, int> key_position(const std::string& text, const std::string& key)
{
    const std::string quoted = "\"" + key + "\"";
    std::size_t pos = 0;
    while ((pos = text.find(quoted, pos)) != std::string::npos) {
        std::size_t after = pos + quoted.size();
        while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
        if (after < text.size() && text[after] == ':') return line_column(text, pos);
        pos = after;
    }
    return {0, 0};
}

[[noreturn]] void fail_at(const std::string& text, const std::string& key, const std::string& what)
{
    const auto [line, column] = key_position(text, key);
    throw ConfigError(what, line, column);
}

}  // namespace

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, fn] : registry()) v.push_back(k);
        return v;
    }();
    return names;
}

RunConfig parse_config(const std::string& text)
{
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, column] = line_column(text, at);
        throw ConfigError(std::string("malformed config: ") + e.what(), line, column);
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object", 1, 1);

    static const std::set<std::string> known = {"example",     "checks", "samples",   "seed",
                                                "tolerance",   "diff_method", "step_scale"};
    for (const auto& [key, value] : doc.items())
        if (!known.count(key)) fail_at(text, key, "unknown config key '" + key + "'");

    RunConfig cfg;
    if (!doc.contains("example")) throw ConfigError("config is missing 'example'", 1, 1);
    if (!doc["example"].is_string()) fail_at(text, "example", "'example' must be a string");
    cfg.example = doc["example"].get<std::string>();
    if (!is_example(cfg.example)) fail_at(text, "example", "unknown example '" + cfg.example + "'");

    if (doc.contains("checks")) {
        const json& c = doc["checks"];
        if (!c.is_array()) fail_at(text, "checks", "'checks' must be an array of strings");
        const auto& names = check_names();
        for (const json& item : c) {
            if (!item.is_string()) fail_at(text, "checks", "'checks' must be an array of strings");
            const std::string name = item.get<std::string>();
            if (std::find(names.begin(), names.end(), name) == names.end())
                fail_at(text, "checks", "unknown check '" + name + "'");
            if (std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end())
                fail_at(text, "checks", "check '" + name + "' listed twice");
            cfg.checks.push_back(name);
        }
    }
    if (doc.contains("samples")) {
        const json& s = doc["samples"];
        if (!s.is_number_integer()) fail_at(text, "samples", "'samples' must be an integer");
        const long long v = s.get<long long>();
        if (v < 1 || v > 1000000) fail_at(text, "samples", "'samples' must be between 1 and 1000000");
        cfg.samples = static_cast<int>(v);
    }
    if (doc.contains("seed")) {
        const json& s = doc["seed"];
        if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
            fail_at(text, "seed", "'seed' must be a non-negative integer");
        cfg.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("tolerance")) {
        const json& t = doc["tolerance"];
        if (!t.is_number() || !(t.get<double>() > 0.0)) fail_at(text, "tolerance", "'tolerance' must be positive");
        cfg.tolerance = t.get<double>();
    }
    if (doc.contains("diff_method")) {
        const json& m = doc["diff_method"];
        if (!m.is_string() || (m.get<std::string>() != "analytic" && m.get<std::string>() != "fd4"))
            fail_at(text, "diff_method", "'diff_method' must be \"analytic\" or \"fd4\"");
        cfg.diff_method = m.get<std::string>();
    }
    if (doc.contains("step_scale")) {
        const json& s = doc["step_scale"];
        if (!s.is_number() || !(s.get<double>() > 0.0)) fail_at(text, "step_scale", "'step_scale' must be positive");
        cfg.step_scale = s.get<double>();
    }
    return cfg;
}

DiffEngine engine_of(const RunConfig& cfg)
{
    if (cfg.diff_method == "fd4") return DiffEngine::finite(cfg.step_scale);
    DiffEngine e;
    e.step_scale = cfg.step_scale;
    return e;
}

std::vector<CheckReport> run_suite(const RunConfig& cfg)
{
    const DiffEngine engine = engine_of(cfg);
    const Example ex = make_example(cfg.example, engine);
    const Context ctx{cfg, ex, engine, ex.domain->samples(static_cast<std::size_t>(cfg.samples), cfg.seed)};

    std::vector<std::string> names = cfg.checks.empty() ? check_names() : cfg.checks;
    std::sort(names.begin(), names.end());
    std::vector<std::future<CheckReport>> running;
    for (const auto& name : names) {
        const auto it = registry().find(name);
        if (it == registry().end()) throw ConfigError("unknown check '" + name + "'");
        running.push_back(std::async(std::launch::async, it->second, std::cref(ctx)));
    }
    std::vector<CheckReport> out;
    for (auto& f : running) {
        CheckReport r = f.get();
        r.pass = r.max_abs_defect < cfg.tolerance;
        out.push_back(std::move(r));
    }
    return out;
}

bool all_pass(const std::vector<CheckReport>& reports)
{
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
}

std::string format_number(double v)
{
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string quote(const std::string& s)
{
    return nlohmann::json(s).dump();
}

std::string number_list(const Vec& v)
{
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_number(v[i]);
    return out + "]";
}

}  // namespace

std::string render_report(const RunConfig& cfg, const std::vector<CheckReport>& reports)
{
    std::string out = "{\n  \"config\": {\n";
    out += "    \"checks\": [";
    for (std::size_t i = 0; i < cfg.checks.size(); ++i) out += (i ? ", " : "") + quote(cfg.checks[i]);
    out += "],\n";
    out += "    \"diff_method\": " + quote(cfg.diff_method) + ",\n";
    out += "    \"example\": " + quote(cfg.example) + ",\n";
    out += "    \"samples\": " + std::to_string(cfg.samples) + ",\n";
    out += "    \"seed\": " + std::to_string(cfg.seed) + ",\n";
    out += "    \"step_scale\": " + format_number(cfg.step_scale) + ",\n";
    out += "    \"tolerance\": " + format_number(cfg.tolerance) + "\n";
    out += "  },\n  \"reports\": [";
    for (std::size_t k = 0; k < reports.size(); ++k) {
        const CheckReport& r = reports[k];
        out += k ? ",\n" : "\n";
        out += "    {\n";
        out += "      \"check\": " + quote(r.check) + ",\n";
        if (!r.detail.empty()) out += "      \"detail\": " + quote(r.detail) + ",\n";
        out += "      \"max_abs_defect\": " + format_number(r.max_abs_defect) + ",\n";
        out += "      \"pass\": " + std::string(r.pass ? "true" : "false") + ",\n";
        out += "      \"samples_used\": " + std::to_string(r.samples_used) + ",\n";
        out += "      \"worst_sample\": ";
        if (r.worst_sample)
            out += "{\"x\": " + number_list(r.worst_sample->x) + ", \"y\": " + number_list(r.worst_sample->y) + "}";
        else
            out += "null";
        out += "\n    }";
    }
    out += reports.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

std::vector<std::string> object_names()
{
    return {"L",        "N",         "berwald", "cartan",           "chern",   "ell",
            "g",        "landsberg", "legendre_residue", "nonlinear_residue", "phi", "spray",
            "torsion"};
}

TensorField example_object(const Example& ex, const std::string& object, const DiffEngine& engine)
{
    auto need_l = [&]() -> const Lagrangian& {
        if (!ex.lagrangian) throw ConfigError("example '" + ex.name + "' has no Lagrangian for object '" + object + "'");
        return *ex.lagrangian;
    };
    auto need_n = [&]() -> NonlinearConnection {
        if (ex.nonlinear) return *ex.nonlinear;
        return canonical_nonlinear(need_l(), engine);
    };
    if (object == "L") return need_l().field();
    if (object == "ell") return legendre_of(need_l(), {}, engine).field();
    if (object == "phi") return need_l().phi();
    if (object == "g") {
        if (ex.metric) return ex.metric->field();
        return need_l().phi();
    }
    if (object == "spray") {
        if (ex.nonlinear) return lower_connection(*ex.nonlinear).field();
        return canonical_spray(need_l(), engine).field();
    }
    if (object == "N") return need_n().field();
    if (object == "berwald") {
        if (ex.nonlinear) return raise_connection(*ex.nonlinear, engine).field();
        return berwald_connection(need_l(), engine).field();
    }
    if (object == "chern") return chern_connection(need_l(), engine).field();
    if (object == "landsberg") return landsberg_tensor(need_l(), engine);
    if (object == "cartan") return cartan_tensor(need_l(), engine);
    if (object == "torsion") return torsion(need_n(), engine);
    if (object == "nonlinear_residue") return nonlinear_residue(need_n(), engine);
    if (object == "legendre_residue") return legendre_residue(legendre_of(need_l(), {}, engine), engine);
    throw ConfigError("unknown object '" + object + "'");
}

}  // namespace finsler
