#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "finsler/examples.hpp"
#include "finsler/functional.hpp"
#include "finsler/random_fields.hpp"
#include "support.hpp"

using namespace finsler;

namespace {

Domain plane()
{
    return punctured_domain("plane", 2, 1.0);
}

Lagrangian euclidean(const Domain& d)
{
    return Lagrangian(TensorField("L", d, 0, 0, 2.0, [](const Point&, const Point& y) {
        return Components{y[0] * y[0] + y[1] * y[1]};
    }));
}

AnisotropicConnection levi_civita(const Domain& d)
{
    const oracle::Vec g = oracle::conformal_christoffel({1.0, 0.0});
    return AnisotropicConnection(TensorField("LC", d, 1, 2, 0.0, [g](const Point&, const Point&) {
        return Components(g.begin(), g.end());
    }));
}

NonlinearConnection handmade(const Domain& d)
{
    return NonlinearConnection(TensorField("N", d, 1, 1, 1.0, [](const Point&, const Point& y) {
        return Components{y[1], 0.0, 0.0, 0.0};
    }));
}

Density constant(double c)
{
    return [c](const LevelObject&, const std::vector<double>&, const std::vector<double>&) { return c; };
}

Density component(std::size_t k)
{
    return [k](const LevelObject& o, const std::vector<double>& x, const std::vector<double>& y) {
        return coefficients(o, x, y).at(k);
    };
}

// nonlinear in the coefficients, so that shifts cannot cancel by accident
Density wiggly(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> w(32);
    for (double& v : w) v = u(rng);
    return [w](const LevelObject& o, const std::vector<double>& x, const std::vector<double>& y) {
        const auto c = coefficients(o, x, y);
        double s = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) s += w[i % w.size()] * c[i];
        return std::sin(s) + 0.1 * s * s + x[0] * y[1];
    };
}

Quadrature single(std::vector<double> x, std::vector<double> y, double w)
{
    return {{Sample{std::move(x), std::move(y)}}, {w}};
}

// (1,s) field with the last slot killed by y: A w_k, w = (-y2, y1)/|y|
TensorField kernel_field(const Domain& d, int s, double alpha, std::mt19937_64& rng)
{
    const TensorField a = random_field(d, 1, s - 1, alpha, rng);
    return TensorField("k", d, 1, s, alpha, [a](const Point& x, const Point& y) {
        const Components m = a(x, y);
        const Dual r = sqrt(y[0] * y[0] + y[1] * y[1]);
        const Dual w[2] = {-y[1] / r, y[0] / r};
        Components v;
        for (const Dual& e : m)
            for (const Dual& wk : w) v.push_back(e * wk);
        return v;
    });
}

}  // namespace

TEST_CASE("levels")
{
    const Domain d = plane();
    CHECK(level_of(Spray(zero_field(d, 1, 0, 2.0))) == Level::spray);
    CHECK(level_of(euclidean(d)) == Level::lagrangian);
    CHECK(level_of(embed_trivial(levi_civita(d))) == Level::linear);
    CHECK(std::string(to_string(Level::anis_metric)) == "anis-metric");
    CHECK(coefficients(embed_trivial(levi_civita(d)), {0.0, 0.0}, {1.0, 1.0}).size() == 16);
}

TEST_CASE("quadrature")
{
    const Domain d = plane();
    const Quadrature q = uniform_quadrature(*d, 25, 3);
    REQUIRE(q.points.size() == 25);
    double sum = 0.0;
    for (double w : q.weights) sum += w;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    const Quadrature r = uniform_quadrature(*d, 25, 3);
    for (std::size_t k = 0; k < 25; ++k) CHECK(q.points[k].y == r.points[k].y);
    CHECK_THROWS_AS(ActionFunctional(Level::spray, constant(1.0), Quadrature{q.points, {1.0}}), ShapeError);
}

TEST_CASE("evaluate_action")
{
    const Domain d = plane();
    const Quadrature q = uniform_quadrature(*d, 10, 1);
    CHECK(evaluate_action(ActionFunctional(Level::spray, constant(1.0), q), Spray(zero_field(d, 1, 0, 2.0))) ==
          doctest::Approx(1.0));

    // Gamma^1_11 at x1 = 0
    const ActionFunctional f(Level::anisotropic, component(0), single({0.0, 0.4}, {1.0, 2.0}, 1.0));
    CHECK(evaluate_action(f, levi_civita(d)) == 1.0);

    const ActionFunctional l(Level::lagrangian, component(0), single({0.0, 0.0}, {3.0, 4.0}, 2.0));
    CHECK(evaluate_action(l, euclidean(d)) == 50.0);

    CHECK_THROWS_AS(evaluate_action(l, levi_civita(d)), TypeError);
}

TEST_CASE("restrict_functional")
{
    const Domain d = plane();
    const Quadrature q = uniform_quadrature(*d, 20, 2);

    // the linear density only looks at hat2, which the embedding zeroes
    const Density hat2_norm = [](const LevelObject& o, const std::vector<double>& x, const std::vector<double>& y) {
        const auto c = coefficients(o, x, y);
        double s = 0.0;
        for (std::size_t k = c.size() / 2; k < c.size(); ++k) s += std::abs(c[k]);
        return s;
    };
    const ActionFunctional lin(Level::linear, hat2_norm, q);
    std::mt19937_64 rng(4);
    const ActionFunctional down = restrict_functional(lin, Level::linear, Level::anisotropic);
    CHECK(down.level() == Level::anisotropic);
    CHECK(evaluate_action(down, AnisotropicConnection(random_field(d, 1, 2, 0.0, rng))) == 0.0);

    // det g on the lagrangian side
    const Density det = [](const LevelObject& o, const std::vector<double>& x, const std::vector<double>& y) {
        const auto g = coefficients(o, x, y);
        return g[0] * g[3] - g[1] * g[2];
    };
    const ActionFunctional metric(Level::anis_metric, det, q);
    const ActionFunctional on_l = restrict_functional(metric, Level::anis_metric, Level::lagrangian);
    CHECK(evaluate_action(on_l, euclidean(d)) == doctest::Approx(1.0).epsilon(1e-14));

    const Example quartic = make_example("quartic2");
    const Quadrature qq = uniform_quadrature(*quartic.domain, 20, 5);
    const double direct = evaluate_action(ActionFunctional(Level::anis_metric, det, qq), fundamental_tensor(*quartic.lagrangian));
    const double restricted = evaluate_action(restrict_functional(ActionFunctional(Level::anis_metric, det, qq),
                                                                  Level::anis_metric, Level::lagrangian, DiffEngine::finite()),
                                              *quartic.lagrangian);
    CHECK(restricted == doctest::Approx(direct).epsilon(1e-6));

    // N^1_2 of the conformal canonical spray is -y2
    const Example conf = make_example("conformal2");
    const Quadrature qc = uniform_quadrature(*conf.domain, 20, 6);
    double expect = 0.0;
    for (std::size_t k = 0; k < qc.points.size(); ++k) expect -= qc.weights[k] * qc.points[k].y[1];
    const ActionFunctional n12(Level::nonlinear, component(1), qc);
    CHECK(evaluate_action(restrict_functional(n12, Level::nonlinear, Level::spray), canonical_spray(*conf.lagrangian)) ==
          doctest::Approx(expect).epsilon(1e-7));

    CHECK_THROWS_AS(restrict_functional(lin, Level::linear, Level::spray), UnsupportedTransition);
    CHECK_THROWS_AS(restrict_functional(on_l, Level::lagrangian, Level::anis_metric), UnsupportedTransition);
    CHECK_THROWS_AS(restrict_functional(lin, Level::anisotropic, Level::nonlinear), TypeError);
}

TEST_CASE("extend_functional")
{
    const Domain d = plane();
    const Quadrature q = uniform_quadrature(*d, 20, 7);
    std::mt19937_64 rng(8);
    const AnisotropicConnection gamma(random_field(d, 1, 2, 0.0, rng));
    const ActionFunctional f0(Level::anisotropic, wiggly(1), q);
    const ActionFunctional up = extend_functional(f0, Level::anisotropic, Level::linear);
    CHECK(up.level() == Level::linear);
    CHECK(evaluate_action(up, embed_trivial(gamma)) == doctest::Approx(evaluate_action(f0, gamma)).epsilon(1e-12));

    // a spray functional extended to N sees only iC N / 2
    const ActionFunctional g1(Level::spray, component(0), q);
    double expect = 0.0;
    for (std::size_t k = 0; k < q.points.size(); ++k) expect += q.weights[k] * 0.5 * q.points[k].y[0] * q.points[k].y[1];
    const ActionFunctional ext = extend_functional(g1, Level::spray, Level::nonlinear);
    CHECK(evaluate_action(ext, handmade(d)) == doctest::Approx(expect).epsilon(1e-14));
    const NonlinearConnection no_torsion = raise_connection(lower_connection(handmade(d)));
    CHECK(evaluate_action(ext, no_torsion) == doctest::Approx(expect).epsilon(1e-12));

    CHECK_THROWS_AS(extend_functional(g1, Level::spray, Level::anisotropic), UnsupportedTransition);
    CHECK_THROWS_AS(extend_functional(ActionFunctional(Level::lagrangian, constant(1.0), q), Level::lagrangian,
                                      Level::anis_metric),
                    UnsupportedTransition);

    // non-regular linear input
    SamplerSpec spec;
    spec.x_lo = {-1.0, -1.0};
    spec.x_hi = {1.0, 1.0};
    const Domain h = std::make_shared<const ConicDomain>(
        "y1>0", 2, [](const std::vector<double>&, const std::vector<double>& y) { return y[0] > 0.0; }, spec);
    const LinearConnection bad(levi_civita(h).field(), TensorField("h2", h, 1, 2, -1.0, [](const Point&, const Point& y) {
                                   Components v(8, Dual(0.0));
                                   v[0] = -1.0 / y[0];
                                   return v;
                               }));
    const ActionFunctional at(Level::anisotropic, component(0), single({0.0, 0.0}, {1.0, 2.0}, 1.0));
    CHECK_THROWS_AS(evaluate_action(extend_functional(at, Level::anisotropic, Level::linear), bad), RegularityError);
}

TEST_CASE("property: extend then restrict is the identity on values")
{
    const Domain d = plane();
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const Quadrature q = uniform_quadrature(*d, 10, 100 + trial);
        const Density dens = wiggly(200 + trial);
        const Spray g(random_field(d, 1, 0, 2.0, rng));
        const NonlinearConnection n(random_field(d, 1, 1, 1.0, rng));
        const AnisotropicConnection gamma(random_field(d, 1, 2, 0.0, rng));
        const std::pair<Level, Level> edges[] = {
            {Level::spray, Level::nonlinear}, {Level::nonlinear, Level::anisotropic}, {Level::anisotropic, Level::linear}};
        const LevelObject objs[] = {g, n, gamma};
        for (int e = 0; e < 3; ++e) {
            const auto [low, high] = edges[e];
            const ActionFunctional f0(low, dens, q);
            const ActionFunctional back = restrict_functional(extend_functional(f0, low, high), high, low);
            CHECK(evaluate_action(back, objs[e]) == doctest::Approx(evaluate_action(f0, objs[e])).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("property: gauge symmetrized functionals ignore residue shifts")
{
    const Domain d = plane();
    std::mt19937_64 rng(10);
    const Quadrature q = uniform_quadrature(*d, 10, 11);
    const Density dens = wiggly(12);
    const ActionFunctional sn = gauge_symmetrize(ActionFunctional(Level::nonlinear, dens, q), Level::nonlinear);
    const ActionFunctional sa = gauge_symmetrize(ActionFunctional(Level::anisotropic, dens, q), Level::anisotropic);
    const ActionFunctional sl = gauge_symmetrize(ActionFunctional(Level::linear, dens, q), Level::linear);
    const NonlinearConnection n(random_field(d, 1, 1, 1.0, rng));
    const AnisotropicConnection gamma(random_field(d, 1, 2, 0.0, rng));
    const TensorField delta = kernel_field(d, 2, -1.0, rng);
    const double vn = evaluate_action(sn, n), va = evaluate_action(sa, gamma), vl = evaluate_action(sl, rebuild_linear(gamma, delta));
    CHECK(vl == doctest::Approx(evaluate_action(ActionFunctional(Level::linear, dens, q), embed_trivial(gamma))).epsilon(1e-12));
    for (int k = 0; k < 50; ++k) {
        CHECK(evaluate_action(sn, NonlinearConnection(add(n.field(), kernel_field(d, 1, 1.0, rng)))) ==
              doctest::Approx(vn).epsilon(1e-9).scale(1.0));
        CHECK(evaluate_action(sa, AnisotropicConnection(add(gamma.field(), kernel_field(d, 2, 0.0, rng)))) ==
              doctest::Approx(va).epsilon(1e-9).scale(1.0));
        CHECK(evaluate_action(sl, rebuild_linear(gamma, add(delta, kernel_field(d, 2, -1.0, rng)))) ==
              doctest::Approx(vl).epsilon(1e-9).scale(1.0));
    }

    // a residue-blind density is left alone
    const ActionFunctional blind(Level::anisotropic, [](const LevelObject& o, const std::vector<double>& x,
                                                        const std::vector<double>& y) {
        const auto c = coefficients(o, x, y);
        return c[0] * y[0] * y[0] + (c[1] + c[2]) * y[0] * y[1] + c[3] * y[1] * y[1];
    }, q);
    CHECK(evaluate_action(gauge_symmetrize(blind, Level::anisotropic), gamma) ==
          doctest::Approx(evaluate_action(blind, gamma)).epsilon(1e-9));

    CHECK_THROWS_AS(gauge_symmetrize(ActionFunctional(Level::spray, dens, q), Level::spray), UnsupportedTransition);
}

TEST_CASE("symmetrized anisotropic functional agrees on Chern and Berwald")
{
    for (const auto& name : example_names()) {
        const Example ex = make_example(name);
        if (!ex.lagrangian) continue;
        CAPTURE(name);
        const Quadrature q = uniform_quadrature(*ex.domain, 10, 13);
        const ActionFunctional sa =
            gauge_symmetrize(ActionFunctional(Level::anisotropic, wiggly(14), q), Level::anisotropic);
        CHECK(evaluate_action(sa, chern_connection(*ex.lagrangian)) ==
              doctest::Approx(evaluate_action(sa, berwald_connection(*ex.lagrangian))).epsilon(1e-9).scale(1.0));
    }
}
