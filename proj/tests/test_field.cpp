#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "finsler/examples.hpp"
#include "finsler/field.hpp"
#include "finsler/random_fields.hpp"
#include "support.hpp"

using namespace finsler;

namespace {

Domain plane()
{
    return punctured_domain("plane", 2, 5.0);
}

TensorField euclidean(const Domain& d)
{
    return TensorField("L", d, 0, 0, 2.0, [](const Point&, const Point& y) { return Components{y[0] * y[0] + y[1] * y[1]}; });
}

double quartic_plain(const oracle::Vec& y)
{
    return std::sqrt(std::pow(y[0], 4) + std::pow(y[1], 4));
}

TensorField quartic(const Domain& d)
{
    return TensorField("Q", d, 0, 0, 2.0, [](const Point&, const Point& y) {
        return Components{sqrt(y[0] * y[0] * y[0] * y[0] + y[1] * y[1] * y[1] * y[1])};
    });
}

}  // namespace

TEST_CASE("evaluation of simple fields")
{
    const Domain d = plane();
    CHECK(euclidean(d).evaluate({0.3, -1.0}, {3.0, 4.0})[0] == 25.0);
    CHECK(liouville_field(d).evaluate({0.0, 0.0}, {3.0, 4.0}) == std::vector<double>{3.0, 4.0});
    const auto delta = kronecker_field(d).evaluate({1.0, 2.0}, {-0.5, 0.25});
    CHECK(delta == std::vector<double>{1.0, 0.0, 0.0, 1.0});
}

TEST_CASE("evaluation outside the domain throws")
{
    const Domain d = plane();
    const TensorField l = euclidean(d);
    CHECK_THROWS_AS(l.evaluate({0.0, 0.0}, {0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(l.evaluate({9.0, 0.0}, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(l.evaluate({0.0}, {1.0}), DomainError);
}

TEST_CASE("vertical derivative appends the last covariant index")
{
    const Domain d = plane();
    const TensorField dl = vertical_derivative(euclidean(d));
    CHECK(dl.co() == 1);
    CHECK(dl.alpha() == 1.0);
    CHECK(dl.evaluate({0.0, 0.0}, {3.0, 4.0}) == std::vector<double>{6.0, 8.0});

    const TensorField dc = vertical_derivative(liouville_field(d));
    CHECK(dc.contra() == 1);
    CHECK(dc.co() == 1);
    CHECK(dc.alpha() == 0.0);
    CHECK(dc.evaluate({0.0, 0.0}, {3.0, 4.0}) == std::vector<double>{1.0, 0.0, 0.0, 1.0});

    // order check on a field whose derivative is not symmetric: T_i = y^1 y^i, T_{i.k}
    const TensorField t("T", d, 0, 1, 2.0, [](const Point&, const Point& y) { return Components{y[0] * y[0], y[0] * y[1]}; });
    const auto v = vertical_derivative(t).evaluate({0.0, 0.0}, {2.0, 3.0});
    CHECK(v == std::vector<double>{4.0, 0.0, 3.0, 2.0});
}

TEST_CASE("quartic gradient against the hand formula and the difference oracle")
{
    const Domain d = plane();
    const auto g = vertical_derivative(quartic(d)).evaluate({0.0, 0.0}, {1.0, 1.0});
    CHECK(g[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(g[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    for (const Sample& s : d->samples(30, 5)) {
        const auto exact = vertical_derivative(quartic(d)).evaluate(s.x, s.y);
        const auto ref = oracle::gradient(quartic_plain, s.y);
        CHECK(oracle::max_abs_diff(exact, ref) < 1e-8 * std::max(1.0, oracle::max_abs(ref)));
    }
}

TEST_CASE("liouville contraction")
{
    const Domain d = plane();
    CHECK(liouville_contract(vertical_derivative(euclidean(d))).evaluate({0.0, 0.0}, {3.0, 4.0})[0] == 50.0);
    const TensorField g("g", d, 0, 2, 0.0, [](const Point&, const Point&) { return Components{1.0, 0.0, 0.0, 1.0}; });
    CHECK(liouville_contract(g).evaluate({0.0, 0.0}, {3.0, 4.0}) == std::vector<double>{3.0, 4.0});
    CHECK(liouville_contract(vertical_derivative(liouville_field(d))).evaluate({0.0, 0.0}, {3.0, 4.0}) ==
          std::vector<double>{3.0, 4.0});
    CHECK(liouville_contract(g).alpha() == 1.0);
    CHECK_THROWS_AS(liouville_contract(euclidean(d)), RankError);

    // contraction uses the LAST covariant slot
    const TensorField a("A", d, 0, 2, 0.0, [](const Point&, const Point&) { return Components{1.0, 2.0, 3.0, 4.0}; });
    CHECK(liouville_contract(a).evaluate({0.0, 0.0}, {1.0, 10.0}) == std::vector<double>{21.0, 43.0});
}

TEST_CASE("homogeneity defect")
{
    const Domain d = plane();
    CHECK(homogeneity_defect(euclidean(d), {}, {0.0, 0.0}, {1.3, -0.2})[0] == 0.0);
    const TensorField wrong("y1", d, 0, 0, 2.0, [](const Point&, const Point& y) { return Components{y[0]}; });
    CHECK(homogeneity_defect(wrong, {}, {0.0, 0.0}, {1.0, 1.0})[0] == doctest::Approx(-1.0));
    CHECK(std::abs(homogeneity_defect(quartic(d), DiffEngine::finite(), {0.0, 0.0}, {1.0, 1.0})[0]) < 1e-8);
    CHECK(std::abs(homogeneity_defect(quartic(d), {}, {0.0, 0.0}, {1.0, 1.0})[0]) < 1e-14);
}

TEST_CASE("fd4 matches exact derivatives of cubic polynomials for |y| <= 10")
{
    const Domain d = punctured_domain("wide", 2, 1.0);
    const TensorField p("p", d, 0, 0, 3.0, [](const Point& x, const Point& y) {
        return Components{(1.0 + x[0]) * y[0] * y[0] * y[1] - 2.0 * y[1] * y[1] * y[1] + 0.5 * y[0] * y[0] * y[0]};
    });
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 100; ++k) {
        const std::vector<double> x{0.3, -0.1}, y{u(rng), u(rng)};
        const auto a = vertical_derivative(p, DiffEngine::exact()).evaluate(x, y);
        const auto f = vertical_derivative(p, DiffEngine::finite()).evaluate(x, y);
        CHECK(oracle::max_abs_diff(a, f) <= 1e-8 * std::max(1.0, oracle::max_abs(a)));
    }
}

TEST_CASE("property: iC d T = alpha T on random homogeneous fields")
{
    const Domain d = plane();
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const int r = trial % 2, s = (trial / 2) % 3;
        const double alpha = static_cast<int>(trial % 5) - 2;
        const TensorField t = random_field(d, r, s, alpha, rng);
        const TensorField back = liouville_contract(vertical_derivative(t));
        for (const Sample& p : d->samples(8, 100 + trial)) {
            const auto a = back.evaluate(p.x, p.y);
            const auto b = t.evaluate(p.x, p.y);
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(a[i] == doctest::Approx(alpha * b[i]).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("property: vertical derivative is linear")
{
    const Domain d = plane();
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const TensorField a = random_field(d, 1, 1, 1.0, rng), b = random_field(d, 1, 1, 1.0, rng);
        const TensorField lhs = vertical_derivative(add(scale(2.0, a), b));
        const TensorField rhs = add(scale(2.0, vertical_derivative(a)), vertical_derivative(b));
        for (const Sample& p : d->samples(5, trial)) CHECK(oracle::max_abs_diff(lhs.evaluate(p.x, p.y), rhs.evaluate(p.x, p.y)) < 1e-12);
    }
}

TEST_CASE("fd4 and exact paths agree on every registry Lagrangian")
{
    for (const auto& name : example_names()) {
        const Example ex = make_example(name);
        if (!ex.lagrangian) continue;
        const TensorField& l = ex.lagrangian->field();
        for (const Sample& s : ex.domain->samples(40, 8)) {
            const auto a = vertical_derivative(l, DiffEngine::exact()).evaluate(s.x, s.y);
            const auto f = vertical_derivative(l, DiffEngine::finite()).evaluate(s.x, s.y);
            CHECK(oracle::max_abs_diff(a, f) <= 1e-6 * std::max(1.0, oracle::max_abs(a)));
        }
    }
}

TEST_CASE("analytic hints are used by the analytic engine")
{
    const Domain d = plane();
    // deliberately wrong hint, to see that it is honoured
    const TensorField l = euclidean(d).with_vertical_derivative([](const Point&, const Point& y) {
        return Components{3.0 * y[0], 3.0 * y[1]};
    });
    CHECK(vertical_derivative(l).evaluate({0.0, 0.0}, {1.0, 2.0}) == std::vector<double>{3.0, 6.0});
    CHECK(vertical_derivative(l, DiffEngine::finite()).evaluate({0.0, 0.0}, {1.0, 2.0})[0] == doctest::Approx(2.0));
}

TEST_CASE("domains are conic and samplers honour membership")
{
    for (const auto& name : example_names()) {
        const Example ex = make_example(name);
        for (const Sample& s : ex.domain->samples(200, 1)) {
            CHECK(ex.domain->contains(s.x, s.y));
            for (double lambda : {0.5, 2.0}) {
                std::vector<double> y = s.y;
                for (double& v : y) v *= lambda;
                CHECK(ex.domain->contains(s.x, y));
            }
        }
    }
}

TEST_CASE("samples are reproducible from the seed")
{
    const Domain d = plane();
    const auto a = d->samples(10, 42), b = d->samples(10, 42), c = d->samples(10, 43);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
    }
    CHECK(a[0].y != c[0].y);
}

TEST_CASE("mixed x and y derivatives")
{
    const Domain d = plane();
    const TensorField f("f", d, 0, 0, 2.0, [](const Point& x, const Point& y) {
        return Components{exp(x[0] * x[1]) * y[0] * y[1]};
    });
    const std::vector<double> x{0.4, -0.7}, y{1.1, 0.6};
    // d/dx^j d/dy^k f: index order (k, j)
    const auto v = x_derivative(vertical_derivative(f, DiffEngine::exact()), DiffEngine::exact()).evaluate(x, y);
    const double e = std::exp(x[0] * x[1]);
    CHECK(v[0] == doctest::Approx(x[1] * e * y[1]));
    CHECK(v[1] == doctest::Approx(x[0] * e * y[1]));
    CHECK(v[2] == doctest::Approx(x[1] * e * y[0]));
    CHECK(v[3] == doctest::Approx(x[0] * e * y[0]));
    const auto w = x_derivative(vertical_derivative(f), DiffEngine{}).evaluate(x, y);
    CHECK(oracle::max_abs_diff(v, w) < 1e-8);
}
