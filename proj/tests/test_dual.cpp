#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "finsler/dual.hpp"
#include "finsler/linalg.hpp"
#include "support.hpp"

using finsler::Dual;

TEST_CASE("first derivatives of elementary functions")
{
    const double x0 = 0.7;
    const Dual x = Dual(x0) + Dual::infinitesimal(0);
    CHECK(exp(x).derivative(0).value() == doctest::Approx(std::exp(x0)).epsilon(1e-15));
    CHECK(log(x).derivative(0).value() == doctest::Approx(1.0 / x0).epsilon(1e-15));
    CHECK(sqrt(x).derivative(0).value() == doctest::Approx(0.5 / std::sqrt(x0)).epsilon(1e-15));
    CHECK(sin(x).derivative(0).value() == doctest::Approx(std::cos(x0)).epsilon(1e-15));
    CHECK(cos(x).derivative(0).value() == doctest::Approx(-std::sin(x0)).epsilon(1e-15));
    CHECK((1.0 / x).derivative(0).value() == doctest::Approx(-1.0 / (x0 * x0)).epsilon(1e-15));
    CHECK(pow(x, 2.5).derivative(0).value() == doctest::Approx(2.5 * std::pow(x0, 1.5)).epsilon(1e-15));
}

TEST_CASE("nested tags give higher and mixed partials")
{
    // f(a, b) = a^3 b^2 with a, b each carrying two tags
    const double a0 = 1.3, b0 = -0.4;
    Dual a = Dual(a0) + Dual::infinitesimal(0);
    Dual b = Dual(b0) + Dual::infinitesimal(1);
    Dual a2 = a + Dual::infinitesimal(2);
    Dual b3 = b + Dual::infinitesimal(3);
    Dual f = a2 * a2 * a2 * b3 * b3;
    Dual fab = f.derivative(3).derivative(2);  // 6 a^2 b
    CHECK(fab.value() == doctest::Approx(6 * a0 * a0 * b0).epsilon(1e-14));
    CHECK(fab.derivative(1).value() == doctest::Approx(6 * a0 * a0).epsilon(1e-14));
    CHECK(fab.derivative(1).derivative(0).value() == doctest::Approx(12 * a0).epsilon(1e-14));

    Dual g = a2 * a2 * a2 * b * b;  // tags 0 (a), 1 (b), 2 (a again)
    Dual ga = g.derivative(2);      // 3 a^2 b^2
    CHECK(ga.value() == doctest::Approx(3 * a0 * a0 * b0 * b0).epsilon(1e-14));
    CHECK(ga.derivative(1).value() == doctest::Approx(6 * a0 * a0 * b0).epsilon(1e-14));
    CHECK(ga.derivative(1).derivative(0).value() == doctest::Approx(12 * a0 * b0).epsilon(1e-14));
}

TEST_CASE("composite functions agree with the Richardson oracle at depth three")
{
    auto plain = [](const oracle::Vec& v) { return std::exp(v[0]) * std::sqrt(1.0 + v[0] * v[0]) / (2.0 + std::sin(v[0])); };
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double x0 = U(rng);
        Dual x = Dual(x0) + Dual::infinitesimal(0) + Dual::infinitesimal(1) + Dual::infinitesimal(2);
        Dual f = exp(x) * sqrt(1.0 + x * x) / (2.0 + sin(x));
        const double third = f.derivative(2).derivative(1).derivative(0).value();
        oracle::Scalar d1 = [&](const oracle::Vec& p) { return oracle::partial(plain, p, 0, 1e-2); };
        oracle::Scalar d2 = [&](const oracle::Vec& p) { return oracle::partial(d1, p, 0, 1e-2); };
        const double ref = oracle::partial(d2, {x0}, 0, 1e-2);
        CHECK(third == doctest::Approx(ref).epsilon(1e-5));
    }
}

TEST_CASE("derivative refuses to skip a live higher tag")
{
    Dual a = Dual(1.0) + Dual::infinitesimal(1);
    CHECK_THROWS_AS(a.derivative(0), std::logic_error);
    CHECK(a.derivative(2).value() == 0.0);
}

TEST_CASE("Gauss-Jordan inverse with dual entries differentiates A^-1")
{
    // d(A^-1) = -A^-1 dA A^-1
    const int n = 3;
    std::vector<double> A = {4, 1, 0.5, 1, 3, 0.2, 0.5, 0.2, 2};
    std::vector<double> dA = {0.1, 0.2, 0.0, -0.3, 0.5, 0.1, 0.0, 0.4, -0.2};
    std::vector<Dual> Ad(9);
    for (int i = 0; i < 9; ++i) Ad[i] = Dual(A[i]) + dA[i] * Dual::infinitesimal(0);
    auto inv = finsler::invert(Ad, n);
    REQUIRE(inv.has_value());
    auto inv0 = finsler::invert(A, n);
    REQUIRE(inv0.has_value());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double ref = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) ref -= (*inv0)[i * n + a] * dA[a * n + b] * (*inv0)[b * n + j];
            CHECK((*inv)[i * n + j].derivative(0).value() == doctest::Approx(ref).epsilon(1e-12));
        }
    std::vector<double> singular = {1, 2, 2, 4};
    CHECK_FALSE(finsler::invert(singular, 2).has_value());
}

TEST_CASE("scaled determinant and eigenvalues")
{
    CHECK(finsler::scaled_determinant({2, 0, 0, 3}, 2) == doctest::Approx(1.0));
    CHECK(std::abs(finsler::scaled_determinant({1, 2, 2, 4}, 2)) < 1e-15);
    auto ev = finsler::symmetric_eigenvalues({-1, 0, 0, 1}, 2);
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(1.0));
}
