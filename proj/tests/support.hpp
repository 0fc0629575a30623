#pragma once

// Independent oracles for the unit tests. Everything here works on plain
// doubles and does not touch the library's Dual type or its fd4 stencil.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Scalar = std::function<double(const Vec&)>;

// Richardson-extrapolated central difference (three halvings).
inline double partial(const Scalar& f, Vec p, int k, double h = 1e-3)
{
    auto central = [&](double step) {
        Vec a = p, b = p;
        a[k] += step;
        b[k] -= step;
        return (f(a) - f(b)) / (2.0 * step);
    };
    double d1 = central(h), d2 = central(h / 2), d3 = central(h / 4);
    double e1 = (4.0 * d2 - d1) / 3.0, e2 = (4.0 * d3 - d2) / 3.0;
    return (16.0 * e2 - e1) / 15.0;
}

inline Vec gradient(const Scalar& f, const Vec& p)
{
    Vec g(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) g[k] = partial(f, p, static_cast<int>(k));
    return g;
}

// Hessian from differences of analytic-free gradients, row-major.
inline Vec hessian(const Scalar& f, const Vec& p, double h = 1e-3)
{
    const std::size_t n = p.size();
    Vec H(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        Scalar dj = [&, j](const Vec& q) { return partial(f, q, static_cast<int>(j), h); };
        for (std::size_t i = 0; i < n; ++i) H[i * n + j] = partial(dj, p, static_cast<int>(i), h);
    }
    return H;
}

inline double max_abs_diff(const Vec& a, const Vec& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const Vec& a)
{
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

// Levi-Civita symbols of a conformally flat metric e^{2 sigma} delta:
// Gamma^i_jk = delta^i_j s_k + delta^i_k s_j - delta_jk s^i, s = grad sigma.
inline Vec conformal_christoffel(const Vec& grad_sigma)
{
    const int n = static_cast<int>(grad_sigma.size());
    Vec G(static_cast<std::size_t>(n * n * n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = 0.0;
                if (i == j) v += grad_sigma[k];
                if (i == k) v += grad_sigma[j];
                if (j == k) v -= grad_sigma[i];
                G[(i * n + j) * n + k] = v;
            }
    return G;
}

}  // namespace oracle
