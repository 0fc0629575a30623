#include "finsler/random_fields.hpp"

#include <cmath>

namespace finsler {

TensorField random_field(const Domain& d, int r, int s, double alpha, std::mt19937_64& rng, double amplitude)
{
    const int n = d->dim();
    std::size_t size = 1;
    for (int k = 0; k < r + s; ++k) size *= static_cast<std::size_t>(n);
    std::uniform_real_distribution<double> u(-amplitude, amplitude);

    // Per component: a, b[n], Q[n*n]
    const std::size_t stride = static_cast<std::size_t>(1 + n + n * n);
    std::vector<double> coef(size * stride);
    for (double& c : coef) c = u(rng);

    auto f = [coef, size, stride, n, alpha](const Point& x, const Point& y) {
        Dual norm2(0.0);
        for (int a = 0; a < n; ++a) norm2 += y[a] * y[a];
        const Dual radial = pow(norm2, 0.5 * (alpha - 2.0));
        Components out(size, Dual(0.0));
        for (std::size_t c = 0; c < size; ++c) {
            const double* p = &coef[c * stride];
            Dual lin(p[0]);
            for (int a = 0; a < n; ++a) lin += p[1 + a] * x[a];
            Dual quad(0.0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) quad += p[1 + n + a * n + b] * y[a] * y[b];
            out[c] = lin * quad * radial;
        }
        return out;
    };
    return TensorField("random(" + std::to_string(r) + "," + std::to_string(s) + ")", d, r, s, alpha, f);
}

}  // namespace finsler
