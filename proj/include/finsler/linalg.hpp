#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "finsler/dual.hpp"

namespace finsler {

inline double real_part(double v) { return v; }
inline double real_part(const Dual& v) { return v.value(); }

// Inverse of a row-major n x n matrix by Gauss-Jordan elimination with
// scaled partial pivoting. Pivot selection looks at real parts only, so the
// same code differentiates cleanly when T is Dual. Returns nullopt when the
// best scaled pivot falls below `threshold`.
template <class T>
std::optional<std::vector<T>> invert(std::vector<T> a, int n, double threshold = 1e-12)
{
    std::vector<T> inv(static_cast<std::size_t>(n * n), T(0.0));
    for (int i = 0; i < n; ++i) inv[i * n + i] = T(1.0);

    std::vector<double> scale(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale[i] = std::max(scale[i], std::abs(real_part(a[i * n + j])));

    for (int col = 0; col < n; ++col) {
        int piv = -1;
        double best = -1.0;
        for (int r = col; r < n; ++r) {
            if (scale[r] == 0.0) continue;
            const double m = std::abs(real_part(a[r * n + col])) / scale[r];
            if (m > best) {
                best = m;
                piv = r;
            }
        }
        if (piv < 0 || best < threshold) return std::nullopt;
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a[piv * n + j], a[col * n + j]);
                std::swap(inv[piv * n + j], inv[col * n + j]);
            }
            std::swap(scale[piv], scale[col]);
        }
        const T p = T(1.0) / a[col * n + col];
        for (int j = 0; j < n; ++j) {
            a[col * n + j] = a[col * n + j] * p;
            inv[col * n + j] = inv[col * n + j] * p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const T f = a[r * n + col];
            for (int j = 0; j < n; ++j) {
                a[r * n + j] = a[r * n + j] - f * a[col * n + j];
                inv[r * n + j] = inv[r * n + j] - f * inv[col * n + j];
            }
        }
    }
    return inv;
}

// Determinant after scaling every row to unit Euclidean norm.
double scaled_determinant(const std::vector<double>& a, int n);

// Eigenvalues of the symmetric part of a, ascending.
std::vector<double> symmetric_eigenvalues(const std::vector<double>& a, int n);

double max_asymmetry(const std::vector<double>& a, int n);

}  // namespace finsler
