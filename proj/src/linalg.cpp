#include "finsler/linalg.hpp"

#include <Eigen/Dense>

namespace finsler {

double scaled_determinant(const std::vector<double>& a, int n)
{
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        double norm = 0.0;
        for (int j = 0; j < n; ++j) norm += a[i * n + j] * a[i * n + j];
        norm = std::sqrt(norm);
        // rows at rounding level count as zero, otherwise scaling would inflate noise
        for (int j = 0; j < n; ++j) m(i, j) = norm > 1e-12 ? a[i * n + j] / norm : 0.0;
    }
    return m.partialPivLu().determinant();
}

std::vector<double> symmetric_eigenvalues(const std::vector<double>& a, int n)
{
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = 0.5 * (a[i * n + j] + a[j * n + i]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + n};
}

double max_asymmetry(const std::vector<double>& a, int n)
{
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) worst = std::max(worst, std::abs(a[i * n + j] - a[j * n + i]));
    return worst;
}

}  // namespace finsler
