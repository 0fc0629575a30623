#pragma once

#include <vector>

#include "finsler/connections.hpp"
#include "finsler/field.hpp"
#include "finsler/metrics.hpp"

namespace finsler {

// Natural-chart coefficients of a linear connection on the vertical bundle:
// hat1^i_jk d_x^i = nabla_{d_x^j} d_x^k, hat2^i_jk d_x^i = nabla_{d_y^j} d_x^k.
class LinearConnection {
public:
    LinearConnection(TensorField hat1, TensorField hat2);

    const TensorField& hat1() const { return hat1_; }
    const TensorField& hat2() const { return hat2_; }

private:
    TensorField hat1_;
    TensorField hat2_;
};

// nabla_X Z for X = X_h^j delta_j + X_v^j d_y^j, the horizontal frame taken from n.
std::vector<double> covariant_derivative(const LinearConnection& c, const NonlinearConnection& n,
                                         const std::vector<double>& x_h, const std::vector<double>& x_v,
                                         const TensorField& z, const std::vector<double>& x,
                                         const std::vector<double>& y, const DiffEngine& engine = {});

// Contraction hat2^i_jc y^c below which B is taken to be exactly the identity.
inline constexpr double kStrongRegularity = 1e-8;

struct BMatrix {
    std::vector<double> matrix;  // (delta + hat2 y)^-1 when regular
    bool regular = false;
    bool strongly_regular = false;
    double contraction = 0.0;  // max |hat2^i_jc y^c|
};

BMatrix b_matrix(const LinearConnection& c, const std::vector<double>& x, const std::vector<double>& y);

// N^a_i = B^a_b hat1^b_ic y^c; evaluation throws RegularityError where B does not exist.
NonlinearConnection induced_nonlinear(const LinearConnection& c);

// Gamma^i_jk = hat1^i_jk - B^b_a hat1^a_jc y^c hat2^i_bk
AnisotropicConnection project_intrinsic(const LinearConnection& c);

struct HorizontalSplit {
    AnisotropicConnection gamma;  // hat1 - N hat2
    TensorField delta;            // hat2, the residue
};

HorizontalSplit project_with_N(const LinearConnection& c, const NonlinearConnection& n);

// Inverse of project_with_N: hat1 = Gamma + N^b_j Delta^i_bk, hat2 = Delta.
LinearConnection rebuild_linear(const AnisotropicConnection& gamma, const TensorField& delta,
                                const NonlinearConnection& n);
// Same with N = iC Gamma.
LinearConnection rebuild_linear(const AnisotropicConnection& gamma, const TensorField& delta);

// (Gamma, 0)
LinearConnection embed_trivial(const AnisotropicConnection& gamma);

// C^i_jk = phi^il 1/2 phi_{lj.k}
TensorField cartan_tensor(const Lagrangian& l, const DiffEngine& engine = {});

enum class ClassicalKind { berwald, chern, hashiguchi, cartan };

const char* to_string(ClassicalKind k);

LinearConnection classical_linear(const Lagrangian& l, ClassicalKind kind, const DiffEngine& engine = {});

}  // namespace finsler
