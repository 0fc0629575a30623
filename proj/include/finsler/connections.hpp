#pragma once

#include <string>
#include <vector>

#include "finsler/field.hpp"
#include "finsler/metrics.hpp"

namespace finsler {

// Spray coefficients G^i; the spray vector is y^i d/dx^i - 2 G^i d/dy^i.
class Spray {
public:
    explicit Spray(TensorField g);
    const TensorField& field() const { return g_; }

private:
    TensorField g_;
};

// N^i_j; horizontal frame d/dx^j - N^a_j d/dy^a.
class NonlinearConnection {
public:
    explicit NonlinearConnection(TensorField n);
    const TensorField& field() const { return n_; }

private:
    TensorField n_;
};

// Gamma^i_jk, 0-homogeneous.
class AnisotropicConnection {
public:
    explicit AnisotropicConnection(TensorField gamma);
    const TensorField& field() const { return gamma_; }

private:
    TensorField gamma_;
};

// N^i_j = G^i_{.j}
NonlinearConnection raise_connection(const Spray& g, const DiffEngine& engine = {});
// Gamma^i_jk = N^i_{j.k}
AnisotropicConnection raise_connection(const NonlinearConnection& n, const DiffEngine& engine = {});

// N^i_j = Gamma^i_ja y^a
NonlinearConnection lower_connection(const AnisotropicConnection& gamma);
// G^i = 1/2 N^i_a y^a
Spray lower_connection(const NonlinearConnection& n);

// N - d(1/2 iC N); equals 1/2 Tor^i_ja y^a.
TensorField nonlinear_residue(const NonlinearConnection& n, const DiffEngine& engine = {});
// Tor^i_jk = N^i_{j.k} - N^i_{k.j}
TensorField torsion(const NonlinearConnection& n, const DiffEngine& engine = {});
// Gamma - d(iC Gamma)
TensorField anisotropic_residue(const AnisotropicConnection& gamma, const DiffEngine& engine = {});

// G^i = 1/4 g^ic (d_a g_cb + d_b g_ac - d_c g_ab) y^a y^b with g = phi.
Spray canonical_spray(const Lagrangian& l, const DiffEngine& engine = {});
NonlinearConnection canonical_nonlinear(const Lagrangian& l, const DiffEngine& engine = {});

// d N (N the canonical nonlinear connection)
AnisotropicConnection berwald_connection(const Lagrangian& l, const DiffEngine& engine = {});
// 1/2 g^il (D_j g_lk + D_k g_lj - D_l g_jk), D_j = d/dx^j - N^a_j d/dy^a
AnisotropicConnection chern_connection(const Lagrangian& l, const DiffEngine& engine = {});
// Chern - Berwald
TensorField landsberg_tensor(const Lagrangian& l, const DiffEngine& engine = {});

struct Trajectory {
    std::vector<Sample> states;
    bool truncated = false;
    std::string reason;
};

// Classical RK4 for x' = y, y' = -2 G(x, y). Leaving the domain stops the
// integration and flags the partial result.
Trajectory geodesic_integrate(const Spray& g, const std::vector<double>& x0, const std::vector<double>& y0,
                              double dt, int steps);

}  // namespace finsler
