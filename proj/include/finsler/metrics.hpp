#pragma once

#include <vector>

#include "finsler/field.hpp"

namespace finsler {

// Thresholds shared by the validators.
inline constexpr double kSymmetryTolerance = 1e-8;
inline constexpr double kDeterminantFloor = 1e-10;

// Throws RegularityError naming the sample when the (0,2) field is not
// symmetric or has scaled |det| <= kDeterminantFloor there.
void require_nondegenerate(const TensorField& g, const std::vector<Sample>& samples, bool symmetric);

// 2-homogeneous scalar with cached fundamental tensor phi = 1/2 d d L.
class Lagrangian {
public:
    explicit Lagrangian(TensorField l, const DiffEngine& engine = {});

    const TensorField& field() const { return l_; }
    const TensorField& phi() const { return phi_; }
    const Domain& domain() const { return l_.domain(); }
    const std::string& name() const { return l_.name(); }

    void validate(const std::vector<Sample>& samples) const;

private:
    TensorField l_;
    TensorField phi_;
};

class LegendreField {
public:
    explicit LegendreField(TensorField ell);
    const TensorField& field() const { return ell_; }
    void validate(const std::vector<Sample>& samples, const DiffEngine& engine = {}) const;

private:
    TensorField ell_;
};

class AnisotropicMetric {
public:
    explicit AnisotropicMetric(TensorField g);
    const TensorField& field() const { return g_; }
    void validate(const std::vector<Sample>& samples) const;

private:
    TensorField g_;
};

struct Signature {
    int plus = 0;
    int minus = 0;
    int zero = 0;
    bool operator==(const Signature&) const = default;
};

LegendreField legendre_of(const Lagrangian& l, const std::vector<Sample>& check = {},
                          const DiffEngine& engine = {});

// 1/2 ell_i - 1/2 ell_{a.i} y^a
TensorField legendre_residue(const LegendreField& ell, const DiffEngine& engine = {});

AnisotropicMetric fundamental_tensor(const Lagrangian& l, const std::vector<Sample>& check = {});

// g_v(u, w) = phi_v(u, w) + kappa phi_v(v, u) phi_v(v, w) / L(v)
AnisotropicMetric wick_metric(const Lagrangian& l, double kappa);

Signature signature_at(const AnisotropicMetric& g, const std::vector<double>& x, const std::vector<double>& y,
                       double tol = 1e-8);

// 1/2 g(C, C); not re-validated as a Lagrangian.
TensorField lagrangian_of_metric(const AnisotropicMetric& g);

}  // namespace finsler
