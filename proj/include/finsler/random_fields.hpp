#pragma once

#include <random>

#include "finsler/field.hpp"

namespace finsler {

// Seeded generator of smooth alpha-homogeneous fields of type (r, s). Each
// component is (a + b.x) y^T Q y |y|^(alpha - 2) with coefficients uniform in
// [-amplitude, amplitude].
TensorField random_field(const Domain& d, int r, int s, double alpha, std::mt19937_64& rng,
                         double amplitude = 1.0);

}  // namespace finsler
