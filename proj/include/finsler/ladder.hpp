#pragma once

#include <vector>

#include "finsler/field.hpp"

namespace finsler {

// S = d^m(base) + sum_k d^(start - k)(residues[k]) with residues ordered from
// the highest level (covariant rank = start) downwards.
struct LadderDecomposition {
    int r = 0;
    int omega = 0;
    int start_level = 0;  // covariant rank of the decomposed field
    TensorField base;     // type (r, start - m), homogeneity beta
    std::vector<TensorField> residues;
};

// d((1/alpha) iC S); S must have covariant rank >= 1 and homogeneity alpha-1.
TensorField project_image(const TensorField& s, double alpha, const DiffEngine& engine = {});

// S - project_image(S, alpha); annihilated by iC.
TensorField project_kernel(const TensorField& s, double alpha, const DiffEngine& engine = {});

// Iterates the image/kernel split for nu = alpha+1 .. beta.
LadderDecomposition decompose(const TensorField& s, int beta, const DiffEngine& engine = {});

TensorField reconstruct(const LadderDecomposition& d, const DiffEngine& engine = {});

enum class ResidueScaling {
    product,  // (prod_{nu=alpha+1}^{omega} nu) d^(omega-alpha) S0, the bracketed formula
    base,     // d^(omega-alpha) S0
};

// d^(omega-alpha) iC^(omega-alpha) S, optionally divided by prod nu.
TensorField destroy_residues(const TensorField& s, int alpha, int omega,
                             ResidueScaling scaling = ResidueScaling::product, const DiffEngine& engine = {});

// Integer homogeneity of a field, or LevelError.
int integer_alpha(const TensorField& s);

}  // namespace finsler
