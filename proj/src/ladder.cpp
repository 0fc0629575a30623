#include "finsler/ladder.hpp"

#include <cmath>
#include <string>

namespace finsler {

int integer_alpha(const TensorField& s)
{
    const double a = s.alpha();
    if (std::round(a) != a)
        throw LevelError("field '" + s.name() + "' has non-integer homogeneity; real-omega levels are not supported");
    return static_cast<int>(a);
}

TensorField project_image(const TensorField& s, double alpha, const DiffEngine& engine)
{
    if (alpha == 0.0) throw LevelError("project_image: alpha = 0 has no image projection");
    if (s.co() < 1) throw RankError("project_image: '" + s.name() + "' has no covariant index");
    if (s.alpha() != alpha - 1.0)
        throw LevelError("project_image: '" + s.name() + "' is not (alpha-1)-homogeneous for alpha = " +
                         std::to_string(alpha));
    return vertical_derivative(scale(1.0 / alpha, liouville_contract(s)), engine)
        .renamed("img(" + s.name() + ")");
}

TensorField project_kernel(const TensorField& s, double alpha, const DiffEngine& engine)
{
    return subtract(s, project_image(s, alpha, engine)).renamed("ker(" + s.name() + ")");
}

LadderDecomposition decompose(const TensorField& s, int beta, const DiffEngine& engine)
{
    const int alpha = integer_alpha(s);
    const int omega = alpha + s.co();
    if (alpha < 0) throw LevelError("decompose: negative homogeneity is below the ladder");
    if (beta <= alpha || beta > omega)
        throw LevelError("decompose: target homogeneity " + std::to_string(beta) + " outside (" +
                         std::to_string(alpha) + ", " + std::to_string(omega) + "]");

    std::vector<TensorField> residues;
    TensorField current = s;
    for (int nu = alpha + 1; nu <= beta; ++nu) {
        TensorField lower = scale(1.0 / nu, liouville_contract(current))
                                .renamed("S" + std::to_string(current.co() - 1));
        residues.push_back(subtract(current, vertical_derivative(lower, engine))
                               .renamed("Delta" + std::to_string(current.co())));
        current = lower;
    }
    return {s.contra(), omega, s.co(), current, residues};
}

TensorField reconstruct(const LadderDecomposition& d, const DiffEngine& engine)
{
    const int m = static_cast<int>(d.residues.size());
    if (d.base.co() != d.start_level - m || d.base.alpha() + d.base.co() != d.omega)
        throw ShapeError("reconstruct: base does not sit at the expected level");
    TensorField total = d.base;
    for (int k = m - 1; k >= 0; --k) {
        const TensorField& r = d.residues[k];
        if (r.contra() != d.r || r.alpha() + r.co() != d.omega)
            throw ShapeError("reconstruct: residue '" + r.name() + "' has the wrong label");
        total = add(vertical_derivative(total, engine), r);
    }
    return total.renamed("reconstruct");
}

TensorField destroy_residues(const TensorField& s, int alpha, int omega, ResidueScaling scaling,
                             const DiffEngine& engine)
{
    if (alpha < 0 || alpha >= omega) throw LevelError("destroy_residues: need 0 <= alpha < omega");
    if (integer_alpha(s) != alpha || s.co() != omega - alpha)
        throw LevelError("destroy_residues: '" + s.name() + "' does not sit at level (alpha, omega)");
    TensorField t = s;
    for (int k = 0; k < omega - alpha; ++k) t = liouville_contract(t);
    if (scaling == ResidueScaling::base) {
        double prod = 1.0;
        for (int nu = alpha + 1; nu <= omega; ++nu) prod *= nu;
        t = scale(1.0 / prod, t);
    }
    for (int k = 0; k < omega - alpha; ++k) t = vertical_derivative(t, engine);
    return t.renamed("destroy(" + s.name() + ")");
}

}  // namespace finsler
