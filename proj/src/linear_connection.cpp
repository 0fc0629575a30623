#include "finsler/linear_connection.hpp"

#include <cmath>

#include "finsler/linalg.hpp"

namespace finsler {

namespace {

// delta^i_j + hat2^i_jc y^c, row-major in (i, j).
template <class T, class V>
std::vector<T> vertical_matrix(const std::vector<T>& hat2, const V& y, int n)
{
    std::vector<T> m(static_cast<std::size_t>(n * n), T(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            T acc(i == j ? 1.0 : 0.0);
            for (int c = 0; c < n; ++c) acc += hat2[(i * n + j) * n + c] * y[c];
            m[i * n + j] = acc;
        }
    return m;
}

// out^i_jk = a^i_jk + sign N^b_j b^i_bk
TensorField shift_by_n(const TensorField& a, const TensorField& b, const TensorField& nl, double sign, std::string name)
{
    const int n = a.dim();
    auto f = [a, b, nl, sign, n](const Point& x, const Point& y) {
        Components out = a(x, y);
        const Components h2 = b(x, y);
        const Components N = nl(x, y);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Dual acc(0.0);
                    for (int c = 0; c < n; ++c) acc += N[c * n + j] * h2[(i * n + c) * n + k];
                    out[(i * n + j) * n + k] += sign * acc;
                }
        return out;
    };
    return TensorField(std::move(name), a.domain(), 1, 2, 0.0, f);
}

void require_type(const TensorField& t, int r, int s, double alpha, const char* what)
{
    if (t.contra() != r || t.co() != s || t.alpha() != alpha)
        throw ShapeError(std::string(what) + ": field '" + t.name() + "' has the wrong type or homogeneity");
}

}  // namespace

LinearConnection::LinearConnection(TensorField hat1, TensorField hat2) : hat1_(std::move(hat1)), hat2_(std::move(hat2))
{
    require_type(hat1_, 1, 2, 0.0, "LinearConnection hat1");
    require_type(hat2_, 1, 2, -1.0, "LinearConnection hat2");
}

std::vector<double> covariant_derivative(const LinearConnection& c, const NonlinearConnection& nl,
                                         const std::vector<double>& x_h, const std::vector<double>& x_v,
                                         const TensorField& z, const std::vector<double>& x,
                                         const std::vector<double>& y, const DiffEngine& engine)
{
    if (z.contra() != 1 || z.co() != 0) throw ShapeError("covariant_derivative: Z must be a vector field");
    const int n = z.dim();
    const HorizontalSplit split = project_with_N(c, nl);
    const std::vector<double> gamma = split.gamma.field().evaluate(x, y);
    const std::vector<double> delta = split.delta.evaluate(x, y);
    const std::vector<double> N = nl.field().evaluate(x, y);
    const std::vector<double> Z = z.evaluate(x, y);
    const std::vector<double> zx = x_derivative(z, engine).evaluate(x, y);        // Z^i_{,j}
    const std::vector<double> zy = vertical_derivative(z, engine).evaluate(x, y);  // Z^i_{.j}

    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            double horizontal = zx[i * n + j];
            for (int a = 0; a < n; ++a) horizontal -= N[a * n + j] * zy[i * n + a];
            double vertical = zy[i * n + j];
            for (int k = 0; k < n; ++k) {
                horizontal += gamma[(i * n + j) * n + k] * Z[k];
                vertical += delta[(i * n + j) * n + k] * Z[k];
            }
            acc += x_h[j] * horizontal + x_v[j] * vertical;
        }
        out[i] = acc;
    }
    return out;
}

BMatrix b_matrix(const LinearConnection& c, const std::vector<double>& x, const std::vector<double>& y)
{
    const int n = c.hat2().dim();
    const std::vector<double> h2 = c.hat2().evaluate(x, y);
    std::vector<double> m = vertical_matrix(h2, y, n);
    BMatrix b;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b.contraction = std::max(b.contraction, std::abs(m[i * n + j] - (i == j ? 1.0 : 0.0)));
    if (b.contraction < kStrongRegularity) {
        b.matrix.assign(static_cast<std::size_t>(n * n), 0.0);
        for (int i = 0; i < n; ++i) b.matrix[i * n + i] = 1.0;
        b.regular = b.strongly_regular = true;
        return b;
    }
    if (auto inv = invert(m, n)) {
        b.matrix = std::move(*inv);
        b.regular = true;
    }
    return b;
}

NonlinearConnection induced_nonlinear(const LinearConnection& c)
{
    const TensorField h1 = c.hat1(), h2 = c.hat2();
    const int n = h1.dim();
    auto f = [h1, h2, n](const Point& x, const Point& y) {
        const Components a = h1(x, y);
        auto B = invert(vertical_matrix(h2(x, y), y, n), n);
        if (!B) throw RegularityError("induced_nonlinear: delta + hat2 y is singular", {values(x), values(y)});
        Components v(static_cast<std::size_t>(n * n), Dual(0.0));  // hat1^b_ic y^c
        for (int b = 0; b < n; ++b)
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) v[b * n + i] += a[(b * n + i) * n + k] * y[k];
        Components N(static_cast<std::size_t>(n * n), Dual(0.0));
        for (int p = 0; p < n; ++p)
            for (int i = 0; i < n; ++i)
                for (int b = 0; b < n; ++b) N[p * n + i] += (*B)[p * n + b] * v[b * n + i];
        return N;
    };
    return NonlinearConnection(TensorField("N[" + h1.name() + "]", h1.domain(), 1, 1, 1.0, f));
}

AnisotropicConnection project_intrinsic(const LinearConnection& c)
{
    const TensorField N = induced_nonlinear(c).field();
    return AnisotropicConnection(shift_by_n(c.hat1(), c.hat2(), N, -1.0, "j(" + c.hat1().name() + ")"));
}

HorizontalSplit project_with_N(const LinearConnection& c, const NonlinearConnection& nl)
{
    return {AnisotropicConnection(shift_by_n(c.hat1(), c.hat2(), nl.field(), -1.0, "H(" + c.hat1().name() + ")")),
            c.hat2()};
}

LinearConnection rebuild_linear(const AnisotropicConnection& gamma, const TensorField& delta,
                                const NonlinearConnection& nl)
{
    return LinearConnection(shift_by_n(gamma.field(), delta, nl.field(), 1.0, "hat1(" + gamma.field().name() + ")"),
                            delta);
}

LinearConnection rebuild_linear(const AnisotropicConnection& gamma, const TensorField& delta)
{
    return rebuild_linear(gamma, delta, lower_connection(gamma));
}

LinearConnection embed_trivial(const AnisotropicConnection& gamma)
{
    const TensorField& g = gamma.field();
    return LinearConnection(g, zero_field(g.domain(), 1, 2, -1.0));
}

TensorField cartan_tensor(const Lagrangian& l, const DiffEngine& engine)
{
    const TensorField phi = l.phi();
    const TensorField dphi = vertical_derivative(phi, engine);
    const int n = phi.dim();
    auto f = [phi, dphi, n](const Point& x, const Point& y) {
        auto ginv = invert(phi(x, y), n);
        if (!ginv) throw RegularityError("cartan_tensor: fundamental tensor is singular", {values(x), values(y)});
        const Components d = dphi(x, y);
        Components C(static_cast<std::size_t>(n * n * n), Dual(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int m = 0; m < n; ++m) C[(i * n + j) * n + k] += 0.5 * (*ginv)[i * n + m] * d[(m * n + j) * n + k];
        return C;
    };
    return TensorField("C[" + l.name() + "]", phi.domain(), 1, 2, -1.0, f);
}

const char* to_string(ClassicalKind k)
{
    switch (k) {
    case ClassicalKind::berwald: return "berwald";
    case ClassicalKind::chern: return "chern";
    case ClassicalKind::hashiguchi: return "hashiguchi";
    case ClassicalKind::cartan: return "cartan";
    }
    return "?";
}

LinearConnection classical_linear(const Lagrangian& l, ClassicalKind kind, const DiffEngine& engine)
{
    switch (kind) {
    case ClassicalKind::berwald: return embed_trivial(berwald_connection(l, engine));
    case ClassicalKind::chern: return embed_trivial(chern_connection(l, engine));
    case ClassicalKind::hashiguchi:
        return rebuild_linear(berwald_connection(l, engine), cartan_tensor(l, engine), canonical_nonlinear(l, engine));
    case ClassicalKind::cartan:
        return rebuild_linear(chern_connection(l, engine), cartan_tensor(l, engine), canonical_nonlinear(l, engine));
    }
    throw Error("classical_linear: unknown kind");
}

}  // namespace finsler
