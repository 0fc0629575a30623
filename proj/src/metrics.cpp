#include "finsler/metrics.hpp"

#include <cmath>

#include "finsler/linalg.hpp"

namespace finsler {

namespace {

void require_type(const TensorField& t, int r, int s, double alpha, const char* what)
{
    if (t.contra() != r || t.co() != s || t.alpha() != alpha)
        throw ShapeError(std::string(what) + ": field '" + t.name() + "' has type (" + std::to_string(t.contra()) +
                         "," + std::to_string(t.co()) + ") and homogeneity " + std::to_string(t.alpha()));
}

}  // namespace

void require_nondegenerate(const TensorField& g, const std::vector<Sample>& samples, bool symmetric)
{
    const int n = g.dim();
    for (const Sample& s : samples) {
        const std::vector<double> m = g.evaluate(s.x, s.y);
        if (symmetric && max_asymmetry(m, n) > kSymmetryTolerance)
            throw RegularityError("'" + g.name() + "' is not symmetric", s);
        if (!(std::abs(scaled_determinant(m, n)) > kDeterminantFloor))
            throw RegularityError("'" + g.name() + "' is degenerate", s);
    }
}

Lagrangian::Lagrangian(TensorField l, const DiffEngine& engine)
    : l_(std::move(l)),
      phi_(scale(0.5, vertical_derivative(vertical_derivative(l_, engine), engine)).renamed("phi[" + l_.name() + "]"))
{
    require_type(l_, 0, 0, 2.0, "Lagrangian");
}

void Lagrangian::validate(const std::vector<Sample>& samples) const
{
    require_nondegenerate(phi_, samples, true);
}

LegendreField::LegendreField(TensorField ell) : ell_(std::move(ell))
{
    require_type(ell_, 0, 1, 1.0, "LegendreField");
}

void LegendreField::validate(const std::vector<Sample>& samples, const DiffEngine& engine) const
{
    require_nondegenerate(vertical_derivative(ell_, engine), samples, false);
}

AnisotropicMetric::AnisotropicMetric(TensorField g) : g_(std::move(g))
{
    require_type(g_, 0, 2, 0.0, "AnisotropicMetric");
}

void AnisotropicMetric::validate(const std::vector<Sample>& samples) const
{
    require_nondegenerate(g_, samples, true);
}

LegendreField legendre_of(const Lagrangian& l, const std::vector<Sample>& check, const DiffEngine& engine)
{
    LegendreField ell(vertical_derivative(l.field(), engine).renamed("ell[" + l.name() + "]"));
    if (!check.empty()) ell.validate(check, engine);
    return ell;
}

TensorField legendre_residue(const LegendreField& ell, const DiffEngine& engine)
{
    const TensorField& e = ell.field();
    const TensorField de = vertical_derivative(e, engine);
    const int n = e.dim();
    auto f = [e, de, n](const Point& x, const Point& y) {
        const Components v = e(x, y);
        const Components d = de(x, y);
        Components out(n);
        for (int i = 0; i < n; ++i) {
            Dual acc = 0.5 * v[i];
            for (int a = 0; a < n; ++a) acc -= 0.5 * d[a * n + i] * y[a];
            out[i] = acc;
        }
        return out;
    };
    return TensorField("Delta1[" + e.name() + "]", e.domain(), 0, 1, 1.0, f);
}

AnisotropicMetric fundamental_tensor(const Lagrangian& l, const std::vector<Sample>& check)
{
    AnisotropicMetric g(l.phi());
    if (!check.empty()) g.validate(check);
    return g;
}

AnisotropicMetric wick_metric(const Lagrangian& l, double kappa)
{
    const TensorField phi = l.phi();
    const TensorField lf = l.field();
    const int n = phi.dim();
    auto f = [phi, lf, kappa, n](const Point& x, const Point& y) {
        const Components p = phi(x, y);
        const Dual L = lf(x, y)[0];
        double ymax = 0.0;
        for (const Dual& v : y) ymax = std::max(ymax, std::abs(v.value()));
        if (std::abs(L.value()) <= 1e-14 * ymax * ymax) throw DivisionError("wick_metric: L(v) = 0", {values(x), values(y)});
        std::vector<Dual> pv(n, Dual(0.0));
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < n; ++a) pv[i] += p[i * n + a] * y[a];
        const Dual c = kappa / L;
        Components g(p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g[i * n + j] += c * pv[i] * pv[j];
        return g;
    };
    return AnisotropicMetric(TensorField("g[" + lf.name() + ",k=" + std::to_string(kappa) + "]", phi.domain(), 0, 2,
                                         0.0, f));
}

Signature signature_at(const AnisotropicMetric& g, const std::vector<double>& x, const std::vector<double>& y,
                       double tol)
{
    const int n = g.field().dim();
    const std::vector<double> m = g.field().evaluate(x, y);
    if (max_asymmetry(m, n) > kSymmetryTolerance)
        throw SymmetryError("signature_at: '" + g.field().name() + "' is not symmetric at " + describe({x, y}));
    Signature s;
    for (double lambda : symmetric_eigenvalues(m, n)) {
        if (std::abs(lambda) < tol)
            ++s.zero;
        else if (lambda > 0.0)
            ++s.plus;
        else
            ++s.minus;
    }
    return s;
}

TensorField lagrangian_of_metric(const AnisotropicMetric& g)
{
    return scale(0.5, liouville_contract(liouville_contract(g.field()))).renamed("L[" + g.field().name() + "]");
}

}  // namespace finsler
