#include "finsler/connections.hpp"

#include "finsler/ladder.hpp"
#include "finsler/linalg.hpp"

namespace finsler {

namespace {

void require_type(const TensorField& t, int r, int s, double alpha, const char* what)
{
    if (t.contra() != r || t.co() != s || t.alpha() != alpha)
        throw ShapeError(std::string(what) + ": field '" + t.name() + "' has the wrong type or homogeneity");
}

std::vector<Dual> inverse_or_throw(const Components& g, int n, const Point& x, const Point& y, const char* what)
{
    auto inv = invert(std::vector<Dual>(g.begin(), g.end()), n);
    if (!inv) throw RegularityError(std::string(what) + ": fundamental tensor is singular", {values(x), values(y)});
    return *inv;
}

}  // namespace

Spray::Spray(TensorField g) : g_(std::move(g))
{
    require_type(g_, 1, 0, 2.0, "Spray");
}

NonlinearConnection::NonlinearConnection(TensorField n) : n_(std::move(n))
{
    require_type(n_, 1, 1, 1.0, "NonlinearConnection");
}

AnisotropicConnection::AnisotropicConnection(TensorField gamma) : gamma_(std::move(gamma))
{
    require_type(gamma_, 1, 2, 0.0, "AnisotropicConnection");
}

NonlinearConnection raise_connection(const Spray& g, const DiffEngine& engine)
{
    return NonlinearConnection(vertical_derivative(g.field(), engine).renamed("N[" + g.field().name() + "]"));
}

AnisotropicConnection raise_connection(const NonlinearConnection& n, const DiffEngine& engine)
{
    return AnisotropicConnection(vertical_derivative(n.field(), engine).renamed("Gamma[" + n.field().name() + "]"));
}

NonlinearConnection lower_connection(const AnisotropicConnection& gamma)
{
    return NonlinearConnection(liouville_contract(gamma.field()).renamed("N[" + gamma.field().name() + "]"));
}

Spray lower_connection(const NonlinearConnection& n)
{
    return Spray(scale(0.5, liouville_contract(n.field())).renamed("G[" + n.field().name() + "]"));
}

TensorField nonlinear_residue(const NonlinearConnection& n, const DiffEngine& engine)
{
    return project_kernel(n.field(), 2.0, engine).renamed("Delta[" + n.field().name() + "]");
}

TensorField torsion(const NonlinearConnection& n, const DiffEngine& engine)
{
    const TensorField dn = vertical_derivative(n.field(), engine);
    const int d = n.field().dim();
    auto f = [dn, d](const Point& x, const Point& y) {
        const Components c = dn(x, y);
        Components t(c.size());
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) t[(i * d + j) * d + k] = c[(i * d + j) * d + k] - c[(i * d + k) * d + j];
        return t;
    };
    return TensorField("Tor[" + n.field().name() + "]", n.field().domain(), 1, 2, 0.0, f);
}

TensorField anisotropic_residue(const AnisotropicConnection& gamma, const DiffEngine& engine)
{
    return project_kernel(gamma.field(), 1.0, engine).renamed("Delta[" + gamma.field().name() + "]");
}

Spray canonical_spray(const Lagrangian& l, const DiffEngine& engine)
{
    const TensorField phi = l.phi();
    const TensorField dphi = x_derivative(phi, engine);
    const int n = phi.dim();
    auto f = [phi, dphi, n](const Point& x, const Point& y) {
        const Components g = phi(x, y);
        const std::vector<Dual> ginv = inverse_or_throw(g, n, x, y, "canonical_spray");
        const Components dg = dphi(x, y);  // dg[(c*n+b)*n+a] = d_a g_cb
        auto d = [&](int c, int b, int a) -> const Dual& { return dg[(c * n + b) * n + a]; };
        std::vector<Dual> w(n, Dual(0.0));
        for (int c = 0; c < n; ++c)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) w[c] += (d(c, b, a) + d(a, c, b) - d(a, b, c)) * y[a] * y[b];
        Components G(n, Dual(0.0));
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c) G[i] += 0.25 * ginv[i * n + c] * w[c];
        return G;
    };
    return Spray(TensorField("G[" + l.name() + "]", phi.domain(), 1, 0, 2.0, f));
}

NonlinearConnection canonical_nonlinear(const Lagrangian& l, const DiffEngine& engine)
{
    return raise_connection(canonical_spray(l, engine), engine);
}

AnisotropicConnection berwald_connection(const Lagrangian& l, const DiffEngine& engine)
{
    return AnisotropicConnection(
        raise_connection(canonical_nonlinear(l, engine), engine).field().renamed("Berwald[" + l.name() + "]"));
}

AnisotropicConnection chern_connection(const Lagrangian& l, const DiffEngine& engine)
{
    const TensorField phi = l.phi();
    const TensorField dx_phi = x_derivative(phi, engine);
    const TensorField dy_phi = vertical_derivative(phi, engine);
    const TensorField nc = canonical_nonlinear(l, engine).field();
    const int n = phi.dim();
    auto f = [phi, dx_phi, dy_phi, nc, n](const Point& x, const Point& y) {
        const Components g = phi(x, y);
        const std::vector<Dual> ginv = inverse_or_throw(g, n, x, y, "chern_connection");
        const Components gx = dx_phi(x, y);
        const Components gy = dy_phi(x, y);
        const Components N = nc(x, y);
        // D[(l*n+k)*n+j] = delta_j g_lk
        Components D(static_cast<std::size_t>(n * n * n), Dual(0.0));
        for (int l = 0; l < n; ++l)
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j) {
                    Dual v = gx[(l * n + k) * n + j];
                    for (int a = 0; a < n; ++a) v -= N[a * n + j] * gy[(l * n + k) * n + a];
                    D[(l * n + k) * n + j] = v;
                }
        auto d = [&](int l, int k, int j) -> const Dual& { return D[(l * n + k) * n + j]; };
        Components G(static_cast<std::size_t>(n * n * n), Dual(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Dual acc(0.0);
                    for (int l = 0; l < n; ++l) acc += ginv[i * n + l] * (d(l, k, j) + d(l, j, k) - d(j, k, l));
                    G[(i * n + j) * n + k] = 0.5 * acc;
                }
        return G;
    };
    return AnisotropicConnection(TensorField("Chern[" + l.name() + "]", phi.domain(), 1, 2, 0.0, f));
}

TensorField landsberg_tensor(const Lagrangian& l, const DiffEngine& engine)
{
    return subtract(chern_connection(l, engine).field(), berwald_connection(l, engine).field())
        .renamed("Lan[" + l.name() + "]");
}

Trajectory geodesic_integrate(const Spray& g, const std::vector<double>& x0, const std::vector<double>& y0,
                              double dt, int steps)
{
    const TensorField& G = g.field();
    const std::size_t n = x0.size();
    if (!G.domain()->contains(x0, y0)) throw DomainError("geodesic start outside the domain: " + describe({x0, y0}));
    Trajectory out;
    out.states.push_back({x0, y0});

    using State = std::vector<double>;  // x then y
    auto rhs = [&](const State& s) {
        State x(s.begin(), s.begin() + n), y(s.begin() + n, s.end());
        const std::vector<double> c = G.evaluate(x, y);
        State d(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = y[i];
            d[n + i] = -2.0 * c[i];
        }
        return d;
    };
    auto axpy = [](const State& a, double h, const State& b) {
        State r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + h * b[i];
        return r;
    };

    State s(x0);
    s.insert(s.end(), y0.begin(), y0.end());
    for (int step = 0; step < steps; ++step) {
        try {
            const State k1 = rhs(s);
            const State k2 = rhs(axpy(s, 0.5 * dt, k1));
            const State k3 = rhs(axpy(s, 0.5 * dt, k2));
            const State k4 = rhs(axpy(s, dt, k3));
            State next(s.size());
            for (std::size_t i = 0; i < s.size(); ++i)
                next[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            State x(next.begin(), next.begin() + n), y(next.begin() + n, next.end());
            if (!G.domain()->contains(x, y)) throw DomainError("geodesic left the domain at " + describe({x, y}));
            s = std::move(next);
            out.states.push_back({std::move(x), std::move(y)});
        } catch (const DomainError& e) {
            out.truncated = true;
            out.reason = e.what();
            break;
        }
    }
    return out;
}

}  // namespace finsler
