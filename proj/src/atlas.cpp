#include "finsler/atlas.hpp"

#include <cmath>

#include "finsler/linalg.hpp"

namespace finsler {

namespace {

using Mat = std::vector<Dual>;

Mat matmul(const Mat& a, const Mat& b, int n)
{
    Mat c(static_cast<std::size_t>(n * n), Dual(0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
    return c;
}

Point matvec(const Mat& a, const Point& v, int n)
{
    Point r(n, Dual(0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += a[i * n + j] * v[j];
    return r;
}

bool always(const std::vector<double>&) { return true; }

// Apply J to contravariant slots and J^-1 (on the right) to covariant ones.
Components transform_slots(Components c, const Mat& J, const Mat& Ji, int n, int r, int s)
{
    const int rank = r + s;
    std::size_t stride = c.size();
    for (int p = 0; p < rank; ++p) {
        stride /= static_cast<std::size_t>(n);
        Components out(c.size(), Dual(0.0));
        for (std::size_t idx = 0; idx < c.size(); ++idx) {
            const int digit = static_cast<int>((idx / stride) % static_cast<std::size_t>(n));
            const std::size_t base = idx - static_cast<std::size_t>(digit) * stride;
            Dual acc(0.0);
            for (int a = 0; a < n; ++a) {
                const Dual& m = p < r ? J[digit * n + a] : Ji[a * n + digit];
                acc += m * c[base + static_cast<std::size_t>(a) * stride];
            }
            out[idx] = acc;
        }
        c = std::move(out);
    }
    return c;
}

struct Pullback {
    Point x, y;
    Mat J, Ji, H;
};

Pullback pull_back(const ChartTransition& tr, const Point& xt, const Point& yt)
{
    Pullback p;
    p.x = tr.inverse(xt);
    p.J = tr.jacobian(p.x);
    p.Ji = tr.inverse_jacobian(p.x);
    p.H = tr.hessian(p.x);
    p.y = matvec(p.Ji, yt, tr.n);
    return p;
}

void update(CoherenceReport& report, const std::string& key, const std::vector<double>& a,
            const std::vector<double>& b)
{
    double& worst = report[key];
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
}

}  // namespace

ChartTransition identity_transition(int n)
{
    return affine_transition(n, [n] {
        std::vector<double> a(static_cast<std::size_t>(n * n), 0.0);
        for (int i = 0; i < n; ++i) a[i * n + i] = 1.0;
        return a;
    }(), std::vector<double>(n, 0.0));
}

ChartTransition affine_transition(int n, std::vector<double> a, std::vector<double> b)
{
    auto ainv = invert(a, n);
    if (!ainv) throw RegularityError("affine_transition: singular matrix", {});
    const Mat A(a.begin(), a.end()), Ai(ainv->begin(), ainv->end());
    ChartTransition t;
    t.name = "affine";
    t.n = n;
    t.forward = [A, b, n](const Point& x) {
        Point r = matvec(A, x, n);
        for (int i = 0; i < n; ++i) r[i] += b[i];
        return r;
    };
    t.inverse = [Ai, b, n](const Point& xt) {
        Point d(xt);
        for (int i = 0; i < n; ++i) d[i] -= b[i];
        return matvec(Ai, d, n);
    };
    t.jacobian = [A](const Point&) { return A; };
    t.inverse_jacobian = [Ai](const Point&) { return Ai; };
    t.hessian = [n](const Point&) { return Mat(static_cast<std::size_t>(n * n * n), Dual(0.0)); };
    t.overlap = always;
    return t;
}

ChartTransition quadratic_shear()
{
    ChartTransition t;
    t.name = "quadchart";
    t.n = 2;
    t.forward = [](const Point& x) { return Point{x[0] + x[1] * x[1], x[1]}; };
    t.inverse = [](const Point& xt) { return Point{xt[0] - xt[1] * xt[1], xt[1]}; };
    t.jacobian = [](const Point& x) { return Mat{1.0, 2.0 * x[1], 0.0, 1.0}; };
    t.inverse_jacobian = [](const Point& x) { return Mat{1.0, -2.0 * x[1], 0.0, 1.0}; };
    t.hessian = [](const Point&) {
        Mat h(8, Dual(0.0));
        h[(0 * 2 + 1) * 2 + 1] = 2.0;
        return h;
    };
    t.overlap = always;
    return t;
}

ChartTransition quadratic_lift(double c)
{
    ChartTransition t;
    t.name = "lift";
    t.n = 2;
    t.forward = [c](const Point& x) { return Point{x[0], x[1] + c * x[0] * x[0]}; };
    t.inverse = [c](const Point& xt) { return Point{xt[0], xt[1] - c * xt[0] * xt[0]}; };
    t.jacobian = [c](const Point& x) { return Mat{1.0, 0.0, 2.0 * c * x[0], 1.0}; };
    t.inverse_jacobian = [c](const Point& x) { return Mat{1.0, 0.0, -2.0 * c * x[0], 1.0}; };
    t.hessian = [c](const Point&) {
        Mat h(8, Dual(0.0));
        h[(1 * 2 + 0) * 2 + 0] = 2.0 * c;
        return h;
    };
    t.overlap = always;
    return t;
}

ChartTransition compose(const ChartTransition& second, const ChartTransition& first)
{
    if (second.n != first.n) throw ShapeError("compose: dimension mismatch");
    const int n = first.n;
    ChartTransition t;
    t.name = second.name + "*" + first.name;
    t.n = n;
    t.forward = [second, first](const Point& x) { return second.forward(first.forward(x)); };
    t.inverse = [second, first](const Point& xt) { return first.inverse(second.inverse(xt)); };
    t.jacobian = [second, first, n](const Point& x) {
        return matmul(second.jacobian(first.forward(x)), first.jacobian(x), n);
    };
    t.inverse_jacobian = [second, first, n](const Point& x) {
        return matmul(first.inverse_jacobian(x), second.inverse_jacobian(first.forward(x)), n);
    };
    t.hessian = [second, first, n](const Point& x) {
        const Point mid = first.forward(x);
        const Mat H2 = second.hessian(mid), J2 = second.jacobian(mid);
        const Mat H1 = first.hessian(x), J1 = first.jacobian(x);
        Mat h(static_cast<std::size_t>(n * n * n), Dual(0.0));
        for (int i = 0; i < n; ++i)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    Dual acc(0.0);
                    for (int d = 0; d < n; ++d) {
                        acc += J2[i * n + d] * H1[(d * n + b) * n + c];
                        for (int e = 0; e < n; ++e) acc += H2[(i * n + d) * n + e] * J1[d * n + b] * J1[e * n + c];
                    }
                    h[(i * n + b) * n + c] = acc;
                }
        return h;
    };
    t.overlap = [second, first](const std::vector<double>& x) {
        return first.overlap(x) && second.overlap(values(first.forward(lift(x))));
    };
    return t;
}

Sample map_sample(const ChartTransition& tr, const Sample& s)
{
    const Point x = lift(s.x);
    return {values(tr.forward(x)), values(matvec(tr.jacobian(x), lift(s.y), tr.n))};
}

Domain transform_domain(const Domain& d, const ChartTransition& tr)
{
    auto member = [d, tr](const std::vector<double>& xt, const std::vector<double>& yt) {
        const Point x = tr.inverse(lift(xt));
        const std::vector<double> xs = values(x);
        if (!tr.overlap(xs)) return false;
        return d->contains(xs, values(matvec(tr.inverse_jacobian(x), lift(yt), tr.n)));
    };
    auto sampler = [d, tr](std::mt19937_64& rng) {
        for (int attempt = 0; attempt < 100000; ++attempt) {
            Sample s = d->draw(rng);
            if (tr.overlap(s.x)) return map_sample(tr, s);
        }
        throw DomainError("transform_domain: empty overlap");
    };
    return std::make_shared<const ConicDomain>(d->name() + "@" + tr.name, tr.n, member,
                                               ConicDomain::Sampler(sampler));
}

TensorField transform_tensor(const TensorField& t, const ChartTransition& tr)
{
    if (t.dim() != tr.n) throw ShapeError("transform_tensor: dimension mismatch");
    const int n = tr.n, r = t.contra(), s = t.co();
    auto f = [t, tr, n, r, s](const Point& xt, const Point& yt) {
        const Pullback p = pull_back(tr, xt, yt);
        return transform_slots(t(p.x, p.y), p.J, p.Ji, n, r, s);
    };
    return TensorField(t.name() + "~", transform_domain(t.domain(), tr), r, s, t.alpha(), f);
}

Spray transform_connection(const Spray& g, const ChartTransition& tr)
{
    const TensorField G = g.field();
    const int n = tr.n;
    auto f = [G, tr, n](const Point& xt, const Point& yt) {
        const Pullback p = pull_back(tr, xt, yt);
        const Components c = G(p.x, p.y);
        Components out(n, Dual(0.0));
        for (int i = 0; i < n; ++i) {
            for (int b = 0; b < n; ++b)
                for (int k = 0; k < n; ++k) out[i] -= 0.5 * p.H[(i * n + b) * n + k] * p.y[b] * p.y[k];
            for (int a = 0; a < n; ++a) out[i] += p.J[i * n + a] * c[a];
        }
        return out;
    };
    return Spray(TensorField(G.name() + "~", transform_domain(G.domain(), tr), 1, 0, 2.0, f));
}

NonlinearConnection transform_connection(const NonlinearConnection& nl, const ChartTransition& tr)
{
    const TensorField N = nl.field();
    const int n = tr.n;
    auto f = [N, tr, n](const Point& xt, const Point& yt) {
        const Pullback p = pull_back(tr, xt, yt);
        Components out = transform_slots(N(p.x, p.y), p.J, p.Ji, n, 1, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c) out[i * n + j] -= p.H[(i * n + b) * n + c] * p.Ji[b * n + j] * p.y[c];
        return out;
    };
    return NonlinearConnection(TensorField(N.name() + "~", transform_domain(N.domain(), tr), 1, 1, 1.0, f));
}

AnisotropicConnection transform_connection(const AnisotropicConnection& gamma, const ChartTransition& tr)
{
    const TensorField G = gamma.field();
    const int n = tr.n;
    auto f = [G, tr, n](const Point& xt, const Point& yt) {
        const Pullback p = pull_back(tr, xt, yt);
        Components out = transform_slots(G(p.x, p.y), p.J, p.Ji, n, 1, 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c)
                            out[(i * n + j) * n + k] -=
                                p.H[(i * n + b) * n + c] * p.Ji[b * n + j] * p.Ji[c * n + k];
        return out;
    };
    return AnisotropicConnection(TensorField(G.name() + "~", transform_domain(G.domain(), tr), 1, 2, 0.0, f));
}

CoherenceReport coherence_defect(const Spray& g, const ChartTransition& tr, const std::vector<Sample>& samples,
                                 const DiffEngine& engine)
{
    const TensorField a = raise_connection(transform_connection(g, tr), engine).field();
    const TensorField b = transform_connection(raise_connection(g, engine), tr).field();
    CoherenceReport report{{"spray.raise", 0.0}};
    for (const Sample& s : samples) {
        const Sample m = map_sample(tr, s);
        update(report, "spray.raise", a.evaluate(m.x, m.y), b.evaluate(m.x, m.y));
    }
    return report;
}

CoherenceReport coherence_defect(const NonlinearConnection& nl, const ChartTransition& tr,
                                 const std::vector<Sample>& samples, const DiffEngine& engine)
{
    const NonlinearConnection moved = transform_connection(nl, tr);
    const TensorField lower_a = lower_connection(moved).field();
    const TensorField lower_b = transform_connection(lower_connection(nl), tr).field();
    const TensorField raise_a = raise_connection(moved, engine).field();
    const TensorField raise_b = transform_connection(raise_connection(nl, engine), tr).field();
    CoherenceReport report{{"nonlinear.lower", 0.0}, {"nonlinear.raise", 0.0}};
    for (const Sample& s : samples) {
        const Sample m = map_sample(tr, s);
        update(report, "nonlinear.lower", lower_a.evaluate(m.x, m.y), lower_b.evaluate(m.x, m.y));
        update(report, "nonlinear.raise", raise_a.evaluate(m.x, m.y), raise_b.evaluate(m.x, m.y));
    }
    return report;
}

CoherenceReport coherence_defect(const AnisotropicConnection& gamma, const ChartTransition& tr,
                                 const std::vector<Sample>& samples, const DiffEngine& engine)
{
    const AnisotropicConnection moved = transform_connection(gamma, tr);
    const TensorField lower_a = lower_connection(moved).field();
    const TensorField lower_b = transform_connection(lower_connection(gamma), tr).field();
    const TensorField raise_a = vertical_derivative(moved.field(), engine);
    const TensorField raise_b = transform_tensor(vertical_derivative(gamma.field(), engine), tr);
    CoherenceReport report{{"anisotropic.lower", 0.0}, {"anisotropic.raise", 0.0}};
    for (const Sample& s : samples) {
        const Sample m = map_sample(tr, s);
        update(report, "anisotropic.lower", lower_a.evaluate(m.x, m.y), lower_b.evaluate(m.x, m.y));
        update(report, "anisotropic.raise", raise_a.evaluate(m.x, m.y), raise_b.evaluate(m.x, m.y));
    }
    return report;
}

}  // namespace finsler
