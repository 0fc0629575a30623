#include "finsler/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finsler {

double DiffEngine::step(const Point& v) const
{
    double m = 1.0;
    for (const Dual& d : v) m = std::max(m, std::abs(d.value()));
    return step_scale * std::cbrt(std::numeric_limits<double>::epsilon()) * m;
}

TensorField::TensorField(std::string name, Domain domain, int r, int s, double alpha, Closure components)
{
    if (!domain) throw ShapeError("field '" + name + "' has no domain");
    if (r < 0 || s < 0) throw RankError("negative rank for field '" + name + "'");
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    impl->domain = std::move(domain);
    impl->r = r;
    impl->s = s;
    impl->alpha = alpha;
    impl->size = 1;
    for (int i = 0; i < r + s; ++i) impl->size *= static_cast<std::size_t>(impl->domain->dim());
    impl->f = std::move(components);
    impl_ = std::move(impl);
}

Components TensorField::operator()(const Point& x, const Point& y) const
{
    Components c = impl_->f(x, y);
    if (c.size() != impl_->size)
        throw ShapeError("field '" + impl_->name + "' returned " + std::to_string(c.size()) +
                         " components, expected " + std::to_string(impl_->size));
    return c;
}

std::vector<double> TensorField::evaluate(const std::vector<double>& x, const std::vector<double>& y) const
{
    if (!impl_->domain->contains(x, y))
        throw DomainError("field '" + impl_->name + "' evaluated outside " + impl_->domain->name() + " at " +
                          describe({x, y}));
    return values((*this)(lift(x), lift(y)));
}

TensorField TensorField::renamed(std::string name) const
{
    auto impl = std::make_shared<Impl>(*impl_);
    impl->name = std::move(name);
    return TensorField(std::move(impl));
}

TensorField TensorField::with_vertical_derivative(Closure d) const
{
    auto impl = std::make_shared<Impl>(*impl_);
    impl->dy = std::move(d);
    return TensorField(std::move(impl));
}

TensorField TensorField::with_x_derivative(Closure d) const
{
    auto impl = std::make_shared<Impl>(*impl_);
    impl->dx = std::move(d);
    return TensorField(std::move(impl));
}

std::size_t flat(int n, std::initializer_list<int> idx)
{
    std::size_t k = 0;
    for (int i : idx) k = k * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    return k;
}

Point lift(const std::vector<double>& v)
{
    return Point(v.begin(), v.end());
}

std::vector<double> values(const Components& c)
{
    std::vector<double> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].value();
    return out;
}

int fresh_tag(const Point& x, const Point& y)
{
    int t = 0;
    for (const Dual& d : x) t = std::max(t, d.tags());
    for (const Dual& d : y) t = std::max(t, d.tags());
    return t;
}

namespace {

enum class Slot { x, y };

// Derivative of every component along each coordinate of the chosen slot;
// output index = component * n + direction.
Components differentiate(const TensorField& t, const Point& x, const Point& y, Slot slot, DiffMethod method,
                         double step_scale)
{
    const int n = t.dim();
    const std::size_t m = t.size();
    Components out(m * static_cast<std::size_t>(n));
    Point px = x, py = y;
    Point& moving = slot == Slot::x ? px : py;
    const Point& origin = slot == Slot::x ? x : y;

    if (method == DiffMethod::analytic) {
        const int tag = fresh_tag(x, y);
        for (int k = 0; k < n; ++k) {
            moving[k] = origin[k] + Dual::infinitesimal(tag);
            const Components c = t(px, py);
            for (std::size_t i = 0; i < m; ++i) out[i * n + k] = c[i].derivative(tag);
            moving[k] = origin[k];
        }
        return out;
    }

    DiffEngine e{method, method, step_scale};
    const double h = e.step(origin);
    for (int k = 0; k < n; ++k) {
        moving[k] = origin[k] + 2.0 * h;
        const Components p2 = t(px, py);
        moving[k] = origin[k] + h;
        const Components p1 = t(px, py);
        moving[k] = origin[k] - h;
        const Components m1 = t(px, py);
        moving[k] = origin[k] - 2.0 * h;
        const Components m2 = t(px, py);
        moving[k] = origin[k];
        for (std::size_t i = 0; i < m; ++i)
            out[i * n + k] = (-1.0 * p2[i] + 8.0 * p1[i] - 8.0 * m1[i] + m2[i]) / (12.0 * h);
    }
    return out;
}

}  // namespace

TensorField vertical_derivative(const TensorField& t, const DiffEngine& engine)
{
    Closure f;
    if (engine.method == DiffMethod::analytic && t.vertical_hint()) {
        f = *t.vertical_hint();
    } else {
        f = [t, method = engine.method, scale = engine.step_scale](const Point& x, const Point& y) {
            return differentiate(t, x, y, Slot::y, method, scale);
        };
    }
    return TensorField("d(" + t.name() + ")", t.domain(), t.contra(), t.co() + 1, t.alpha() - 1.0, std::move(f));
}

TensorField x_derivative(const TensorField& t, const DiffEngine& engine)
{
    Closure f;
    if (engine.x_method == DiffMethod::analytic && t.x_hint()) {
        f = *t.x_hint();
    } else {
        f = [t, method = engine.x_method, scale = engine.step_scale](const Point& x, const Point& y) {
            return differentiate(t, x, y, Slot::x, method, scale);
        };
    }
    return TensorField("dx(" + t.name() + ")", t.domain(), t.contra(), t.co() + 1, t.alpha(), std::move(f));
}

TensorField liouville_contract(const TensorField& t)
{
    if (t.co() < 1) throw RankError("Liouville contraction of '" + t.name() + "' needs a covariant index");
    const int n = t.dim();
    auto f = [t, n](const Point& x, const Point& y) {
        const Components c = t(x, y);
        Components out(c.size() / static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < out.size(); ++i) {
            Dual acc(0.0);
            for (int a = 0; a < n; ++a) acc += c[i * n + a] * y[a];
            out[i] = acc;
        }
        return out;
    };
    return TensorField("iC(" + t.name() + ")", t.domain(), t.contra(), t.co() - 1, t.alpha() + 1.0, f);
}

std::vector<double> homogeneity_defect(const TensorField& t, const DiffEngine& engine,
                                       const std::vector<double>& x, const std::vector<double>& y)
{
    const std::vector<double> euler = liouville_contract(vertical_derivative(t, engine)).evaluate(x, y);
    const std::vector<double> v = t.evaluate(x, y);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = euler[i] - t.alpha() * v[i];
    return out;
}

namespace {

void require_same_type(const TensorField& a, const TensorField& b, const char* op)
{
    if (a.dim() != b.dim() || a.contra() != b.contra() || a.co() != b.co())
        throw ShapeError(std::string(op) + ": fields '" + a.name() + "' and '" + b.name() + "' differ in type");
    if (a.alpha() != b.alpha())
        throw ShapeError(std::string(op) + ": fields '" + a.name() + "' and '" + b.name() +
                         "' differ in homogeneity");
}

TensorField combine(double ca, const TensorField& a, double cb, const TensorField& b, std::string name)
{
    auto f = [a, b, ca, cb](const Point& x, const Point& y) {
        Components u = a(x, y);
        const Components v = b(x, y);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = ca * u[i] + cb * v[i];
        return u;
    };
    return TensorField(std::move(name), a.domain(), a.contra(), a.co(), a.alpha(), f);
}

}  // namespace

TensorField add(const TensorField& a, const TensorField& b)
{
    require_same_type(a, b, "add");
    return combine(1.0, a, 1.0, b, "(" + a.name() + "+" + b.name() + ")");
}

TensorField subtract(const TensorField& a, const TensorField& b)
{
    require_same_type(a, b, "subtract");
    return combine(1.0, a, -1.0, b, "(" + a.name() + "-" + b.name() + ")");
}

TensorField scale(double c, const TensorField& t)
{
    auto f = [t, c](const Point& x, const Point& y) {
        Components u = t(x, y);
        for (Dual& v : u) v = c * v;
        return u;
    };
    return TensorField(t.name(), t.domain(), t.contra(), t.co(), t.alpha(), f);
}

TensorField liouville_field(const Domain& d)
{
    return TensorField("C", d, 1, 0, 1.0, [](const Point&, const Point& y) { return Components(y); });
}

TensorField kronecker_field(const Domain& d)
{
    const int n = d->dim();
    return TensorField("delta", d, 1, 1, 0.0, [n](const Point&, const Point&) {
        Components c(static_cast<std::size_t>(n * n), Dual(0.0));
        for (int i = 0; i < n; ++i) c[i * n + i] = 1.0;
        return c;
    });
}

TensorField zero_field(const Domain& d, int r, int s, double alpha)
{
    std::size_t size = 1;
    for (int i = 0; i < r + s; ++i) size *= static_cast<std::size_t>(d->dim());
    return TensorField("0", d, r, s, alpha, [size](const Point&, const Point&) { return Components(size); });
}

}  // namespace finsler
