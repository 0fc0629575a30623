#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "finsler/dual.hpp"
#include "finsler/errors.hpp"

namespace finsler {

using Point = std::vector<Dual>;
using Components = std::vector<Dual>;
using Closure = std::function<Components(const Point& x, const Point& y)>;

// ---------------------------------------------------------------------------
// Conic domain A inside one chart

struct SamplerSpec {
    std::vector<double> x_lo;
    std::vector<double> x_hi;
    double r_min = 0.5;
    double r_max = 2.0;
    // Draws for which this returns true are rejected.
    std::function<bool(const Sample&)> excluded;
};

class ConicDomain {
public:
    using Predicate = std::function<bool(const std::vector<double>& x, const std::vector<double>& y)>;
    using Sampler = std::function<Sample(std::mt19937_64&)>;

    ConicDomain(std::string name, int n, Predicate membership, SamplerSpec spec);
    ConicDomain(std::string name, int n, Predicate membership, Sampler sampler);

    const std::string& name() const { return name_; }
    int dim() const { return n_; }

    // y != 0 and the membership predicate holds.
    bool contains(const std::vector<double>& x, const std::vector<double>& y) const;

    Sample draw(std::mt19937_64& rng) const { return sampler_(rng); }
    std::vector<Sample> samples(std::size_t count, std::uint64_t seed) const;

private:
    std::string name_;
    int n_;
    Predicate membership_;
    Sampler sampler_;
};

using Domain = std::shared_ptr<const ConicDomain>;

// Whole-chart domain: x in the box, any y != 0.
Domain punctured_domain(std::string name, int n, double x_half_width = 1.0);

// ---------------------------------------------------------------------------
// Differentiation policy

enum class DiffMethod { analytic, fd4 };

struct DiffEngine {
    DiffMethod method = DiffMethod::analytic;  // vertical (y) derivatives
    DiffMethod x_method = DiffMethod::fd4;     // derivatives in the base point x
    double step_scale = 1.0;

    // h = step_scale * cbrt(eps) * max(1, |v|_inf)
    double step(const Point& v) const;

    static DiffEngine exact() { return {DiffMethod::analytic, DiffMethod::analytic, 1.0}; }
    static DiffEngine finite(double scale = 1.0) { return {DiffMethod::fd4, DiffMethod::fd4, scale}; }
};

// ---------------------------------------------------------------------------
// Anisotropic tensor field of type (r, s) with declared homogeneity alpha

class TensorField {
public:
    TensorField(std::string name, Domain domain, int r, int s, double alpha, Closure components);

    const std::string& name() const { return impl_->name; }
    const Domain& domain() const { return impl_->domain; }
    int dim() const { return impl_->domain->dim(); }
    int contra() const { return impl_->r; }
    int co() const { return impl_->s; }
    double alpha() const { return impl_->alpha; }
    std::size_t size() const { return impl_->size; }

    // Raw closure call, no domain check. Used when composing fields.
    Components operator()(const Point& x, const Point& y) const;

    // Domain-checked evaluation at a real point.
    std::vector<double> evaluate(const std::vector<double>& x, const std::vector<double>& y) const;

    TensorField renamed(std::string name) const;
    TensorField with_vertical_derivative(Closure d) const;
    TensorField with_x_derivative(Closure d) const;
    const Closure* vertical_hint() const { return impl_->dy ? &*impl_->dy : nullptr; }
    const Closure* x_hint() const { return impl_->dx ? &*impl_->dx : nullptr; }

private:
    struct Impl {
        std::string name;
        Domain domain;
        int r = 0;
        int s = 0;
        double alpha = 0.0;
        std::size_t size = 1;
        Closure f;
        std::optional<Closure> dy;
        std::optional<Closure> dx;
    };
    explicit TensorField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

// Row-major offset of a multi-index; contravariant indices come first.
std::size_t flat(int n, std::initializer_list<int> idx);

Point lift(const std::vector<double>& v);
std::vector<double> values(const Components& c);

// Smallest tag not used by any coordinate of (x, y).
int fresh_tag(const Point& x, const Point& y);

// (r, s+1), alpha-1; the new index is the last covariant slot.
TensorField vertical_derivative(const TensorField& t, const DiffEngine& engine = {});

// (r, s+1), alpha unchanged; partial derivatives in x appended last.
TensorField x_derivative(const TensorField& t, const DiffEngine& engine = {});

// (r, s-1), alpha+1; contracts the last covariant slot with y.
TensorField liouville_contract(const TensorField& t);

// T_{...a} y^a - alpha T at (x, y).
std::vector<double> homogeneity_defect(const TensorField& t, const DiffEngine& engine,
                                       const std::vector<double>& x, const std::vector<double>& y);

TensorField add(const TensorField& a, const TensorField& b);
TensorField subtract(const TensorField& a, const TensorField& b);
TensorField scale(double c, const TensorField& t);

TensorField liouville_field(const Domain& d);
TensorField kronecker_field(const Domain& d);
TensorField zero_field(const Domain& d, int r, int s, double alpha);

}  // namespace finsler
