#include <cmath>
#include <cstdio>

#include "finsler/field.hpp"

namespace finsler {

std::string describe(const Sample& s)
{
    auto list = [](const std::vector<double>& v) {
        std::string out = "(";
        char buf[32];
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", v[i]);
            out += (i ? ", " : "") + std::string(buf);
        }
        return out + ")";
    };
    return "x=" + list(s.x) + " y=" + list(s.y);
}

namespace {

ConicDomain::Sampler box_shell_sampler(int n, ConicDomain::Predicate membership, SamplerSpec spec)
{
    if (spec.x_lo.size() != static_cast<std::size_t>(n) || spec.x_hi.size() != static_cast<std::size_t>(n))
        throw ShapeError("sampler box must have one interval per coordinate");
    return [n, membership = std::move(membership), spec = std::move(spec)](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int attempt = 0; attempt < 100000; ++attempt) {
            Sample s{std::vector<double>(n), std::vector<double>(n)};
            for (int i = 0; i < n; ++i) s.x[i] = spec.x_lo[i] + (spec.x_hi[i] - spec.x_lo[i]) * unit(rng);
            double norm = 0.0;
            for (int i = 0; i < n; ++i) {
                s.y[i] = gauss(rng);
                norm += s.y[i] * s.y[i];
            }
            norm = std::sqrt(norm);
            if (norm < 1e-12) continue;
            const double r = spec.r_min + (spec.r_max - spec.r_min) * unit(rng);
            for (double& v : s.y) v *= r / norm;
            if (!membership(s.x, s.y)) continue;
            if (spec.excluded && spec.excluded(s)) continue;
            return s;
        }
        throw DomainError("sampler could not find a point of the domain");
    };
}

}  // namespace

ConicDomain::ConicDomain(std::string name, int n, Predicate membership, SamplerSpec spec)
    : name_(std::move(name)), n_(n), membership_(std::move(membership))
{
    sampler_ = box_shell_sampler(n_, membership_, std::move(spec));
}

ConicDomain::ConicDomain(std::string name, int n, Predicate membership, Sampler sampler)
    : name_(std::move(name)), n_(n), membership_(std::move(membership)), sampler_(std::move(sampler))
{
}

bool ConicDomain::contains(const std::vector<double>& x, const std::vector<double>& y) const
{
    if (x.size() != static_cast<std::size_t>(n_) || y.size() != static_cast<std::size_t>(n_)) return false;
    bool nonzero = false;
    for (double v : y) nonzero = nonzero || v != 0.0;
    return nonzero && membership_(x, y);
}

std::vector<Sample> ConicDomain::samples(std::size_t count, std::uint64_t seed) const
{
    std::mt19937_64 rng(seed);
    std::vector<Sample> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sampler_(rng));
    return out;
}

Domain punctured_domain(std::string name, int n, double x_half_width)
{
    SamplerSpec spec;
    spec.x_lo.assign(n, -x_half_width);
    spec.x_hi.assign(n, x_half_width);
    const double w = x_half_width;
    auto member = [w](const std::vector<double>& x, const std::vector<double>&) {
        for (double v : x)
            if (std::abs(v) > w) return false;
        return true;
    };
    return std::make_shared<const ConicDomain>(std::move(name), n, member, std::move(spec));
}

}  // namespace finsler
