#include "finsler/dual.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace finsler {

Dual Dual::infinitesimal(int tag)
{
    if (tag < 0 || tag > 20) throw std::logic_error("dual tag out of range");
    Dual r;
    r.c_.assign(std::size_t{1} << (tag + 1), 0.0);
    r.c_[std::size_t{1} << tag] = 1.0;
    return r;
}

int Dual::tags() const
{
    return std::countr_zero(c_.size());
}

Dual Dual::derivative(int tag) const
{
    const int k = tags();
    if (k > tag + 1) throw std::logic_error("dual derivative: higher tag still live");
    if (k <= tag) return Dual(0.0);
    const std::size_t half = std::size_t{1} << tag;
    Dual r;
    r.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(half), c_.end());
    return r;
}

Dual& Dual::operator+=(const Dual& b)
{
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), 0.0);
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
    return *this;
}

Dual& Dual::operator-=(const Dual& b)
{
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size(), 0.0);
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] -= b.c_[i];
    return *this;
}

Dual& Dual::operator*=(const Dual& b)
{
    *this = *this * b;
    return *this;
}

Dual& Dual::operator/=(const Dual& b)
{
    *this = *this / b;
    return *this;
}

Dual Dual::operator-() const
{
    Dual r = *this;
    for (double& v : r.c_) v = -v;
    return r;
}

Dual operator*(const Dual& a, const Dual& b)
{
    const std::size_t sa = a.c_.size(), sb = b.c_.size();
    if (sa == 1 || sb == 1) {
        const Dual& big = sa == 1 ? b : a;
        const double s = sa == 1 ? a.c_[0] : b.c_[0];
        Dual r = big;
        for (double& v : r.c_) v *= s;
        return r;
    }
    const std::size_t n = std::max(sa, sb);
    Dual r;
    r.c_.assign(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
        double acc = 0.0;
        // split the monomial m into disjoint submasks s (from a) and m^s (from b)
        for (std::size_t s = m;; s = (s - 1) & m) {
            const std::size_t t = m ^ s;
            if (s < sa && t < sb) acc += a.c_[s] * b.c_[t];
            if (s == 0) break;
        }
        r.c_[m] = acc;
    }
    return r;
}

Dual operator/(const Dual& a, const Dual& b)
{
    if (b.c_.size() == 1) {
        Dual r = a;
        for (double& v : r.c_) v /= b.c_[0];
        return r;
    }
    return a * pow(b, -1.0);
}

Dual apply_series(const Dual& a, const std::vector<double>& d)
{
    Dual r(d[0]);
    if (a.c_.size() == 1) return r;
    Dual u = a;
    u.c_[0] = 0.0;
    Dual p(1.0);
    double fact = 1.0;
    for (std::size_t m = 1; m < d.size(); ++m) {
        p = p * u;
        fact *= static_cast<double>(m);
        const double w = d[m] / fact;
        if (r.c_.size() < p.c_.size()) r.c_.resize(p.c_.size(), 0.0);
        for (std::size_t i = 0; i < p.c_.size(); ++i) r.c_[i] += w * p.c_[i];
    }
    return r;
}

namespace {

// u^m vanishes for m > tags, so that many derivatives suffice.
std::size_t order(const Dual& a)
{
    return static_cast<std::size_t>(a.tags()) + 1;
}

}  // namespace

Dual exp(const Dual& a)
{
    return apply_series(a, std::vector<double>(order(a), std::exp(a.value())));
}

Dual log(const Dual& a)
{
    const double x = a.value();
    std::vector<double> d(order(a));
    d[0] = std::log(x);
    double f = 1.0;
    for (std::size_t m = 1; m < d.size(); ++m) {
        d[m] = f / std::pow(x, static_cast<double>(m));
        f *= -static_cast<double>(m);
    }
    return apply_series(a, d);
}

Dual pow(const Dual& a, double p)
{
    const double x = a.value();
    std::vector<double> d(order(a));
    double falling = 1.0;
    for (std::size_t m = 0; m < d.size(); ++m) {
        d[m] = falling * std::pow(x, p - static_cast<double>(m));
        falling *= p - static_cast<double>(m);
    }
    return apply_series(a, d);
}

Dual sqrt(const Dual& a)
{
    return pow(a, 0.5);
}

Dual sin(const Dual& a)
{
    const double s = std::sin(a.value()), c = std::cos(a.value());
    const double cyc[4] = {s, c, -s, -c};
    std::vector<double> d(order(a));
    for (std::size_t m = 0; m < d.size(); ++m) d[m] = cyc[m % 4];
    return apply_series(a, d);
}

Dual cos(const Dual& a)
{
    const double s = std::sin(a.value()), c = std::cos(a.value());
    const double cyc[4] = {c, -s, -c, s};
    std::vector<double> d(order(a));
    for (std::size_t m = 0; m < d.size(); ++m) d[m] = cyc[m % 4];
    return apply_series(a, d);
}

Dual abs(const Dual& a)
{
    return a.value() < 0.0 ? -a : a;
}

}  // namespace finsler
