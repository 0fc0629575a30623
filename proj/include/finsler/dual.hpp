#pragma once

#include <cstddef>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace finsler {

// Element of R[e_0, ..., e_{k-1}] / (e_i^2), stored as 2^k coefficients
// indexed by the bitmask of the tags present in each monomial.
//
// Each nested derivative uses a fresh tag, so mixed partials of any order
// come out exact:
//     Dual y = Dual(2.0) + Dual::infinitesimal(0);
//     (y * y * y).derivative(0).value() == 12.0
class Dual {
public:
    Dual() : c_(1, 0.0) {}
    Dual(double v) : c_(1, v) {}

    static Dual infinitesimal(int tag);

    double value() const { return c_[0]; }

    // Number of tags spanned by the coefficient array.
    int tags() const;

    double coefficient(std::size_t mask) const { return mask < c_.size() ? c_[mask] : 0.0; }

    // Coefficient of e_tag. Throws std::logic_error if a tag above `tag` is present.
    Dual derivative(int tag) const;

    Dual& operator+=(const Dual& b);
    Dual& operator-=(const Dual& b);
    Dual& operator*=(const Dual& b);
    Dual& operator/=(const Dual& b);

    Dual operator-() const;

    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(const Dual& a, const Dual& b);
    friend Dual operator/(const Dual& a, const Dual& b);

    // f(a) = sum_m f^(m)(a0)/m! u^m with u the nilpotent part; d[m] = f^(m)(a0).
    friend Dual apply_series(const Dual& a, const std::vector<double>& d);

private:
    // Up to three live tags stay inline.
    boost::container::small_vector<double, 8> c_;
};

Dual exp(const Dual& a);
Dual log(const Dual& a);
Dual sqrt(const Dual& a);
Dual pow(const Dual& a, double p);
Dual sin(const Dual& a);
Dual cos(const Dual& a);
Dual abs(const Dual& a);

}  // namespace finsler
