#pragma once

#include <string>
#include <vector>

#include "cosetiq/ints.hpp"

namespace cosetiq {

// Univariate polynomial over Q in the variable t (semantics: t = q^nu),
// coefficients lowest degree first, no trailing zeros.
class RatPoly {
public:
    RatPoly() = default;
    RatPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RatPoly constant(const Rat& r) { return RatPoly({r}); }
    static RatPoly t() { return RatPoly({Rat(0), Rat(1)}); }

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is the sentinel -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    RatPoly operator*(const Rat& s) const;
    RatPoly operator-() const;
    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    Rat eval(const Rat& t) const;

    // Divide by (t - root); throws unless root is an exact root.
    RatPoly deflate(const Rat& root) const;

    // Integer-normalized copy: multiplied by the lcm of denominators and
    // divided by the content, so coefficients are coprime integers.
    RatPoly integer_normalized() const;

    std::string to_string(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Unique interpolating polynomial through distinct points (t_i, v_i).
RatPoly lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& points);

// Exact rational roots of p (each listed once), via the rational root
// theorem on the integer-normalized polynomial.
std::vector<Rat> rational_roots(const RatPoly& p);

}  // namespace cosetiq
