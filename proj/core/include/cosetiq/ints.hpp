#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cosetiq {

// Exact arbitrary-precision arithmetic used everywhere a count or a
// coefficient can outgrow 64 bits.  No floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(const Int& base, unsigned e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

inline Int int_pow(unsigned base, unsigned e) { return int_pow(Int(base), e); }

// Exact quotient; refuses to round.
inline Int exact_div(const Int& a, const Int& b) {
    if (b == 0) throw std::invalid_argument("exact_div: zero divisor");
    Int q = a / b;
    if (q * b != a) throw std::logic_error("exact_div: " + a.str() + " not divisible by " + b.str());
    return q;
}

inline std::string rat_str(const Rat& r) {
    return r.str();  // "p/q" reduced, or "p" when the denominator is 1
}

Rat parse_rat(const std::string& s);
Int parse_int(const std::string& s);

}  // namespace cosetiq
