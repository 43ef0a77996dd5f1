#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace cosetiq {

// Arithmetic in F_q, q = p^k <= 64, through total lookup tables.
//
// Elements are dense integer codes 0..q-1.  Code 0 is the additive zero and
// code 1 the multiplicative unit.  For k > 1 an element with code c is the
// polynomial sum_i c_i x^i where (c_0, c_1, ...) are the base-p digits of c,
// reduced modulo a fixed irreducible: the lexicographically least monic
// irreducible of degree k over F_p (least in the numeric order of its
// coefficient code), so codes are reproducible across runs and platforms.
class FieldContext {
public:
    static constexpr unsigned kMaxQ = 64;

    explicit FieldContext(unsigned q);

    // Interned immutable instance; safe for unrestricted concurrent reads.
    static const FieldContext& get(unsigned q);

    unsigned q() const { return q_; }
    unsigned characteristic() const { return p_; }
    unsigned degree() const { return k_; }

    uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
    uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
    uint8_t neg(uint8_t a) const { return neg_[a]; }
    uint8_t inv(uint8_t a) const;  // throws on a == 0
    uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

    uint8_t pow(uint8_t a, uint64_t e) const;

    // Modulus polynomial coefficient codes over F_p, degree k, monic
    // (constant term first, including the leading 1).  For k == 1 this is
    // {0, 1} by convention.
    const std::vector<uint8_t>& modulus() const { return modulus_; }

    // Exhaustive field-axiom check (associativity, commutativity,
    // distributivity, inverses, Frobenius).  Cheap for q <= 64.
    bool validate() const;

private:
    unsigned q_ = 0, p_ = 0, k_ = 0;
    std::vector<uint8_t> add_, mul_, neg_, inv_;
    std::vector<uint8_t> modulus_;
};

// True when q = p^k with p prime and q >= 2; fills p, k.
bool factor_prime_power(unsigned q, unsigned& p, unsigned& k);

}  // namespace cosetiq
