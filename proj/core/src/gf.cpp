#include "cosetiq/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace cosetiq {

bool factor_prime_power(unsigned q, unsigned& p, unsigned& k) {
    if (q < 2) return false;
    unsigned m = q;
    for (unsigned d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            p = d;
            k = 0;
            while (m % d == 0) { m /= d; ++k; }
            return m == 1;
        }
    }
    p = q;
    k = 1;
    return true;
}

namespace {

// Polynomials over F_p as digit vectors, little-endian; all arithmetic mod p.
using Poly = std::vector<uint8_t>;

Poly poly_mod(Poly a, const Poly& m, unsigned p) {
    // m monic of degree deg(m)
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        uint8_t lead = a.back();
        if (lead != 0) {
            size_t shift = a.size() - 1 - dm;
            for (size_t i = 0; i <= dm; ++i) {
                unsigned v = a[shift + i] + p - (lead * m[i]) % p;
                a[shift + i] = static_cast<uint8_t>(v % p);
            }
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, unsigned p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<uint8_t>((c[i + j] + a[i] * b[j]) % p);
    return poly_mod(std::move(c), m, p);
}

Poly code_to_poly(unsigned code, unsigned p) {
    Poly c;
    while (code) { c.push_back(static_cast<uint8_t>(code % p)); code /= p; }
    return c;
}

unsigned poly_to_code(const Poly& a, unsigned p) {
    unsigned code = 0;
    for (size_t i = a.size(); i-- > 0;) code = code * p + a[i];
    return code;
}

bool is_irreducible(const Poly& m, unsigned p) {
    // Trial division by all monic polynomials of degree 1..deg/2.
    const unsigned deg = static_cast<unsigned>(m.size()) - 1;
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        unsigned count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;  // p^d choices of lower coeffs
        for (unsigned c = 0; c < count; ++c) {
            Poly div = code_to_poly(c, p);
            div.resize(d + 1, 0);
            div[d] = 1;
            if (poly_mod(m, div, p).empty()) return false;
        }
    }
    return true;
}

Poly least_monic_irreducible(unsigned p, unsigned k) {
    unsigned count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (unsigned c = 0; c < count; ++c) {
        Poly m = code_to_poly(c, p);
        m.resize(k + 1, 0);
        m[k] = 1;
        if (is_irreducible(m, p)) return m;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

FieldContext::FieldContext(unsigned q) : q_(q) {
    if (!factor_prime_power(q, p_, k_))
        throw std::invalid_argument("F_q requires a prime power, got q=" + std::to_string(q));
    if (q > kMaxQ)
        throw std::invalid_argument("q=" + std::to_string(q) + " exceeds supported maximum " +
                                    std::to_string(kMaxQ));

    modulus_ = (k_ == 1) ? Poly{0, 1} : least_monic_irreducible(p_, k_);

    add_.assign(size_t(q_) * q_, 0);
    mul_.assign(size_t(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);

    for (unsigned a = 0; a < q_; ++a) {
        Poly pa = code_to_poly(a, p_);
        for (unsigned b = 0; b < q_; ++b) {
            Poly pb = code_to_poly(b, p_);
            Poly s(std::max(pa.size(), pb.size()), 0);
            for (size_t i = 0; i < s.size(); ++i) {
                unsigned v = (i < pa.size() ? pa[i] : 0) + (i < pb.size() ? pb[i] : 0);
                s[i] = static_cast<uint8_t>(v % p_);
            }
            add_[size_t(a) * q_ + b] = static_cast<uint8_t>(poly_to_code(s, p_));
            mul_[size_t(a) * q_ + b] =
                static_cast<uint8_t>(poly_to_code(poly_mul_mod(pa, pb, modulus_, p_), p_));
        }
    }
    for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b < q_; ++b)
            if (add_[size_t(a) * q_ + b] == 0) neg_[a] = static_cast<uint8_t>(b);
    for (unsigned a = 1; a < q_; ++a) {
        bool found = false;
        for (unsigned b = 1; b < q_; ++b)
            if (mul_[size_t(a) * q_ + b] == 1) { inv_[a] = static_cast<uint8_t>(b); found = true; }
        if (!found) throw std::logic_error("field table construction: missing inverse");
    }
}

const FieldContext& FieldContext::get(unsigned q) {
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<const FieldContext>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end())
        it = cache.emplace(q, std::make_unique<const FieldContext>(q)).first;
    return *it->second;
}

uint8_t FieldContext::inv(uint8_t a) const {
    if (a == 0) throw std::invalid_argument("inverse of zero");
    return inv_[a];
}

uint8_t FieldContext::pow(uint8_t a, uint64_t e) const {
    uint8_t r = 1, b = a;
    while (e) {
        if (e & 1u) r = mul(r, b);
        b = mul(b, b);
        e >>= 1u;
    }
    return r;
}

bool FieldContext::validate() const {
    const unsigned q = q_;
    for (unsigned a = 0; a < q; ++a) {
        if (add(a, 0) != a || mul(a, 1) != a) return false;
        if (mul(a, 0) != 0) return false;
        if (add(a, neg_[a]) != 0) return false;
        if (a != 0 && mul(a, inv_[a]) != 1) return false;
        if (pow(static_cast<uint8_t>(a), q) != a) return false;  // Frobenius a^q = a
    }
    for (unsigned a = 0; a < q; ++a)
        for (unsigned b = 0; b < q; ++b) {
            if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) return false;
            for (unsigned c = 0; c < q; ++c) {
                if (add(add(a, b), c) != add(a, add(b, c))) return false;
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
                if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return false;
            }
        }
    return true;
}

}  // namespace cosetiq
