#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cosetiq/matf.hpp"

namespace cosetiq {

// Hot-loop representation of F_q^d: vectors as codes 0..q^d-1 (base-q digit
// strings), with total lookup tables for vector addition and scalar
// multiplication.  Intended for small d (enumeration budgets keep q^d tiny).
struct SpaceCodes {
    SpaceCodes(const FieldContext& f, unsigned dim);

    const FieldContext* field;
    unsigned dim;
    uint32_t size;                // q^dim
    std::vector<uint32_t> add;    // [a*size + b]
    std::vector<uint32_t> smul;   // [c*size + a], c < q
    std::vector<uint8_t> digits;  // [a*dim + j] = j-th coordinate of a

    uint32_t vadd(uint32_t a, uint32_t b) const { return add[size_t(a) * size + b]; }
    uint32_t vsmul(uint8_t c, uint32_t a) const { return smul[size_t(c) * size + a]; }
    uint8_t digit(uint32_t a, unsigned j) const { return digits[size_t(a) * dim + j]; }

    uint32_t code_of(const Vec& v) const;
    Vec vec_of(uint32_t code) const;
};

// Fast m x m matrix product on row-code representation (row i of the matrix
// is the code of its i-th row vector).  For q=2 row codes are bit masks and
// the product reduces to XOR row selection.
struct MatCodes {
    explicit MatCodes(const SpaceCodes& space);
    const SpaceCodes* space;
    unsigned m;
    bool q2;

    void mul(const uint32_t* a, const uint32_t* b, uint32_t* out) const;
    uint64_t packed_key(const uint32_t* rows) const;  // == MatF::packed_key
    void unpack_key(uint64_t key, uint32_t* rows) const;
    void from_mat(const MatF& mat, uint32_t* rows) const;
    MatF to_mat(const uint32_t* rows) const;

private:
    uint64_t row_place_ = 0;  // q^m
};

// Streams every invertible m x m matrix over F_q exactly once as row codes
// (row-by-row construction: each row outside the span of the previous ones).
// Two-level form for deterministic parallel slicing: matrices whose first
// row code has index `slice` mod `nslices` among nonzero codes.  Order
// within a slice is deterministic.
void for_each_gl_slice(const SpaceCodes& space, unsigned m, unsigned slice, unsigned nslices,
                       const std::function<void(const uint32_t* rows)>& fn);

inline void for_each_gl(const SpaceCodes& space, unsigned m,
                        const std::function<void(const uint32_t* rows)>& fn) {
    for_each_gl_slice(space, m, 0, 1, fn);
}

}  // namespace cosetiq
