#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosetiq/gf.hpp"

namespace cosetiq {

using Vec = std::vector<uint8_t>;  // coordinate vector, entry codes < q

// Dense matrix over F_q, row-major element codes.  Matrices act on column
// vectors; a row of the matrix is a row of coefficients.
class MatF {
public:
    MatF() = default;
    MatF(const FieldContext& f, unsigned rows, unsigned cols)
        : f_(&f), rows_(rows), cols_(cols), e_(size_t(rows) * cols, 0) {}

    static MatF identity(const FieldContext& f, unsigned n);
    static MatF from_rows(const FieldContext& f, const std::vector<Vec>& rows, unsigned cols);

    const FieldContext& field() const { return *f_; }
    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    uint8_t at(unsigned r, unsigned c) const { return e_[size_t(r) * cols_ + c]; }
    uint8_t& at(unsigned r, unsigned c) { return e_[size_t(r) * cols_ + c]; }

    Vec row(unsigned r) const;
    Vec col(unsigned c) const;
    void set_row(unsigned r, const Vec& v);
    void set_col(unsigned c, const Vec& v);

    MatF operator*(const MatF& other) const;
    Vec apply(const Vec& x) const;  // column-vector convention: this * x
    MatF transpose() const;
    MatF block(unsigned r0, unsigned c0, unsigned h, unsigned w) const;

    // Unique reduced row echelon form and its rank.  Deterministic
    // (first-nonzero pivoting) so canonical forms are platform-independent.
    std::pair<MatF, unsigned> rref() const;
    unsigned rank() const { return rref().second; }

    // Exact inverse, or nullopt when singular (flag, not an exception).
    std::optional<MatF> inverse() const;

    bool operator==(const MatF& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    // Entries serialized base-q, row-major, row 0 least significant.
    // Injective for fixed (rows, cols, q); throws when q^(rows*cols) would
    // overflow 64 bits.
    uint64_t packed_key() const;
    static MatF from_packed_key(const FieldContext& f, unsigned rows, unsigned cols, uint64_t key);

    std::string to_string() const;

private:
    const FieldContext* f_ = nullptr;
    unsigned rows_ = 0, cols_ = 0;
    std::vector<uint8_t> e_;
};

// q=2 fast path: each row as a bit mask (one machine word per row, up to 64
// columns).  Semantic equality is always defined by element codes; these are
// views used by enumeration hot loops.
std::vector<uint64_t> to_bit_rows(const MatF& m);
MatF from_bit_rows(const FieldContext& f, const std::vector<uint64_t>& rows, unsigned cols);

Vec vec_add(const FieldContext& f, const Vec& a, const Vec& b);
Vec vec_scale(const FieldContext& f, uint8_t c, const Vec& a);
bool vec_is_zero(const Vec& a);

}  // namespace cosetiq
