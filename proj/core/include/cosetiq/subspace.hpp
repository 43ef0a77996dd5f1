#pragma once

#include <string>
#include <vector>

#include "cosetiq/matf.hpp"

namespace cosetiq {

// A subspace of F_q^a held as the RREF row basis of its coordinate vectors
// (rows store transposed column vectors).  The representation is canonical:
// two Subspace values are equal iff they are the same subspace, so Subspace
// works directly as a map key.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(const FieldContext& f, unsigned ambient);
    static Subspace full(const FieldContext& f, unsigned ambient);
    // Span of the given row vectors (any spanning set; reduced internally).
    static Subspace from_span(const MatF& rows);
    static Subspace from_span(const FieldContext& f, const std::vector<Vec>& rows,
                              unsigned ambient);

    const FieldContext& field() const { return basis_.field(); }
    unsigned ambient() const { return ambient_; }
    unsigned dim() const { return basis_.rows(); }
    unsigned codim() const { return ambient_ - dim(); }

    // r x ambient RREF matrix, no zero rows.
    const MatF& basis() const { return basis_; }
    Vec basis_vector(unsigned i) const { return basis_.row(i); }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;

    Subspace intersect(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;

    // Coordinates of v in this basis, if v lies in the subspace.
    std::optional<Vec> coordinates(const Vec& v) const;

    // Invertible ambient x ambient matrix whose first dim() columns are the
    // basis vectors; the completion takes standard basis vectors e_i at the
    // non-pivot positions of the RREF, in increasing i.
    MatF complete_to_basis() const;
    std::vector<unsigned> pivot_columns() const;
    std::vector<unsigned> nonpivot_columns() const;

    // All member vectors, deterministic order (coefficient codes ascending).
    std::vector<Vec> vectors() const;

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator<(const Subspace& o) const;  // deterministic total order

    std::string key() const;  // textual canonical key

private:
    MatF basis_;  // RREF, no zero rows
    unsigned ambient_ = 0;
};

// Canonical subspace of all column vectors x with m*x = 0;
// dim = cols - rank(m).
Subspace kernel(const MatF& m);
// Column space of m as a canonical subspace of F^rows.
Subspace image(const MatF& m);

// Enumerations, deterministic order (RREF shape lexicographic).
std::vector<Subspace> all_subspaces(const FieldContext& f, unsigned ambient, unsigned dim);
std::vector<Subspace> all_subspaces(const FieldContext& f, unsigned ambient);
std::vector<Subspace> all_hyperplanes(const FieldContext& f, unsigned ambient);
std::vector<Subspace> hyperplanes_containing(const Subspace& n);

}  // namespace cosetiq
