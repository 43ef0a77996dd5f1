#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cosetiq/ints.hpp"
#include "cosetiq/subspace.hpp"

namespace cosetiq {

// Memory guard for exhaustive enumerations.
struct Budget {
    uint64_t max_elements = 20'000'000;
};

class BudgetError : public std::runtime_error {
public:
    BudgetError(const Int& required, uint64_t budget)
        : std::runtime_error("enumeration refused: requires " + required.str() +
                             " elements, budget is " + std::to_string(budget)),
          required_(required) {}
    const Int& required() const { return required_; }

private:
    Int required_;
};

// #GL(m, F_q) = (q^m - 1)(q^m - q)...(q^m - q^{m-1}); m = 0 gives 1.
Int gl_order(unsigned m, unsigned q);
// [q; l] = (q^l - 1)(q^{l-1} - 1)...(q - 1).
Int bracket_q(unsigned q, unsigned l);
// #H(n) = #GL(n, F_q) * q^{alpha n}.
Int h_order(unsigned alpha, unsigned n, unsigned q);
// #Xi(L) = q^{alpha-1}(q-1).
Int xi_order(unsigned alpha, unsigned q);

// All invertible m x m matrices as sorted packed keys.  Matrices are
// re-expanded on demand; the sorted key list is the index.
class GroupTable {
public:
    GroupTable(const FieldContext& f, unsigned m, std::vector<uint64_t> keys);

    const FieldContext& field() const { return *f_; }
    unsigned m() const { return m_; }
    size_t size() const { return keys_.size(); }
    const std::vector<uint64_t>& keys() const { return keys_; }
    uint64_t key(size_t i) const { return keys_[i]; }
    MatF matrix(size_t i) const;
    bool contains(uint64_t key) const;
    size_t index_of(uint64_t key) const;  // throws when absent

private:
    const FieldContext* f_;
    unsigned m_;
    std::vector<uint64_t> keys_;  // sorted
};

GroupTable enumerate_gl(unsigned m, unsigned q, const Budget& budget = {});

// All g in GL(alpha, F_q) fixing the codimension-1 subspace L pointwise,
// deterministic order; count q^{alpha-1}(q-1).
std::vector<MatF> xi_subgroup(const Subspace& L);

// Deterministic involution with gamma L = M, gamma M = L, gamma^2 = 1,
// fixing L cap M pointwise.  L != M, both codimension 1.
MatF gamma_involution(const Subspace& L, const Subspace& M);
// Every valid choice (one per image of the fixed transversal of L).
std::vector<MatF> all_gamma_involutions(const Subspace& L, const Subspace& M);

}  // namespace cosetiq
