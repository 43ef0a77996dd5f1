#include "cosetiq/groups.hpp"

#include <algorithm>

#include "cosetiq/enumeration.hpp"

namespace cosetiq {

Int gl_order(unsigned m, unsigned q) {
    Int qm = int_pow(q, m);
    Int r = 1;
    for (unsigned j = 0; j < m; ++j) r *= qm - int_pow(q, j);
    return r;
}

Int bracket_q(unsigned q, unsigned l) {
    Int r = 1;
    for (unsigned j = 1; j <= l; ++j) r *= int_pow(q, j) - 1;
    return r;
}

Int h_order(unsigned alpha, unsigned n, unsigned q) {
    return gl_order(n, q) * int_pow(q, alpha * n);
}

Int xi_order(unsigned alpha, unsigned q) {
    if (alpha == 0) throw std::invalid_argument("xi_order: alpha must be positive");
    return int_pow(q, alpha - 1) * (q - 1);
}

GroupTable::GroupTable(const FieldContext& f, unsigned m, std::vector<uint64_t> keys)
    : f_(&f), m_(m), keys_(std::move(keys)) {
    std::sort(keys_.begin(), keys_.end());
}

MatF GroupTable::matrix(size_t i) const { return MatF::from_packed_key(*f_, m_, m_, keys_[i]); }

bool GroupTable::contains(uint64_t key) const {
    return std::binary_search(keys_.begin(), keys_.end(), key);
}

size_t GroupTable::index_of(uint64_t key) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) throw std::out_of_range("GroupTable: key not present");
    return static_cast<size_t>(it - keys_.begin());
}

GroupTable enumerate_gl(unsigned m, unsigned q, const Budget& budget) {
    const FieldContext& f = FieldContext::get(q);
    Int order = gl_order(m, q);
    if (order > budget.max_elements) throw BudgetError(order, budget.max_elements);
    std::vector<uint64_t> keys;
    keys.reserve(static_cast<size_t>(order));
    if (m == 0) {
        keys.push_back(0);
        return GroupTable(f, m, std::move(keys));
    }
    SpaceCodes space(f, m);
    MatCodes mats(space);
    for_each_gl(space, m, [&](const uint32_t* rows) { keys.push_back(mats.packed_key(rows)); });
    if (Int(keys.size()) != order)
        throw std::logic_error("enumerate_gl: count mismatch against the order formula");
    return GroupTable(f, m, std::move(keys));
}

std::vector<MatF> xi_subgroup(const Subspace& L) {
    const FieldContext& f = L.field();
    const unsigned alpha = L.ambient();
    if (L.codim() != 1) throw std::invalid_argument("xi_subgroup: L must have codimension 1");
    // In the basis P = [L basis | completion w], fixing L pointwise means
    // P^-1 g P = [[I, u], [0, c]] with c != 0; enumerate (u, c).
    MatF P = L.complete_to_basis();
    MatF Pinv = *P.inverse();
    std::vector<MatF> out;
    const unsigned r = alpha - 1;
    uint64_t ucount = 1;
    for (unsigned i = 0; i < r; ++i) ucount *= f.q();
    for (uint64_t ucode = 0; ucode < ucount; ++ucode) {
        for (unsigned c = 1; c < f.q(); ++c) {
            MatF inner = MatF::identity(f, alpha);
            uint64_t x = ucode;
            for (unsigned i = 0; i < r; ++i) {
                inner.at(i, r) = static_cast<uint8_t>(x % f.q());
                x /= f.q();
            }
            inner.at(r, r) = static_cast<uint8_t>(c);
            out.push_back(P * inner * Pinv);
        }
    }
    return out;
}

namespace {

// First RREF basis vector of a not contained in b.
Vec transversal_vector(const Subspace& a, const Subspace& b) {
    for (unsigned i = 0; i < a.dim(); ++i) {
        Vec v = a.basis_vector(i);
        if (!b.contains(v)) return v;
    }
    throw std::invalid_argument("transversal_vector: a is contained in b");
}

MatF swap_last_two_in_basis(const FieldContext& f, const Subspace& n, const Vec& u,
                            const Vec& w) {
    const unsigned alpha = n.ambient();
    MatF P(f, alpha, alpha);
    for (unsigned j = 0; j < n.dim(); ++j) P.set_col(j, n.basis_vector(j));
    P.set_col(alpha - 2, u);
    P.set_col(alpha - 1, w);
    auto Pinv = P.inverse();
    if (!Pinv) throw std::logic_error("gamma construction: basis assembly singular");
    MatF swap = MatF::identity(f, alpha);
    swap.at(alpha - 2, alpha - 2) = 0;
    swap.at(alpha - 1, alpha - 1) = 0;
    swap.at(alpha - 2, alpha - 1) = 1;
    swap.at(alpha - 1, alpha - 2) = 1;
    return P * swap * *Pinv;
}

}  // namespace

MatF gamma_involution(const Subspace& L, const Subspace& M) {
    if (L == M) throw std::invalid_argument("gamma_involution: subspaces must differ");
    if (L.codim() != 1 || M.codim() != 1)
        throw std::invalid_argument("gamma_involution: both subspaces must have codimension 1");
    Subspace N = L.intersect(M);
    Vec u = transversal_vector(L, M);
    Vec w = transversal_vector(M, L);
    return swap_last_two_in_basis(L.field(), N, u, w);
}

std::vector<MatF> all_gamma_involutions(const Subspace& L, const Subspace& M) {
    if (L == M) throw std::invalid_argument("all_gamma_involutions: subspaces must differ");
    Subspace N = L.intersect(M);
    Vec u = transversal_vector(L, M);
    std::vector<MatF> out;
    for (const Vec& w : M.vectors()) {
        if (N.contains(w)) continue;
        out.push_back(swap_last_two_in_basis(L.field(), N, u, w));
    }
    return out;
}

}  // namespace cosetiq
