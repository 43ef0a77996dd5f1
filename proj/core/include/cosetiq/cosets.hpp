#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cosetiq/pbl.hpp"

namespace cosetiq {

// Pi(g) for g = [[A, B], [C, D]] in GL(alpha+n, F_q): the map x -> Ax
// restricted to ker C.  A complete invariant of H(n) double cosets.
PartialBijection pi(const MatF& g, unsigned alpha, unsigned n);

// The paper's block representative J_rho: swaps coordinates
// alpha-rho+j <-> alpha+j (j = 1..rho); J_rho^2 = 1.
MatF j_rho_matrix(const FieldContext& f, unsigned alpha, unsigned n, unsigned rho);

// Factored double-coset representative of lambda:
//   X = diag(g1, 1_n) * J_rho * diag(g2, 1_n),   Pi(X) = lambda,
// with rho = corank(lambda); fully deterministic.
struct LiftFactors {
    MatF g1, g2;  // alpha x alpha invertible
    unsigned rho;
};
LiftFactors lift_factors(const PartialBijection& lambda);
MatF lift_representative(const PartialBijection& lambda, unsigned n);

// Size of the double coset with label of rank alpha-rho (eq. kappa_rho).
Int kappa_rho(unsigned alpha, unsigned n, unsigned q, unsigned rho);
Int kappa_of_rank(unsigned alpha, unsigned n, unsigned q, unsigned rank);

// sum_rho sigma_rho * kappa_rho = #GL(alpha+n, F_q), exactly.
bool chu_vandermonde_check(unsigned alpha, unsigned n, unsigned q);

struct DecomposeOptions {
    bool keep_members = false;
    Budget budget{};
    unsigned threads = 1;
};

// Full bucketing of GL(alpha+n, F_q) by Pi value.
class CosetDecomposition {
public:
    struct Bucket {
        PartialBijection label;
        Int size;
        uint64_t rep_key = 0;                // least packed key in the coset
        std::vector<uint64_t> members;       // sorted packed keys (optional)
    };

    unsigned alpha() const { return alpha_; }
    unsigned n() const { return n_; }
    unsigned q() const { return q_; }
    bool has_members() const { return has_members_; }
    const Int& total() const { return total_; }
    const std::vector<Bucket>& buckets() const { return buckets_; }
    size_t size() const { return buckets_.size(); }
    const Bucket& bucket(size_t i) const { return buckets_[i]; }
    size_t index_of(const std::string& text_key) const;
    size_t index_of(const PartialBijection& label) const { return index_of(label.text_key()); }

private:
    friend CosetDecomposition decompose(unsigned, unsigned, unsigned, const DecomposeOptions&);
    unsigned alpha_ = 0, n_ = 0, q_ = 0;
    bool has_members_ = false;
    Int total_ = 0;
    std::vector<Bucket> buckets_;  // canonical order: corank ascending, key ascending
    std::map<std::string, size_t> index_;
};

// Enumerates GL(alpha+n, F_q) once and buckets by Pi key.  Requires the
// paper's standing assumption alpha <= n.  Deterministic for any thread
// count.
CosetDecomposition decompose(unsigned alpha, unsigned n, unsigned q,
                             const DecomposeOptions& opts = {});

// Exact matrix-entry distribution counts over GL(m, F_q); checks the
// first-entry law and the sub-row laws for k' = 1..k.
struct EntryDistributionReport {
    unsigned m = 0, q = 0;
    Int group_order;
    struct SubRowLaw {
        unsigned k = 0;
        Int zero_expected, zero_actual;
        Int nonzero_expected;  // per nonzero value
        bool uniform = false;  // every nonzero value hits nonzero_expected
        bool pass = false;
    };
    std::vector<SubRowLaw> laws;
    bool pass = false;
};
EntryDistributionReport entry_distribution_check(unsigned m, unsigned q, unsigned k,
                                                 const Budget& budget = {});

}  // namespace cosetiq
