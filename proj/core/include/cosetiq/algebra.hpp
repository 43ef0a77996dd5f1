#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cosetiq/cosets.hpp"
#include "cosetiq/ratpoly.hpp"

namespace cosetiq {

// Basis convention everywhere: the key lambda denotes the NORMALIZED coset
// vector e~_lambda = (1/#H(n)) sum_{g : Pi(g)=lambda} g, so theta(S) and
// a(g) are basis vectors with coefficient 1.

// Dense structure-constant tensor c[mu][nu][kappa] with
// e~_mu e~_nu = sum_kappa c[mu][nu][kappa] e~_kappa.
struct StructureTable {
    std::string basis;  // "coset" | "pbw"
    unsigned alpha = 0, n = 0, q = 0;
    std::vector<std::string> labels;  // canonical order (corank asc, key asc)
    std::vector<Rat> c;               // N^3 dense
    std::string route;                // "members" | "hloop" | "window"

    size_t N() const { return labels.size(); }
    const Rat& at(size_t mu, size_t nu, size_t ka) const {
        return c[(mu * N() + nu) * N() + ka];
    }
    Rat& at(size_t mu, size_t nu, size_t ka) { return c[(mu * N() + nu) * N() + ka]; }
    bool same_constants(const StructureTable& o) const {
        return labels == o.labels && c == o.c;
    }

    struct AssocReport {
        bool pass = true;
        size_t quadruples = 0;
        std::string first_failure;
    };
    AssocReport check_associativity() const;
};

class AlgebraContext;

// Sparse exact-rational combination of double-coset basis vectors.
class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(const AlgebraContext& ctx) : ctx_(&ctx) {}

    const AlgebraContext& context() const { return *ctx_; }
    bool is_zero() const { return coeffs_.empty(); }
    Rat coeff(uint32_t idx) const;
    const std::map<uint32_t, Rat>& coeffs() const { return coeffs_; }
    void set_coeff(uint32_t idx, const Rat& v);

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(const AlgebraElement& o) const;  // convolution
    AlgebraElement operator*(const Rat& s) const;
    bool operator==(const AlgebraElement& o) const { return coeffs_ == o.coeffs_; }

    std::string to_string() const;

private:
    const AlgebraContext* ctx_ = nullptr;
    std::map<uint32_t, Rat> coeffs_;  // label index -> coefficient, no zeros
};

// The concrete convolution algebra A[alpha;n] over a decomposition with
// member lists.  Immutable after construction except for lazily computed
// cached tables (guarded, deterministic).
class AlgebraContext {
public:
    explicit AlgebraContext(std::shared_ptr<const CosetDecomposition> dec);
    // Tensor-injected context: products come from the given coset-basis
    // table (any route); coset sizes from the kappa formula.  Used where
    // member lists are infeasible.
    explicit AlgebraContext(StructureTable coset_table);
    static AlgebraContext make(unsigned alpha, unsigned n, unsigned q,
                               DecomposeOptions opts = {});

    unsigned alpha() const { return alpha_; }
    unsigned n() const { return n_; }
    unsigned q() const { return q_; }
    const FieldContext& field() const;
    bool has_decomposition() const { return dec_ != nullptr; }
    const CosetDecomposition& decomposition() const;
    size_t dim() const { return labels_.size(); }
    const PartialBijection& label(size_t i) const { return labels_[i]; }
    size_t label_index(const PartialBijection& l) const;
    const Int& kappa(size_t i) const { return kappas_[i]; }
    const Int& h_size() const { return h_size_; }

    AlgebraElement zero() const { return AlgebraElement(*this); }
    AlgebraElement unit() const;
    AlgebraElement basis_element(size_t idx) const;
    AlgebraElement basis_a(const MatF& g) const;
    AlgebraElement basis_theta(const Subspace& S) const;

    // Exact product of basis vectors, from the member-route tensor.
    AlgebraElement convolve(const AlgebraElement& x, const AlgebraElement& y) const;

    // M(x) = sum_lambda coeff(lambda) kappa_{alpha-rk lambda} / #H(n).
    Rat m_functional(const AlgebraElement& x) const;

    const StructureTable& coset_table() const;  // member route, cached
    const StructureTable& pbw_table() const;    // cached

    // Change of basis: column j = PBW monomial of label j in coset
    // coordinates.  Exact inverse; hard error when singular.
    const std::vector<Rat>& pbw_matrix() const;          // dense N*N, row-major
    const std::vector<Rat>& pbw_matrix_inverse() const;  // dense N*N
    bool pbw_block_unitriangular() const;  // unit diagonal, support above by corank
    // The PBW monomial a(g°) theta(L°_1) ... theta(L°_k) for label idx.
    AlgebraElement pbw_monomial(size_t idx) const;

    std::vector<Rat> pbw_coordinates(const AlgebraElement& x) const;
    // Theta-degree via the PBW expansion; -1 for the zero element.
    int theta_degree(const AlgebraElement& x) const;
    bool in_filtration(const AlgebraElement& x, unsigned k) const;

private:
    void init_labels();
    void ensure_tables() const;
    std::shared_ptr<const CosetDecomposition> dec_;  // null for injected tensors
    unsigned alpha_ = 0, n_ = 0, q_ = 0;
    std::vector<PartialBijection> labels_;
    std::map<std::string, size_t> index_;
    std::vector<Int> kappas_;
    Int h_size_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

// Member-free routes to the same tensor (independent computational paths;
// cross-checked in tests).
//
// hloop: per (output, right) pair, counts over h in H(n) of
//   Pi(g_out * h * g_right^{-1}) — no group enumeration, only H(n).
StructureTable structure_table_hloop(unsigned alpha, unsigned n, unsigned q,
                                     const Budget& budget = {});
// window: exact closed-form count over bounded windows; polynomial in
// t = q^n.  structure_table_window evaluates it at an integer n.
struct PolyTable {
    std::string basis;  // "coset" | "pbw"
    unsigned alpha = 0, q = 0;
    std::vector<std::string> labels;
    std::vector<RatPoly> c;  // N^3 dense

    size_t N() const { return labels.size(); }
    const RatPoly& at(size_t mu, size_t nu, size_t ka) const {
        return c[(mu * N() + nu) * N() + ka];
    }
    RatPoly& at(size_t mu, size_t nu, size_t ka) { return c[(mu * N() + nu) * N() + ka]; }
    StructureTable eval(unsigned n, const std::string& route_tag = "window") const;
};
PolyTable structure_table_symbolic(unsigned alpha, unsigned q);
StructureTable structure_table_window(unsigned alpha, unsigned n, unsigned q);

StructureTable to_pbw_basis(const StructureTable& coset_table,
                            const std::vector<Rat>& pbw_matrix,
                            const std::vector<Rat>& pbw_matrix_inverse);

// PBW change-of-basis computed from a coset-basis tensor alone (any route):
// column j = the monomial a(g°) theta(L°_1)...theta(L°_k) of label j,
// multiplied out through the tensor.
std::vector<Rat> pbw_matrix_from_table(const StructureTable& coset_table);
StructureTable pbw_from_coset_table(const StructureTable& coset_table);

// ----- verification reports -----

struct RelationFamilyResult {
    std::string name;
    size_t instances = 0;
    size_t failures = 0;
    std::vector<std::string> notes;  // first few failing instances
    bool vacuous() const { return instances == 0; }
    bool pass() const { return failures == 0; }
};

struct RelationReport {
    unsigned alpha = 0, n = 0, q = 0;
    std::vector<RelationFamilyResult> families;
    bool all_pass() const;
    size_t active_families() const;
    size_t total_instances() const;
};

// Instantiates every relation for all admissible tuples (g, h, k, L, M,
// eta, and all gamma/beta restriction classes) with nu = n and checks exact
// equality of AlgebraElements.
RelationReport verify_relations(const AlgebraContext& ctx);

struct MReport {
    unsigned alpha = 0, n = 0, q = 0;
    bool multiplicative = false;  // M(xy) = M(x)M(y) on all basis pairs
    Rat theta_value;              // M on a codimension-1 generator
    Rat coset_size_formula;       // kappa_1 / #H  (equals (q^n-1) q^alpha)
    Rat pr_m_formula;             // (q^n-1)(q^{n-1}-1) q^{2alpha-1} as printed
    Rat printed_37_formula;       // (q^n-1) q^{alpha-1} as printed
    bool matches_coset_size = false;
    bool matches_pr_m = false;
    bool matches_printed_37 = false;
    std::string discrepancy_note;
};
MReport m_report(const AlgebraContext& ctx);

struct FiltrationReport {
    unsigned alpha = 0, n = 0, q = 0;
    std::vector<size_t> gr_dims;       // dim gr_k for k = 0..alpha
    std::vector<Int> sigma_expected;   // sigma_k
    bool dims_match = false;
    bool basis_invertible = false;     // th:filtration.e made executable
    bool unitriangular = false;
    bool degree_bound = false;         // deg_Theta <= alpha on all basis vectors
    size_t indep_instances = 0, indep_failures = 0;      // (c)
    size_t restrict_instances = 0, restrict_failures = 0;  // (d)
    size_t l1l2_instances = 0, l1l2_failures = 0;
    size_t vanishing_instances = 0, vanishing_failures = 0;
    bool pass = false;
    std::vector<std::string> notes;
};
FiltrationReport filtration_report(const AlgebraContext& ctx);

// One concrete GL representative per restriction class of elements fixing N
// pointwise and mapping S onto T (N of codimension 1 in S and in T).
std::vector<MatF> fixing_maps(const Subspace& N, const Subspace& S, const Subspace& T);

}  // namespace cosetiq
