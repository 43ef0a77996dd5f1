#pragma once

#include <string>
#include <vector>

#include "cosetiq/algebra.hpp"

namespace cosetiq {

// Entrywise Lagrange interpolation of structure constants in t = q^n.
//
// Adaptive protocol: fit through the first two samples, then for each
// further sample check whether the interpolant already predicts it exactly.
// If yes, the interpolant is unchanged by adding that point: stabilized,
// and the sample serves as the held-out validation pair.  If not, the
// sample is absorbed and the fit repeated.
struct InterpolationResult {
    PolyTable table;
    std::vector<unsigned> sample_ns;          // absorbed into the fit
    std::vector<std::string> sample_routes;   // provenance per absorbed sample
    unsigned holdout_n = 0;                   // validated held-out point
    std::string holdout_route;
    bool stabilized = false;
    int max_degree = -1;  // largest entry degree
    std::string note;
};

InterpolationResult interpolate_tables(const std::vector<StructureTable>& samples);

// Concrete table at (alpha, n, q) choosing the cheapest exact route that
// honors the member-list contract where feasible:
// members when #GL(alpha+n) fits, else the H(n) loop, else the window
// closed form.  All routes agree (cross-checked in the test suite).
StructureTable make_sample_table(unsigned alpha, unsigned q, unsigned n,
                                 const std::string& basis);

// Runs the adaptive protocol starting at n = alpha, adding samples until
// stabilization + held-out validation or n exceeds max_n.
InterpolationResult interpolate_auto(unsigned alpha, unsigned q, const std::string& basis,
                                     unsigned max_n);

// Polynomial-identity associativity of the interpolated tensor.
struct GenericAssocReport {
    bool pass = true;
    size_t quadruples = 0;
    std::string first_failure;
};
GenericAssocReport check_associativity(const PolyTable& t);

// The nu-generic second group of relations, with coefficients
// (q^{nu+1} - 2q + 1) q^{alpha-1} -> (q t - 2q + 1) q^{alpha-1} and
// (q^nu - 1) q^alpha -> (t - 1) q^alpha, checked as RatPoly identities.
RelationReport check_generic_relations(const PolyTable& pbw_table);

// Trace-form Gram determinant of the generic algebra as a polynomial in t;
// its roots are the candidate exceptional values of q^nu.
struct SemisimplicityReport {
    unsigned alpha = 0, q = 0;
    RatPoly gram_det;
    std::vector<Rat> exact_roots;            // rational roots, exact
    std::vector<double> approx_real_roots;   // numeric localization only
    unsigned residual_degree = 0;            // degree left after exact roots
    std::vector<unsigned> checked_n;
    bool nonvanishing_at_integers = false;   // det(q^n) != 0 for n = alpha..max_n
    bool pass = false;
};
// Throws when det is identically zero (contradicts semisimplicity of the
// double-coset algebras at integer points).
SemisimplicityReport semisimplicity_locus(const PolyTable& t, unsigned max_n);

}  // namespace cosetiq
