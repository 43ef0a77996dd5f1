#include "cosetiq/generic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cosetiq {

namespace {

PolyTable fit_tables(const std::vector<const StructureTable*>& samples) {
    const StructureTable& first = *samples.front();
    PolyTable t;
    t.basis = first.basis;
    t.alpha = first.alpha;
    t.q = first.q;
    t.labels = first.labels;
    t.c.assign(first.c.size(), RatPoly());
    std::vector<std::pair<Rat, Rat>> points(samples.size());
    for (size_t e = 0; e < first.c.size(); ++e) {
        for (size_t i = 0; i < samples.size(); ++i) {
            points[i].first = Rat(int_pow(first.q, samples[i]->n));
            points[i].second = samples[i]->c[e];
        }
        t.c[e] = lagrange_interpolate(points);
    }
    return t;
}

bool predicts(const PolyTable& fit, const StructureTable& table) {
    Rat tn = int_pow(table.q, table.n);
    for (size_t e = 0; e < table.c.size(); ++e)
        if (fit.c[e].eval(tn) != table.c[e]) return false;
    return true;
}

}  // namespace

InterpolationResult interpolate_tables(const std::vector<StructureTable>& samples) {
    if (samples.size() < 3)
        throw std::invalid_argument(
            "interpolate_tables: need at least two fit samples plus one candidate holdout");
    for (size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].labels != samples[0].labels || samples[i].basis != samples[0].basis ||
            samples[i].alpha != samples[0].alpha || samples[i].q != samples[0].q)
            throw std::invalid_argument("interpolate_tables: incompatible sample tables");
        if (samples[i].n <= samples[i - 1].n)
            throw std::invalid_argument("interpolate_tables: samples must have increasing n");
    }
    InterpolationResult res;
    std::vector<const StructureTable*> fitset = {&samples[0], &samples[1]};
    res.sample_ns = {samples[0].n, samples[1].n};
    res.sample_routes = {samples[0].route, samples[1].route};
    res.table = fit_tables(fitset);
    for (size_t i = 2; i < samples.size(); ++i) {
        if (predicts(res.table, samples[i])) {
            res.stabilized = true;
            res.holdout_n = samples[i].n;
            res.holdout_route = samples[i].route;
            break;
        }
        fitset.push_back(&samples[i]);
        res.sample_ns.push_back(samples[i].n);
        res.sample_routes.push_back(samples[i].route);
        res.table = fit_tables(fitset);
    }
    for (const auto& p : res.table.c) res.max_degree = std::max(res.max_degree, p.degree());
    if (!res.stabilized) {
        std::ostringstream os;
        os << "not stabilized within " << samples.size()
           << " samples; interpolant still changing at n=" << samples.back().n;
        res.note = os.str();
    }
    return res;
}

StructureTable make_sample_table(unsigned alpha, unsigned q, unsigned n,
                                 const std::string& basis) {
    constexpr uint64_t kMemberLimit = 100'000;  // group elements
    constexpr uint64_t kHloopLimit = 50'000;    // H(n) elements
    StructureTable coset;
    if (gl_order(alpha + n, q) <= kMemberLimit) {
        coset = AlgebraContext::make(alpha, n, q).coset_table();
    } else if (h_order(alpha, n, q) <= kHloopLimit) {
        coset = structure_table_hloop(alpha, n, q);
    } else {
        coset = structure_table_window(alpha, n, q);
    }
    if (basis == "coset") return coset;
    if (basis != "pbw") throw std::invalid_argument("make_sample_table: basis must be coset|pbw");
    StructureTable pbw = pbw_from_coset_table(coset);
    return pbw;
}

InterpolationResult interpolate_auto(unsigned alpha, unsigned q, const std::string& basis,
                                     unsigned max_n) {
    std::vector<StructureTable> samples;
    for (unsigned n = alpha; n <= max_n; ++n) {
        samples.push_back(make_sample_table(alpha, q, n, basis));
        if (samples.size() < 3) continue;
        InterpolationResult res = interpolate_tables(samples);
        if (res.stabilized) return res;
    }
    if (samples.size() < 3) throw std::invalid_argument("interpolate_auto: max_n too small");
    return interpolate_tables(samples);
}

GenericAssocReport check_associativity(const PolyTable& t) {
    GenericAssocReport rep;
    const size_t nn = t.N();
    for (size_t mu = 0; mu < nn; ++mu)
        for (size_t nu = 0; nu < nn; ++nu)
            for (size_t pi = 0; pi < nn; ++pi)
                for (size_t psi = 0; psi < nn; ++psi) {
                    RatPoly lhs, rhs;
                    for (size_t ka = 0; ka < nn; ++ka) {
                        if (!t.at(mu, nu, ka).is_zero())
                            lhs = lhs + t.at(mu, nu, ka) * t.at(ka, pi, psi);
                        if (!t.at(nu, pi, ka).is_zero())
                            rhs = rhs + t.at(nu, pi, ka) * t.at(mu, ka, psi);
                    }
                    ++rep.quadruples;
                    if (!(lhs == rhs)) {
                        rep.pass = false;
                        if (rep.first_failure.empty()) {
                            std::ostringstream os;
                            os << "(mu,nu,pi,psi)=(" << mu << "," << nu << "," << pi << ","
                               << psi << "): " << lhs.to_string() << " != " << rhs.to_string();
                            rep.first_failure = os.str();
                        }
                    }
                }
    return rep;
}

namespace {

// Sparse generic element: coordinates in the PolyTable basis.
struct GenElem {
    const PolyTable* t;
    std::vector<RatPoly> c;

    explicit GenElem(const PolyTable& table) : t(&table), c(table.N()) {}
    static GenElem basis(const PolyTable& table, size_t i) {
        GenElem e(table);
        e.c[i] = RatPoly::constant(Rat(1));
        return e;
    }
    GenElem operator+(const GenElem& o) const {
        GenElem r = *this;
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] + o.c[i];
        return r;
    }
    GenElem operator-(const GenElem& o) const {
        GenElem r = *this;
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i] - o.c[i];
        return r;
    }
    GenElem operator*(const GenElem& o) const {
        GenElem r(*t);
        const size_t N = c.size();
        for (size_t mu = 0; mu < N; ++mu) {
            if (c[mu].is_zero()) continue;
            for (size_t nu = 0; nu < N; ++nu) {
                if (o.c[nu].is_zero()) continue;
                RatPoly scale = c[mu] * o.c[nu];
                for (size_t ka = 0; ka < N; ++ka)
                    if (!t->at(mu, nu, ka).is_zero())
                        r.c[ka] = r.c[ka] + scale * t->at(mu, nu, ka);
            }
        }
        return r;
    }
    GenElem scaled(const RatPoly& p) const {
        GenElem r = *this;
        for (auto& x : r.c) x = x * p;
        return r;
    }
    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    bool operator==(const GenElem& o) const { return c == o.c; }
};

void generic_instance(RelationFamilyResult& fam, bool ok, const std::string& desc) {
    ++fam.instances;
    if (!ok) {
        ++fam.failures;
        if (fam.notes.size() < 4) fam.notes.push_back(desc);
    }
}

}  // namespace

RelationReport check_generic_relations(const PolyTable& t) {
    const FieldContext& f = FieldContext::get(t.q);
    const unsigned alpha = t.alpha, q = t.q;
    RelationReport rep;
    rep.alpha = alpha;
    rep.q = q;

    std::map<std::string, size_t> index;
    for (size_t i = 0; i < t.N(); ++i) index[t.labels[i]] = i;
    auto a = [&](const MatF& g) {
        return GenElem::basis(t, index.at(PartialBijection::total(g).text_key()));
    };
    auto th = [&](const Subspace& S) {
        return GenElem::basis(t, index.at(PartialBijection::idempotent(S).text_key()));
    };
    auto comm = [&](const GenElem& x, const GenElem& y) { return x * y - y * x; };

    auto hyperplanes = all_hyperplanes(f, alpha);
    RatPoly s_poly = RatPoly({Rat(1) - 2 * Rat(q), Rat(q)}) * Rat(int_pow(q, alpha - 1));
    RatPoly u_poly = RatPoly({Rat(-1), Rat(1)}) * Rat(int_pow(q, alpha));

    {
        RelationFamilyResult fam;
        fam.name = "eq:Theta-square (generic)";
        for (const auto& L : hyperplanes) {
            GenElem rhs = th(L).scaled(s_poly);
            for (const auto& h : xi_subgroup(L)) rhs = rhs + a(h).scaled(u_poly);
            generic_instance(fam, th(L) * th(L) == rhs,
                             "generic Theta(L)^2 mismatch at L=" + L.key());
        }
        rep.families.push_back(std::move(fam));
    }
    {
        RelationFamilyResult fam;
        fam.name = "eq:Theta-Theta (generic)";
        if (alpha >= 2) {
            Rat scale = Rat(q - 1) * int_pow(q, alpha - 2);
            for (const auto& L : hyperplanes)
                for (const auto& M : hyperplanes) {
                    if (L == M) continue;
                    Subspace N = L.intersect(M);
                    GenElem lhs = comm(th(L), th(M));
                    for (const auto& gLM : all_gamma_involutions(L, M)) {
                        GenElem rhs = comm(a(gLM), th(L));
                        for (const auto& T : hyperplanes) {
                            if (!T.contains(N) || T == L || T == M) continue;
                            rhs = rhs + comm(a(gamma_involution(T, L)), th(L)) -
                                  comm(a(gamma_involution(T, M)), th(M));
                        }
                        generic_instance(fam, lhs == rhs.scaled(RatPoly::constant(scale)),
                                         "generic commutator mismatch at L=" + L.key() +
                                             " M=" + M.key());
                    }
                }
        }
        rep.families.push_back(std::move(fam));
    }
    {
        RelationFamilyResult fam;
        fam.name = "eq:relation-last (generic)";
        if (alpha >= 2) {
            GroupTable gl = enumerate_gl(alpha, q);
            for (const auto& L : hyperplanes)
                for (const auto& M : hyperplanes) {
                    if (L == M) continue;
                    Subspace N = L.intersect(M);
                    GenElem inner = th(L) * th(M);
                    for (const auto& T : hyperplanes) {
                        if (!T.contains(N) || T == M) continue;
                        for (const auto& S : hyperplanes) {
                            if (!S.contains(N) || S == L) continue;
                            inner = inner - a(fixing_maps(N, T, S).front()) * th(T);
                        }
                    }
                    for (size_t gi = 0; gi < gl.size(); ++gi) {
                        MatF eta = gl.matrix(gi);
                        bool fixes = true;
                        for (unsigned i = 0; i < N.dim() && fixes; ++i)
                            fixes = eta.apply(N.basis_vector(i)) == N.basis_vector(i);
                        if (!fixes) continue;
                        GenElem lhs = (a(eta) - a(MatF::identity(f, alpha))) * inner;
                        generic_instance(fam, lhs.is_zero(),
                                         "generic relation-last mismatch at eta=" +
                                             eta.to_string());
                    }
                }
        }
        rep.families.push_back(std::move(fam));
    }
    return rep;
}

namespace {

double poly_eval_double(const RatPoly& p, double x) {
    double acc = 0;
    for (size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * x + p.coeffs()[i].convert_to<double>();
    return acc;
}

std::vector<double> localize_real_roots(const RatPoly& p) {
    std::vector<double> out;
    if (p.degree() < 1) return out;
    double lead = std::abs(p.coeffs().back().convert_to<double>());
    double bound = 1.0;
    for (const auto& c : p.coeffs())
        bound = std::max(bound, 1.0 + std::abs(c.convert_to<double>()) / lead);
    const int grid = 4096;
    double prev_x = -bound, prev_v = poly_eval_double(p, prev_x);
    for (int i = 1; i <= grid; ++i) {
        double x = -bound + 2 * bound * i / grid;
        double v = poly_eval_double(p, x);
        if (prev_v == 0) out.push_back(prev_x);
        if (prev_v * v < 0) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 80; ++it) {
                double mid = (lo + hi) / 2, mv = poly_eval_double(p, mid);
                if (mv == 0) { lo = hi = mid; break; }
                if (mv * poly_eval_double(p, lo) < 0)
                    hi = mid;
                else
                    lo = mid;
            }
            out.push_back((lo + hi) / 2);
        }
        prev_x = x;
        prev_v = v;
    }
    return out;
}

}  // namespace

SemisimplicityReport semisimplicity_locus(const PolyTable& t, unsigned max_n) {
    const size_t N = t.N();
    SemisimplicityReport rep;
    rep.alpha = t.alpha;
    rep.q = t.q;

    // tr(pi) = trace of left multiplication by basis element pi
    std::vector<RatPoly> tr(N);
    for (size_t pi = 0; pi < N; ++pi)
        for (size_t ka = 0; ka < N; ++ka) tr[pi] = tr[pi] + t.at(pi, ka, ka);
    // G[mu][nu] = trace of left multiplication by e_mu e_nu
    std::vector<RatPoly> G(N * N);
    int degree_bound = 0;
    for (size_t mu = 0; mu < N; ++mu) {
        int row_max = 0;
        for (size_t nu = 0; nu < N; ++nu) {
            RatPoly g;
            for (size_t pi = 0; pi < N; ++pi)
                if (!t.at(mu, nu, pi).is_zero()) g = g + t.at(mu, nu, pi) * tr[pi];
            row_max = std::max(row_max, g.degree());
            G[mu * N + nu] = std::move(g);
        }
        degree_bound += std::max(0, row_max);
    }

    // det G by exact evaluation + interpolation
    std::vector<std::pair<Rat, Rat>> points;
    for (int i = 0; i <= degree_bound; ++i) {
        Rat x(2 * i + 1, 2);  // avoid integer points in case of common factors
        std::vector<Rat> m(N * N);
        for (size_t e = 0; e < N * N; ++e) m[e] = G[e].eval(x);
        // Gaussian elimination determinant
        Rat det = 1;
        for (size_t col = 0, row = 0; col < N; ++col) {
            size_t piv = row;
            while (piv < N && m[piv * N + col] == 0) ++piv;
            if (piv == N) {
                det = 0;
                break;
            }
            if (piv != row) {
                for (size_t j = 0; j < N; ++j) std::swap(m[piv * N + j], m[row * N + j]);
                det = -det;
            }
            det *= m[row * N + col];
            Rat inv = Rat(1) / m[row * N + col];
            for (size_t r2 = row + 1; r2 < N; ++r2) {
                Rat fct = m[r2 * N + col] * inv;
                if (fct == 0) continue;
                for (size_t j = col; j < N; ++j) m[r2 * N + j] -= fct * m[row * N + j];
            }
            ++row;
        }
        points.push_back({x, det});
    }
    rep.gram_det = lagrange_interpolate(points);
    if (rep.gram_det.is_zero())
        throw std::logic_error(
            "trace Gram determinant is identically zero: contradicts semisimplicity at "
            "integer points");

    rep.exact_roots = rational_roots(rep.gram_det);
    RatPoly residual = rep.gram_det.integer_normalized();
    for (const Rat& r : rep.exact_roots)
        while (residual.degree() > 0 && residual.eval(r) == 0) residual = residual.deflate(r);
    rep.residual_degree = static_cast<unsigned>(std::max(0, residual.degree()));
    if (rep.residual_degree > 0) rep.approx_real_roots = localize_real_roots(residual);

    rep.nonvanishing_at_integers = true;
    for (unsigned n = t.alpha; n <= max_n; ++n) {
        rep.checked_n.push_back(n);
        if (rep.gram_det.eval(Rat(int_pow(t.q, n))) == 0) rep.nonvanishing_at_integers = false;
    }
    rep.pass = rep.nonvanishing_at_integers;
    return rep;
}

}  // namespace cosetiq
