#include "cosetiq/cosets.hpp"

#include <algorithm>
#include <thread>
#include <unordered_map>

#include "cosetiq/enumeration.hpp"

#include "pi_engine.hpp"

namespace cosetiq {

PartialBijection pi(const MatF& g, unsigned alpha, unsigned n) {
    if (g.rows() != alpha + n || g.cols() != alpha + n)
        throw std::invalid_argument("pi: matrix size must be alpha+n");
    if (!g.inverse()) throw std::invalid_argument("pi: singular matrix");
    MatF A = g.block(0, 0, alpha, alpha);
    MatF C = g.block(alpha, 0, n, alpha);
    Subspace dom = kernel(C);
    MatF imgs(g.field(), dom.dim(), alpha);
    for (unsigned i = 0; i < dom.dim(); ++i) imgs.set_row(i, A.apply(dom.basis_vector(i)));
    return PartialBijection(dom, imgs);
}

MatF j_rho_matrix(const FieldContext& f, unsigned alpha, unsigned n, unsigned rho) {
    if (rho > alpha || rho > n) throw std::invalid_argument("j_rho: rho must be <= alpha <= n");
    MatF j(f, alpha + n, alpha + n);
    for (unsigned i = 0; i < alpha - rho; ++i) j.at(i, i) = 1;
    for (unsigned i = 0; i < rho; ++i) {
        j.at(alpha - rho + i, alpha + i) = 1;
        j.at(alpha + i, alpha - rho + i) = 1;
    }
    for (unsigned i = alpha + rho; i < alpha + n; ++i) j.at(i, i) = 1;
    return j;
}

LiftFactors lift_factors(const PartialBijection& lambda) {
    const FieldContext& f = lambda.field();
    const unsigned alpha = lambda.alpha(), r = lambda.rank();
    MatF bdom = lambda.dom().complete_to_basis();
    MatF bim = lambda.im().complete_to_basis();
    MatF target(f, alpha, alpha);
    for (unsigned j = 0; j < r; ++j) target.set_col(j, lambda.images().row(j));
    for (unsigned j = r; j < alpha; ++j) target.set_col(j, bim.col(j));
    return LiftFactors{target, *bdom.inverse(), alpha - r};
}

namespace {

MatF embed_top(const MatF& g, unsigned n) {
    const FieldContext& f = g.field();
    const unsigned alpha = g.rows();
    MatF d = MatF::identity(f, alpha + n);
    for (unsigned i = 0; i < alpha; ++i)
        for (unsigned j = 0; j < alpha; ++j) d.at(i, j) = g.at(i, j);
    return d;
}

}  // namespace

MatF lift_representative(const PartialBijection& lambda, unsigned n) {
    if (lambda.corank() > n)
        throw std::invalid_argument("lift_representative: requires corank <= n");
    LiftFactors lf = lift_factors(lambda);
    const FieldContext& f = lambda.field();
    MatF j = j_rho_matrix(f, lambda.alpha(), n, lf.rho);
    return embed_top(lf.g1, n) * j * embed_top(lf.g2, n);
}

Int kappa_rho(unsigned alpha, unsigned n, unsigned q, unsigned rho) {
    if (rho > alpha || alpha > n)
        throw std::invalid_argument("kappa_rho: requires rho <= alpha <= n");
    Int numer = gl_order(n, q) * gl_order(n, q) * int_pow(q, 2 * alpha * n);
    Int denom = gl_order(n - rho, q) * int_pow(q, (alpha + rho) * (n - rho));
    return exact_div(numer, denom);
}

Int kappa_of_rank(unsigned alpha, unsigned n, unsigned q, unsigned rank) {
    return kappa_rho(alpha, n, q, alpha - rank);
}

bool chu_vandermonde_check(unsigned alpha, unsigned n, unsigned q) {
    Int sum = 0;
    for (unsigned rho = 0; rho <= alpha; ++rho)
        sum += sigma_rho(alpha, q, rho) * kappa_rho(alpha, n, q, rho);
    return sum == gl_order(alpha + n, q);
}

namespace {

using detail::PiEngine;

struct BucketAccum {
    uint64_t count = 0;
    uint64_t min_rep = UINT64_MAX;
    std::vector<uint64_t> members;
    std::vector<uint32_t> dom_rows, img_rows;  // first-seen canonical label data
};

using BucketMap = std::unordered_map<uint64_t, BucketAccum>;

void bucket_slice(const SpaceCodes& space, const PiEngine& eng, unsigned m, bool keep_members,
                  unsigned slice, unsigned nslices, BucketMap& out) {
    MatCodes mats(space);
    uint32_t dom[8], img[8];
    for_each_gl_slice(space, m, slice, nslices, [&](const uint32_t* rows) {
        unsigned rank = eng.project(rows, dom, img);
        uint64_t lkey = eng.label_key(rank, dom, img);
        uint64_t gkey = mats.packed_key(rows);
        BucketAccum& acc = out[lkey];
        if (acc.count == 0) {
            acc.dom_rows.assign(dom, dom + rank);
            acc.img_rows.assign(img, img + rank);
        }
        ++acc.count;
        acc.min_rep = std::min(acc.min_rep, gkey);
        if (keep_members) acc.members.push_back(gkey);
    });
}

}  // namespace

size_t CosetDecomposition::index_of(const std::string& text_key) const {
    auto it = index_.find(text_key);
    if (it == index_.end())
        throw std::out_of_range("CosetDecomposition: unknown label " + text_key);
    return it->second;
}

CosetDecomposition decompose(unsigned alpha, unsigned n, unsigned q,
                             const DecomposeOptions& opts) {
    if (alpha == 0) throw std::invalid_argument("decompose: alpha must be positive");
    if (alpha > n)
        throw std::invalid_argument(
            "decompose: alpha <= n is the paper's standing assumption; refusing alpha > n");
    const unsigned m = alpha + n;
    Int order = gl_order(m, q);
    if (order > opts.budget.max_elements) throw BudgetError(order, opts.budget.max_elements);

    const FieldContext& f = FieldContext::get(q);
    SpaceCodes space(f, m);
    PiEngine eng(f, space, alpha, n);

    unsigned nthreads = std::max(1u, opts.threads);
    std::vector<BucketMap> maps(nthreads);
    if (nthreads == 1) {
        bucket_slice(space, eng, m, opts.keep_members, 0, 1, maps[0]);
    } else {
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < nthreads; ++t)
            workers.emplace_back([&, t] {
                bucket_slice(space, eng, m, opts.keep_members, t, nthreads, maps[t]);
            });
        for (auto& w : workers) w.join();
    }
    BucketMap merged = std::move(maps[0]);
    for (unsigned t = 1; t < nthreads; ++t) {
        for (auto& [key, acc] : maps[t]) {
            BucketAccum& dst = merged[key];
            if (dst.count == 0) {
                dst.dom_rows = acc.dom_rows;
                dst.img_rows = acc.img_rows;
            }
            dst.count += acc.count;
            dst.min_rep = std::min(dst.min_rep, acc.min_rep);
            if (opts.keep_members)
                dst.members.insert(dst.members.end(), acc.members.begin(), acc.members.end());
        }
        maps[t].clear();
    }

    CosetDecomposition dec;
    dec.alpha_ = alpha;
    dec.n_ = n;
    dec.q_ = q;
    dec.has_members_ = opts.keep_members;
    Int total = 0;
    for (auto& [key, acc] : merged) {
        (void)key;
        CosetDecomposition::Bucket b;
        std::vector<Vec> dom_vecs, img_vecs;
        for (uint32_t c : acc.dom_rows) dom_vecs.push_back(eng.small.vec_of(c));
        for (uint32_t c : acc.img_rows) img_vecs.push_back(eng.small.vec_of(c));
        Subspace dom = dom_vecs.empty() ? Subspace::zero(f, alpha)
                                        : Subspace::from_span(f, dom_vecs, alpha);
        b.label = PartialBijection(dom, MatF::from_rows(f, img_vecs, alpha));
        b.size = acc.count;
        b.rep_key = acc.min_rep;
        b.members = std::move(acc.members);
        std::sort(b.members.begin(), b.members.end());
        total += b.size;
        dec.buckets_.push_back(std::move(b));
    }
    dec.total_ = total;
    if (total != order) throw std::logic_error("decompose: element count mismatch");
    if (Int(dec.buckets_.size()) != pbl_count(alpha, q))
        throw std::logic_error("decompose: bucket count differs from #PBL");
    std::sort(dec.buckets_.begin(), dec.buckets_.end(),
              [](const CosetDecomposition::Bucket& a, const CosetDecomposition::Bucket& b) {
                  if (a.label.corank() != b.label.corank())
                      return a.label.corank() < b.label.corank();
                  return a.label.text_key() < b.label.text_key();
              });
    for (size_t i = 0; i < dec.buckets_.size(); ++i)
        dec.index_[dec.buckets_[i].label.text_key()] = i;
    return dec;
}

EntryDistributionReport entry_distribution_check(unsigned m, unsigned q, unsigned k,
                                                 const Budget& budget) {
    if (k == 0 || k > m) throw std::invalid_argument("entry_distribution_check: need 1 <= k <= m");
    Int order = gl_order(m, q);
    if (order > budget.max_elements) throw BudgetError(order, budget.max_elements);
    const FieldContext& f = FieldContext::get(q);
    SpaceCodes space(f, m);

    // counts[k'-1][code of (g_11..g_1k')]
    std::vector<std::vector<uint64_t>> counts(k);
    uint64_t sz = 1;
    for (unsigned kk = 1; kk <= k; ++kk) {
        sz *= q;
        counts[kk - 1].assign(sz, 0);
    }
    std::vector<uint32_t> mod(k);
    {
        uint32_t p = 1;
        for (unsigned kk = 0; kk < k; ++kk) {
            p *= q;
            mod[kk] = p;
        }
    }
    for_each_gl(space, m, [&](const uint32_t* rows) {
        uint32_t r0 = rows[0];
        for (unsigned kk = 0; kk < k; ++kk) ++counts[kk][r0 % mod[kk]];
    });

    EntryDistributionReport rep;
    rep.m = m;
    rep.q = q;
    rep.group_order = order;
    rep.pass = true;
    Int qm = int_pow(q, m);
    for (unsigned kk = 1; kk <= k; ++kk) {
        EntryDistributionReport::SubRowLaw law;
        law.k = kk;
        law.zero_expected = exact_div(order * (int_pow(q, m - kk) - 1), qm - 1);
        law.zero_actual = counts[kk - 1][0];
        law.nonzero_expected = exact_div(order * int_pow(q, m - kk), qm - 1);
        law.uniform = true;
        for (size_t code = 1; code < counts[kk - 1].size(); ++code)
            if (Int(counts[kk - 1][code]) != law.nonzero_expected) law.uniform = false;
        law.pass = law.uniform && law.zero_actual == law.zero_expected;
        rep.pass = rep.pass && law.pass;
        rep.laws.push_back(std::move(law));
    }
    return rep;
}

}  // namespace cosetiq
