#include "cosetiq/pbl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cosetiq {

namespace {

const char* kDigits = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ+/";

int digit_value(char c) {
    const std::string alphabet(kDigits);
    auto pos = alphabet.find(c);
    if (pos == std::string::npos) throw std::invalid_argument("bad digit in pbl key");
    return static_cast<int>(pos);
}

// Unique solution c of (rows^T) c = b, rows with independent rows.
Vec solve_row_combination(const MatF& rows, const Vec& b) {
    const FieldContext& f = rows.field();
    const unsigned r = rows.rows(), a = rows.cols();
    MatF aug(f, a, r + 1);
    for (unsigned i = 0; i < a; ++i) {
        for (unsigned j = 0; j < r; ++j) aug.at(i, j) = rows.at(j, i);
        aug.at(i, r) = b[i];
    }
    auto [red, rank] = aug.rref();
    Vec c(r, 0);
    unsigned row = 0;
    for (unsigned col = 0; col < r && row < rank; ++col) {
        if (red.at(row, col) != 0) {
            c[col] = red.at(row, r);
            ++row;
        }
    }
    // consistency: the last column must not be a pivot
    for (unsigned i = rank; i-- > 0;) {
        unsigned lead = 0;
        while (lead <= r && red.at(i, lead) == 0) ++lead;
        if (lead == r) throw std::invalid_argument("solve_row_combination: inconsistent system");
        break;
    }
    return c;
}

}  // namespace

PartialBijection::PartialBijection(Subspace dom, MatF images)
    : dom_(std::move(dom)), images_(std::move(images)) {
    if (images_.rows() != dom_.dim() || images_.cols() != dom_.ambient())
        throw std::invalid_argument("PartialBijection: images shape mismatch");
    if (images_.rank() != images_.rows())
        throw std::invalid_argument("PartialBijection: images rows must be independent");
}

PartialBijection PartialBijection::identity(const FieldContext& f, unsigned alpha) {
    return idempotent(Subspace::full(f, alpha));
}

PartialBijection PartialBijection::empty_map(const FieldContext& f, unsigned alpha) {
    return idempotent(Subspace::zero(f, alpha));
}

PartialBijection PartialBijection::idempotent(const Subspace& S) {
    return PartialBijection(S, S.basis());
}

PartialBijection PartialBijection::total(const MatF& g) {
    if (!g.inverse()) throw std::invalid_argument("total: matrix is singular");
    return PartialBijection(Subspace::full(g.field(), g.rows()), g.transpose());
}

Subspace PartialBijection::im() const {
    if (rank() == 0) return Subspace::zero(field(), alpha());
    return Subspace::from_span(images_);
}

std::optional<Vec> PartialBijection::apply(const Vec& x) const {
    auto coords = dom_.coordinates(x);
    if (!coords) return std::nullopt;
    Vec y(alpha(), 0);
    for (unsigned i = 0; i < rank(); ++i)
        if ((*coords)[i] != 0) y = vec_add(field(), y, vec_scale(field(), (*coords)[i], images_.row(i)));
    return y;
}

PartialBijection PartialBijection::inverse() const {
    Subspace newdom = im();
    MatF imgs(field(), rank(), alpha());
    for (unsigned j = 0; j < rank(); ++j) {
        Vec z = newdom.basis_vector(j);
        Vec c = solve_row_combination(images_, z);  // z = sum c_i images_i
        Vec x(alpha(), 0);
        for (unsigned i = 0; i < rank(); ++i)
            if (c[i] != 0) x = vec_add(field(), x, vec_scale(field(), c[i], dom_.basis_vector(i)));
        imgs.set_row(j, x);
    }
    return PartialBijection(newdom, imgs);
}

PartialBijection PartialBijection::compose(const PartialBijection& other) const {
    // x in dom(result) iff x in dom(other) and other(x) in dom(this)
    Subspace v = other.im().intersect(dom_);
    PartialBijection oinv = other.inverse();
    std::vector<Vec> xs;
    for (unsigned j = 0; j < v.dim(); ++j) xs.push_back(*oinv.apply(v.basis_vector(j)));
    Subspace newdom = xs.empty() ? Subspace::zero(field(), alpha())
                                 : Subspace::from_span(field(), xs, alpha());
    MatF imgs(field(), newdom.dim(), alpha());
    for (unsigned j = 0; j < newdom.dim(); ++j)
        imgs.set_row(j, *apply(*other.apply(newdom.basis_vector(j))));
    return PartialBijection(newdom, imgs);
}

PartialBijection PartialBijection::post_compose(const MatF& g) const {
    MatF imgs(field(), rank(), alpha());
    for (unsigned i = 0; i < rank(); ++i) imgs.set_row(i, g.apply(images_.row(i)));
    return PartialBijection(dom_, imgs);
}

PartialBijection PartialBijection::pre_compose(const MatF& g) const {
    // x -> lambda(g x); dom = g^{-1}(dom lambda)
    auto ginv = g.inverse();
    if (!ginv) throw std::invalid_argument("pre_compose: singular matrix");
    std::vector<Vec> rows;
    for (unsigned i = 0; i < rank(); ++i) rows.push_back(ginv->apply(dom_.basis_vector(i)));
    Subspace newdom = rows.empty() ? Subspace::zero(field(), alpha())
                                   : Subspace::from_span(field(), rows, alpha());
    MatF imgs(field(), newdom.dim(), alpha());
    for (unsigned j = 0; j < newdom.dim(); ++j)
        imgs.set_row(j, *apply(g.apply(newdom.basis_vector(j))));
    return PartialBijection(newdom, imgs);
}

PartialBijection PartialBijection::act(const MatF& g, const MatF& h) const {
    auto hinv = h.inverse();
    if (!hinv) throw std::invalid_argument("act: singular h");
    return post_compose(g).pre_compose(*hinv);
}

std::string PartialBijection::text_key() const {
    std::ostringstream os;
    os << rank() << '|';
    for (unsigned i = 0; i < rank(); ++i)
        for (unsigned j = 0; j < alpha(); ++j) os << kDigits[dom_.basis().at(i, j)];
    os << '|';
    for (unsigned i = 0; i < rank(); ++i)
        for (unsigned j = 0; j < alpha(); ++j) os << kDigits[images_.at(i, j)];
    return os.str();
}

PartialBijection PartialBijection::from_text_key(const FieldContext& f, unsigned alpha,
                                                 const std::string& key) {
    auto p1 = key.find('|');
    auto p2 = key.find('|', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw std::invalid_argument("malformed pbl key");
    unsigned r = static_cast<unsigned>(std::stoul(key.substr(0, p1)));
    auto read_mat = [&](const std::string& s) {
        if (s.size() != size_t(r) * alpha) throw std::invalid_argument("malformed pbl key body");
        MatF m(f, r, alpha);
        for (unsigned i = 0; i < r; ++i)
            for (unsigned j = 0; j < alpha; ++j)
                m.at(i, j) = static_cast<uint8_t>(digit_value(s[size_t(i) * alpha + j]));
        return m;
    };
    MatF dom_rows = read_mat(key.substr(p1 + 1, p2 - p1 - 1));
    MatF img_rows = read_mat(key.substr(p2 + 1));
    Subspace dom = Subspace::from_span(dom_rows);
    if (!(dom.basis() == dom_rows)) throw std::invalid_argument("pbl key domain not canonical");
    return PartialBijection(dom, img_rows);
}

Int sigma_rho(unsigned alpha, unsigned q, unsigned rho) {
    if (rho > alpha) throw std::invalid_argument("sigma_rho: rho must be <= alpha");
    Int numer = gl_order(alpha, q) * gl_order(alpha, q);
    Int denom = gl_order(rho, q) * gl_order(rho, q) * gl_order(alpha - rho, q) *
                int_pow(q, 2 * rho * (alpha - rho));
    return exact_div(numer, denom);
}

Int pbl_count(unsigned alpha, unsigned q) {
    Int total = 0;
    for (unsigned rho = 0; rho <= alpha; ++rho) total += sigma_rho(alpha, q, rho);
    return total;
}

std::vector<PartialBijection> enumerate_pbl(unsigned alpha, unsigned q, const Budget& budget) {
    const FieldContext& f = FieldContext::get(q);
    Int count = pbl_count(alpha, q);
    if (count > budget.max_elements) throw BudgetError(count, budget.max_elements);
    std::vector<PartialBijection> out;
    for (unsigned r = alpha + 1; r-- > 0;) {
        auto doms = all_subspaces(f, alpha, r);
        auto ims = all_subspaces(f, alpha, r);
        GroupTable glr = enumerate_gl(r, q, budget);
        for (const auto& Y : doms)
            for (const auto& Z : ims)
                for (size_t i = 0; i < glr.size(); ++i) {
                    MatF m = glr.matrix(i);
                    // lambda(y_j) = sum_k m[j][k] z_k
                    MatF imgs = r == 0 ? MatF(f, 0, alpha) : m * Z.basis();
                    out.emplace_back(Y, imgs);
                }
    }
    std::sort(out.begin(), out.end(), [](const PartialBijection& a, const PartialBijection& b) {
        if (a.corank() != b.corank()) return a.corank() < b.corank();
        return a.text_key() < b.text_key();
    });
    if (Int(out.size()) != count)
        throw std::logic_error("enumerate_pbl: count mismatch against sigma_rho");
    return out;
}

MatF extend_to_gl(const PartialBijection& lambda) {
    const FieldContext& f = lambda.field();
    const unsigned alpha = lambda.alpha(), r = lambda.rank();
    MatF bdom = lambda.dom().complete_to_basis();
    MatF bim = lambda.im().complete_to_basis();
    MatF target(f, alpha, alpha);
    for (unsigned j = 0; j < r; ++j) target.set_col(j, lambda.images().row(j));
    for (unsigned j = r; j < alpha; ++j) target.set_col(j, bim.col(j));
    MatF g = target * *bdom.inverse();
    if (!g.inverse()) throw std::logic_error("extend_to_gl produced a singular matrix");
    return g;
}

}  // namespace cosetiq
