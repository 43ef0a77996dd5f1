#include "cosetiq/subspace.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cosetiq {

Subspace Subspace::zero(const FieldContext& f, unsigned ambient) {
    Subspace s;
    s.basis_ = MatF(f, 0, ambient);
    s.ambient_ = ambient;
    return s;
}

Subspace Subspace::full(const FieldContext& f, unsigned ambient) {
    Subspace s;
    s.basis_ = MatF::identity(f, ambient);
    s.ambient_ = ambient;
    return s;
}

Subspace Subspace::from_span(const MatF& rows) {
    auto [red, rank] = rows.rref();
    Subspace s;
    s.basis_ = red.block(0, 0, rank, rows.cols());
    s.ambient_ = rows.cols();
    return s;
}

Subspace Subspace::from_span(const FieldContext& f, const std::vector<Vec>& rows,
                             unsigned ambient) {
    return from_span(MatF::from_rows(f, rows, ambient));
}

bool Subspace::contains(const Vec& v) const {
    // reduce v against the RREF basis
    Vec w = v;
    const FieldContext& f = field();
    for (unsigned r = 0; r < dim(); ++r) {
        unsigned lead = 0;
        while (lead < ambient_ && basis_.at(r, lead) == 0) ++lead;
        if (lead < ambient_ && w[lead] != 0) {
            uint8_t c = w[lead];
            for (unsigned j = 0; j < ambient_; ++j) w[j] = f.sub(w[j], f.mul(c, basis_.at(r, j)));
        }
    }
    return vec_is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
    for (unsigned r = 0; r < other.dim(); ++r)
        if (!contains(other.basis_vector(r))) return false;
    return true;
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("intersect: ambient mismatch");
    // x in S cap T  <=>  x = a S.basis = b T.basis; solve [S^t | -T^t] kernel
    // and read the intersection off the a-part of each kernel vector.
    const FieldContext& f = field();
    const unsigned r1 = dim(), r2 = other.dim();
    if (r1 == 0 || r2 == 0) return zero(f, ambient_);
    MatF m(f, ambient_, r1 + r2);
    for (unsigned i = 0; i < ambient_; ++i) {
        for (unsigned j = 0; j < r1; ++j) m.at(i, j) = basis_.at(j, i);
        for (unsigned j = 0; j < r2; ++j) m.at(i, r1 + j) = f.neg(other.basis_.at(j, i));
    }
    auto [rr, rk] = m.rref();
    std::vector<int> pivot_of_col(r1 + r2, -1);
    unsigned pr = 0;
    for (unsigned c = 0; c < r1 + r2 && pr < rk; ++c)
        if (rr.at(pr, c) != 0) pivot_of_col[c] = static_cast<int>(pr++);
    std::vector<Vec> inter_rows;
    for (unsigned c = 0; c < r1 + r2; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        Vec coeff(r1 + r2, 0);
        coeff[c] = 1;
        for (unsigned cc = 0; cc < c; ++cc)
            if (pivot_of_col[cc] >= 0)
                coeff[cc] = f.neg(rr.at(static_cast<unsigned>(pivot_of_col[cc]), c));
        Vec x(ambient_, 0);
        for (unsigned j = 0; j < r1; ++j)
            if (coeff[j] != 0) x = vec_add(f, x, vec_scale(f, coeff[j], basis_.row(j)));
        inter_rows.push_back(x);
    }
    if (inter_rows.empty()) return zero(f, ambient_);
    return from_span(f, inter_rows, ambient_);
}

Subspace Subspace::sum(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("sum: ambient mismatch");
    std::vector<Vec> rows;
    for (unsigned r = 0; r < dim(); ++r) rows.push_back(basis_vector(r));
    for (unsigned r = 0; r < other.dim(); ++r) rows.push_back(other.basis_vector(r));
    if (rows.empty()) return zero(field(), ambient_);
    return from_span(field(), rows, ambient_);
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
    const FieldContext& f = field();
    Vec w = v, coeff(dim(), 0);
    for (unsigned r = 0; r < dim(); ++r) {
        unsigned lead = 0;
        while (lead < ambient_ && basis_.at(r, lead) == 0) ++lead;
        if (lead == ambient_) continue;
        uint8_t c = w[lead];
        coeff[r] = c;
        if (c != 0)
            for (unsigned j = 0; j < ambient_; ++j) w[j] = f.sub(w[j], f.mul(c, basis_.at(r, j)));
    }
    if (!vec_is_zero(w)) return std::nullopt;
    return coeff;
}

std::vector<unsigned> Subspace::pivot_columns() const {
    std::vector<unsigned> p;
    for (unsigned r = 0; r < dim(); ++r) {
        unsigned lead = 0;
        while (lead < ambient_ && basis_.at(r, lead) == 0) ++lead;
        p.push_back(lead);
    }
    return p;
}

std::vector<unsigned> Subspace::nonpivot_columns() const {
    auto piv = pivot_columns();
    std::vector<unsigned> np;
    for (unsigned c = 0; c < ambient_; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) np.push_back(c);
    return np;
}

MatF Subspace::complete_to_basis() const {
    const FieldContext& f = field();
    MatF m(f, ambient_, ambient_);
    for (unsigned j = 0; j < dim(); ++j) m.set_col(j, basis_vector(j));
    auto np = nonpivot_columns();
    for (unsigned j = 0; j < np.size(); ++j) {
        Vec e(ambient_, 0);
        e[np[j]] = 1;
        m.set_col(dim() + j, e);
    }
    if (!m.inverse()) throw std::logic_error("complete_to_basis produced a singular matrix");
    return m;
}

std::vector<Vec> Subspace::vectors() const {
    const FieldContext& f = field();
    const unsigned q = f.q(), r = dim();
    std::vector<Vec> out;
    uint64_t count = 1;
    for (unsigned i = 0; i < r; ++i) count *= q;
    for (uint64_t code = 0; code < count; ++code) {
        Vec x(ambient_, 0);
        uint64_t c = code;
        for (unsigned i = 0; i < r; ++i) {
            uint8_t ci = static_cast<uint8_t>(c % q);
            c /= q;
            if (ci != 0) x = vec_add(f, x, vec_scale(f, ci, basis_vector(i)));
        }
        out.push_back(x);
    }
    return out;
}

bool Subspace::operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    return key() < o.key();
}

std::string Subspace::key() const {
    static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ+/";
    std::ostringstream os;
    os << dim() << ":";
    for (unsigned r = 0; r < dim(); ++r)
        for (unsigned c = 0; c < ambient_; ++c) os << digits[basis_.at(r, c)];
    return os.str();
}

Subspace kernel(const MatF& m) {
    const FieldContext& f = m.field();
    const unsigned n = m.cols();
    auto [rr, rk] = m.rref();
    std::vector<int> pivot_of_col(n, -1);
    unsigned pr = 0;
    for (unsigned c = 0; c < n && pr < rk; ++c)
        if (rr.at(pr, c) != 0) pivot_of_col[c] = static_cast<int>(pr++);
    std::vector<Vec> rows;
    for (unsigned c = 0; c < n; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        Vec x(n, 0);
        x[c] = 1;
        for (unsigned cc = 0; cc < c; ++cc)
            if (pivot_of_col[cc] >= 0)
                x[cc] = f.neg(rr.at(static_cast<unsigned>(pivot_of_col[cc]), c));
        rows.push_back(x);
    }
    if (rows.empty()) return Subspace::zero(f, n);
    return Subspace::from_span(f, rows, n);
}

Subspace image(const MatF& m) {
    return Subspace::from_span(m.transpose());
}

namespace {

// All RREF matrices with the given pivot columns, deterministic order.
void emit_rrefs(const FieldContext& f, unsigned ambient, const std::vector<unsigned>& pivots,
                std::vector<Subspace>& out) {
    const unsigned r = static_cast<unsigned>(pivots.size());
    std::vector<std::pair<unsigned, unsigned>> free_slots;  // (row, col) free entries
    for (unsigned i = 0; i < r; ++i)
        for (unsigned c = pivots[i] + 1; c < ambient; ++c)
            if (std::find(pivots.begin(), pivots.end(), c) == pivots.end())
                free_slots.push_back({i, c});
    uint64_t combos = 1;
    for (size_t i = 0; i < free_slots.size(); ++i) combos *= f.q();
    for (uint64_t code = 0; code < combos; ++code) {
        MatF m(f, r, ambient);
        for (unsigned i = 0; i < r; ++i) m.at(i, pivots[i]) = 1;
        uint64_t c = code;
        for (auto [row, col] : free_slots) {
            m.at(row, col) = static_cast<uint8_t>(c % f.q());
            c /= f.q();
        }
        Subspace s;
        s = Subspace::from_span(m);  // already RREF; normalizes representation
        out.push_back(s);
    }
}

void pivot_combinations(unsigned ambient, unsigned r, unsigned start, std::vector<unsigned>& cur,
                        std::vector<std::vector<unsigned>>& out) {
    if (cur.size() == r) {
        out.push_back(cur);
        return;
    }
    for (unsigned c = start; c < ambient; ++c) {
        cur.push_back(c);
        pivot_combinations(ambient, r, c + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Subspace> all_subspaces(const FieldContext& f, unsigned ambient, unsigned dim) {
    std::vector<Subspace> out;
    if (dim > ambient) return out;
    std::vector<std::vector<unsigned>> pivot_sets;
    std::vector<unsigned> cur;
    pivot_combinations(ambient, dim, 0, cur, pivot_sets);
    for (const auto& p : pivot_sets) emit_rrefs(f, ambient, p, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subspace> all_subspaces(const FieldContext& f, unsigned ambient) {
    std::vector<Subspace> out;
    for (unsigned d = 0; d <= ambient; ++d) {
        auto v = all_subspaces(f, ambient, d);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<Subspace> all_hyperplanes(const FieldContext& f, unsigned ambient) {
    if (ambient == 0) throw std::invalid_argument("no hyperplanes in dimension 0");
    return all_subspaces(f, ambient, ambient - 1);
}

std::vector<Subspace> hyperplanes_containing(const Subspace& n) {
    std::vector<Subspace> out;
    for (const auto& h : all_hyperplanes(n.field(), n.ambient()))
        if (h.contains(n)) out.push_back(h);
    return out;
}

}  // namespace cosetiq
