#include "cosetiq/matf.hpp"

#include <sstream>
#include <stdexcept>

namespace cosetiq {

MatF MatF::identity(const FieldContext& f, unsigned n) {
    MatF m(f, n, n);
    for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

MatF MatF::from_rows(const FieldContext& f, const std::vector<Vec>& rows, unsigned cols) {
    MatF m(f, static_cast<unsigned>(rows.size()), cols);
    for (unsigned r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged row");
        m.set_row(r, rows[r]);
    }
    return m;
}

Vec MatF::row(unsigned r) const {
    Vec v(cols_);
    for (unsigned c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

Vec MatF::col(unsigned c) const {
    Vec v(rows_);
    for (unsigned r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

void MatF::set_row(unsigned r, const Vec& v) {
    for (unsigned c = 0; c < cols_; ++c) at(r, c) = v[c];
}

void MatF::set_col(unsigned c, const Vec& v) {
    for (unsigned r = 0; r < rows_; ++r) at(r, c) = v[r];
}

MatF MatF::operator*(const MatF& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    MatF out(*f_, rows_, o.cols_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned k = 0; k < cols_; ++k) {
            uint8_t a = at(i, k);
            if (a == 0) continue;
            for (unsigned j = 0; j < o.cols_; ++j)
                out.at(i, j) = f_->add(out.at(i, j), f_->mul(a, o.at(k, j)));
        }
    return out;
}

Vec MatF::apply(const Vec& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    Vec y(rows_, 0);
    for (unsigned i = 0; i < rows_; ++i) {
        uint8_t acc = 0;
        for (unsigned j = 0; j < cols_; ++j) acc = f_->add(acc, f_->mul(at(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

MatF MatF::transpose() const {
    MatF out(*f_, cols_, rows_);
    for (unsigned i = 0; i < rows_; ++i)
        for (unsigned j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

MatF MatF::block(unsigned r0, unsigned c0, unsigned h, unsigned w) const {
    MatF out(*f_, h, w);
    for (unsigned i = 0; i < h; ++i)
        for (unsigned j = 0; j < w; ++j) out.at(i, j) = at(r0 + i, c0 + j);
    return out;
}

std::pair<MatF, unsigned> MatF::rref() const {
    MatF m = *this;
    const FieldContext& f = *f_;
    unsigned lead = 0, rank = 0;
    for (unsigned col = 0; col < cols_ && lead < rows_; ++col) {
        unsigned piv = lead;
        while (piv < rows_ && m.at(piv, col) == 0) ++piv;
        if (piv == rows_) continue;
        // swap into place, normalize, eliminate above and below
        if (piv != lead)
            for (unsigned c = 0; c < cols_; ++c) std::swap(m.at(piv, c), m.at(lead, c));
        uint8_t s = f.inv(m.at(lead, col));
        for (unsigned c = 0; c < cols_; ++c) m.at(lead, c) = f.mul(s, m.at(lead, c));
        for (unsigned r = 0; r < rows_; ++r) {
            if (r == lead) continue;
            uint8_t v = m.at(r, col);
            if (v == 0) continue;
            for (unsigned c = 0; c < cols_; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(v, m.at(lead, c)));
        }
        ++lead;
        ++rank;
    }
    return {m, rank};
}

std::optional<MatF> MatF::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse: non-square");
    const unsigned n = rows_;
    MatF aug(*f_, n, 2 * n);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto [red, rank] = aug.rref();
    if (rank < n) return std::nullopt;
    return red.block(0, n, n, n);
}

uint64_t MatF::packed_key() const {
    const uint64_t q = f_->q();
    uint64_t key = 0, place = 1;
    for (size_t i = 0; i < e_.size(); ++i) {
        if (place != 0 && key > (UINT64_MAX - uint64_t(e_[i]) * place))
            throw std::overflow_error("packed_key: matrix too large for 64-bit key");
        key += uint64_t(e_[i]) * place;
        if (i + 1 < e_.size()) {
            if (place > UINT64_MAX / q) throw std::overflow_error("packed_key: overflow");
            place *= q;
        }
    }
    return key;
}

MatF MatF::from_packed_key(const FieldContext& f, unsigned rows, unsigned cols, uint64_t key) {
    MatF m(f, rows, cols);
    const uint64_t q = f.q();
    for (size_t i = 0; i < size_t(rows) * cols; ++i) {
        m.e_[i] = static_cast<uint8_t>(key % q);
        key /= q;
    }
    return m;
}

std::string MatF::to_string() const {
    std::ostringstream os;
    for (unsigned i = 0; i < rows_; ++i) {
        os << (i ? "; " : "[");
        for (unsigned j = 0; j < cols_; ++j) os << (j ? " " : "") << unsigned(at(i, j));
    }
    os << "]";
    return os.str();
}

std::vector<uint64_t> to_bit_rows(const MatF& m) {
    if (m.field().q() != 2) throw std::invalid_argument("bit rows require q=2");
    if (m.cols() > 64) throw std::invalid_argument("bit rows support up to 64 columns");
    std::vector<uint64_t> rows(m.rows(), 0);
    for (unsigned i = 0; i < m.rows(); ++i)
        for (unsigned j = 0; j < m.cols(); ++j)
            if (m.at(i, j)) rows[i] |= (uint64_t(1) << j);
    return rows;
}

MatF from_bit_rows(const FieldContext& f, const std::vector<uint64_t>& rows, unsigned cols) {
    MatF m(f, static_cast<unsigned>(rows.size()), cols);
    for (unsigned i = 0; i < rows.size(); ++i)
        for (unsigned j = 0; j < cols; ++j) m.at(i, j) = (rows[i] >> j) & 1u;
    return m;
}

Vec vec_add(const FieldContext& f, const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = f.add(a[i], b[i]);
    return c;
}

Vec vec_scale(const FieldContext& f, uint8_t c, const Vec& a) {
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = f.mul(c, a[i]);
    return out;
}

bool vec_is_zero(const Vec& a) {
    for (uint8_t v : a)
        if (v) return false;
    return true;
}

}  // namespace cosetiq
