#include "cosetiq/enumeration.hpp"

#include <stdexcept>

namespace cosetiq {

SpaceCodes::SpaceCodes(const FieldContext& f, unsigned d) : field(&f), dim(d) {
    uint64_t s = 1;
    for (unsigned i = 0; i < d; ++i) {
        s *= f.q();
        if (s > (uint64_t(1) << 26))
            throw std::invalid_argument("SpaceCodes: q^dim too large for table construction");
    }
    size = static_cast<uint32_t>(s);
    const unsigned q = f.q();

    digits.assign(size_t(size) * dim, 0);
    for (uint32_t a = 0; a < size; ++a) {
        uint32_t x = a;
        for (unsigned j = 0; j < dim; ++j) {
            digits[size_t(a) * dim + j] = static_cast<uint8_t>(x % q);
            x /= q;
        }
    }
    add.assign(size_t(size) * size, 0);
    smul.assign(size_t(q) * size, 0);
    for (uint32_t a = 0; a < size; ++a) {
        for (uint32_t b = 0; b < size; ++b) {
            uint32_t code = 0, place = 1;
            for (unsigned j = 0; j < dim; ++j) {
                code += uint32_t(f.add(digit(a, j), digit(b, j))) * place;
                place *= q;
            }
            add[size_t(a) * size + b] = code;
        }
        for (unsigned c = 0; c < q; ++c) {
            uint32_t code = 0, place = 1;
            for (unsigned j = 0; j < dim; ++j) {
                code += uint32_t(f.mul(static_cast<uint8_t>(c), digit(a, j))) * place;
                place *= q;
            }
            smul[size_t(c) * size + a] = code;
        }
    }
}

uint32_t SpaceCodes::code_of(const Vec& v) const {
    uint32_t code = 0, place = 1;
    for (unsigned j = 0; j < dim; ++j) {
        code += uint32_t(v[j]) * place;
        place *= field->q();
    }
    return code;
}

Vec SpaceCodes::vec_of(uint32_t code) const {
    Vec v(dim);
    for (unsigned j = 0; j < dim; ++j) v[j] = digit(code, j);
    return v;
}

MatCodes::MatCodes(const SpaceCodes& s) : space(&s), m(s.dim), q2(s.field->q() == 2) {
    row_place_ = s.size;
}

void MatCodes::mul(const uint32_t* a, const uint32_t* b, uint32_t* out) const {
    if (q2) {
        for (unsigned i = 0; i < m; ++i) {
            uint32_t acc = 0, sel = a[i];
            while (sel) {
                unsigned k = static_cast<unsigned>(__builtin_ctz(sel));
                acc ^= b[k];
                sel &= sel - 1;
            }
            out[i] = acc;
        }
        return;
    }
    const SpaceCodes& sp = *space;
    for (unsigned i = 0; i < m; ++i) {
        uint32_t acc = 0;
        for (unsigned k = 0; k < m; ++k) {
            uint8_t c = sp.digit(a[i], k);
            if (c) acc = sp.vadd(acc, sp.vsmul(c, b[k]));
        }
        out[i] = acc;
    }
}

uint64_t MatCodes::packed_key(const uint32_t* rows) const {
    uint64_t key = 0;
    for (unsigned i = m; i-- > 0;) key = key * row_place_ + rows[i];
    return key;
}

void MatCodes::unpack_key(uint64_t key, uint32_t* rows) const {
    for (unsigned i = 0; i < m; ++i) {
        rows[i] = static_cast<uint32_t>(key % row_place_);
        key /= row_place_;
    }
}

void MatCodes::from_mat(const MatF& mat, uint32_t* rows) const {
    for (unsigned i = 0; i < m; ++i) rows[i] = space->code_of(mat.row(i));
}

MatF MatCodes::to_mat(const uint32_t* rows) const {
    MatF mat(*space->field, m, m);
    for (unsigned i = 0; i < m; ++i) mat.set_row(i, space->vec_of(rows[i]));
    return mat;
}

namespace {

struct GlWalker {
    const SpaceCodes& sp;
    unsigned m;
    const std::function<void(const uint32_t*)>& fn;
    std::vector<uint32_t> rows;
    std::vector<char> inspan;        // membership over codes
    std::vector<uint32_t> spanlist;  // current span, 2^r .. q^r codes

    GlWalker(const SpaceCodes& s, unsigned m_, const std::function<void(const uint32_t*)>& f)
        : sp(s), m(m_), fn(f), rows(m_, 0), inspan(s.size, 0), spanlist{0} {
        inspan[0] = 1;
    }

    void descend(unsigned depth) {
        if (depth == m) {
            fn(rows.data());
            return;
        }
        const size_t mark = spanlist.size();
        for (uint32_t v = 1; v < sp.size; ++v) {
            if (inspan[v]) continue;
            rows[depth] = v;
            extend_span(v, mark);
            descend(depth + 1);
            retract_span(mark);
        }
    }

    void run_first_row(uint32_t v) {
        rows[0] = v;
        extend_span(v, 1);
        descend(1);
        retract_span(1);
    }

    void extend_span(uint32_t v, size_t mark) {
        const unsigned q = sp.field->q();
        for (size_t i = 0; i < mark; ++i) {
            uint32_t s = spanlist[i];
            for (unsigned c = 1; c < q; ++c) {
                uint32_t w = sp.vadd(s, sp.vsmul(static_cast<uint8_t>(c), v));
                inspan[w] = 1;
                spanlist.push_back(w);
            }
        }
    }

    void retract_span(size_t mark) {
        while (spanlist.size() > mark) {
            inspan[spanlist.back()] = 0;
            spanlist.pop_back();
        }
    }
};

}  // namespace

void for_each_gl_slice(const SpaceCodes& space, unsigned m, unsigned slice, unsigned nslices,
                       const std::function<void(const uint32_t* rows)>& fn) {
    if (m == 0) {
        if (slice == 0) {
            uint32_t dummy = 0;
            fn(&dummy);  // GL(0) = {empty matrix}
        }
        return;
    }
    GlWalker walker(space, m, fn);
    unsigned idx = 0;
    for (uint32_t v = 1; v < space.size; ++v, ++idx)
        if (idx % nslices == slice) walker.run_first_row(v);
}

}  // namespace cosetiq
