#pragma once

// Internal: shared by cosets.cpp and algebra.cpp hot loops.  Not installed.

#include "cosetiq/enumeration.hpp"

namespace cosetiq {
namespace detail {

// Streaming Pi evaluation on row-code matrices: tables sized q^alpha.
struct PiEngine {
    const SpaceCodes& big;    // F_q^{alpha+n}
    SpaceCodes small;         // F_q^alpha
    unsigned alpha, n, m;
    std::vector<uint32_t> prefix;  // big code -> its first alpha digits as small code
    std::vector<uint32_t> epow;    // e_c code = q^c

    PiEngine(const FieldContext& f, const SpaceCodes& bigspace, unsigned a, unsigned nn)
        : big(bigspace), small(f, a), alpha(a), n(nn), m(a + nn) {
        if (alpha > 8 || n > 8) throw std::invalid_argument("pi engine: block sizes above 8");
        prefix.resize(big.size);
        for (uint32_t c = 0; c < big.size; ++c) {
            uint32_t p = 0, place = 1;
            for (unsigned j = 0; j < alpha; ++j) {
                p += uint32_t(big.digit(c, j)) * place;
                place *= f.q();
            }
            prefix[c] = p;
        }
        epow.resize(alpha);
        uint32_t place = 1;
        for (unsigned c = 0; c < alpha; ++c) {
            epow[c] = place;
            place *= f.q();
        }
    }

    // RREF in place over small codes; fills pivot columns, returns rank.
    unsigned rref_codes(uint32_t* rows, unsigned nrows, uint8_t* pivots) const {
        const FieldContext& f = *small.field;
        unsigned rank = 0;
        for (unsigned col = 0; col < alpha && rank < nrows; ++col) {
            unsigned piv = rank;
            while (piv < nrows && small.digit(rows[piv], col) == 0) ++piv;
            if (piv == nrows) continue;
            std::swap(rows[rank], rows[piv]);
            uint8_t lead = small.digit(rows[rank], col);
            if (lead != 1) rows[rank] = small.vsmul(f.inv(lead), rows[rank]);
            for (unsigned r2 = 0; r2 < nrows; ++r2) {
                if (r2 == rank) continue;
                uint8_t v = small.digit(rows[r2], col);
                if (v) rows[r2] = small.vadd(rows[r2], small.vsmul(f.neg(v), rows[rank]));
            }
            pivots[rank] = static_cast<uint8_t>(col);
            ++rank;
        }
        return rank;
    }

    // Canonical kernel RREF rows of the C block; returns kernel dimension.
    unsigned kernel_rows(const uint32_t* crows, unsigned nrows, uint32_t* out) const {
        const FieldContext& f = *small.field;
        uint32_t work[8];
        uint8_t pivots[8];
        for (unsigned i = 0; i < nrows; ++i) work[i] = crows[i];
        unsigned rank = rref_codes(work, nrows, pivots);
        bool is_pivot[8] = {false, false, false, false, false, false, false, false};
        for (unsigned i = 0; i < rank; ++i) is_pivot[pivots[i]] = true;
        unsigned kd = 0;
        for (unsigned c = 0; c < alpha; ++c) {
            if (is_pivot[c]) continue;
            uint32_t v = epow[c];  // e_c
            for (unsigned i = 0; i < rank; ++i) {
                uint8_t coef = small.digit(work[i], c);
                if (coef) v = small.vadd(v, small.vsmul(f.neg(coef), epow[pivots[i]]));
            }
            out[kd++] = v;
        }
        uint8_t kp[8];
        rref_codes(out, kd, kp);  // canonical form
        return kd;
    }

    // Full Pi: kernel rows + image rows; returns rank of the label.
    unsigned project(const uint32_t* rows, uint32_t* dom_out, uint32_t* img_out) const {
        const FieldContext& f = *small.field;
        uint32_t crows[8];
        for (unsigned i = 0; i < n; ++i) crows[i] = prefix[rows[alpha + i]];
        unsigned kd = kernel_rows(crows, n, dom_out);
        // columns of A as small codes
        uint32_t acol[8];
        for (unsigned k = 0; k < alpha; ++k) {
            uint32_t code = 0, place = 1;
            for (unsigned i = 0; i < alpha; ++i) {
                code += uint32_t(small.digit(prefix[rows[i]], k)) * place;
                place *= f.q();
            }
            // digit(prefix[rows[i]], k) = A[i][k]; code over i
            acol[k] = code;
        }
        for (unsigned j = 0; j < kd; ++j) {
            uint32_t y = dom_out[j], img = 0;
            for (unsigned k = 0; k < alpha; ++k) {
                uint8_t c = small.digit(y, k);
                if (c) img = small.vadd(img, small.vsmul(c, acol[k]));
            }
            img_out[j] = img;
        }
        return kd;
    }

    // Dense bucket key: rank then dom rows then image rows, base q^alpha.
    uint64_t label_key(unsigned rank, const uint32_t* dom, const uint32_t* img) const {
        uint64_t key = rank;
        for (unsigned i = 0; i < rank; ++i) key = key * small.size + dom[i];
        for (unsigned i = 0; i < rank; ++i) key = key * small.size + img[i];
        return key;
    }
};

}  // namespace detail
}  // namespace cosetiq
