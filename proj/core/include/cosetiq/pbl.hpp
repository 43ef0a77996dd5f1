#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosetiq/groups.hpp"
#include "cosetiq/subspace.hpp"

namespace cosetiq {

// A partial linear bijection F_q^alpha -> F_q^alpha: an invertible linear
// map from a subspace Y onto a subspace Z.  Canonical representation: Y in
// RREF, and images row i = coordinates of lambda(y_i) for the i-th RREF
// basis vector y_i of Y.  Value equality is map equality.
class PartialBijection {
public:
    PartialBijection() = default;
    // dom canonical, images r x alpha with independent rows.
    PartialBijection(Subspace dom, MatF images);

    static PartialBijection identity(const FieldContext& f, unsigned alpha);
    static PartialBijection empty_map(const FieldContext& f, unsigned alpha);
    // T[S]: domain S, identical on S.
    static PartialBijection idempotent(const Subspace& S);
    // The total bijection given by an invertible matrix.
    static PartialBijection total(const MatF& g);

    const FieldContext& field() const { return dom_.field(); }
    unsigned alpha() const { return dom_.ambient(); }
    unsigned rank() const { return dom_.dim(); }
    unsigned corank() const { return alpha() - rank(); }
    const Subspace& dom() const { return dom_; }
    const MatF& images() const { return images_; }
    Subspace im() const;

    std::optional<Vec> apply(const Vec& x) const;  // nullopt outside dom
    PartialBijection inverse() const;
    // Semigroup composition (this after other); utility for tests only, the
    // algebra modules never use the multiplicative structure.
    PartialBijection compose(const PartialBijection& other) const;
    // Left-right action: g . lambda . h^{-1}.
    PartialBijection act(const MatF& g, const MatF& h) const;
    // g . lambda (post-compose with a total map).
    PartialBijection post_compose(const MatF& g) const;
    // lambda . g (pre-compose).
    PartialBijection pre_compose(const MatF& g) const;

    bool operator==(const PartialBijection& o) const {
        return dom_ == o.dom_ && images_ == o.images_;
    }
    bool operator<(const PartialBijection& o) const { return text_key() < o.text_key(); }

    // Stable packed text encoding "r|dom-rows|image-rows" in base-q digits;
    // used as the JSON key for coset labels.
    std::string text_key() const;
    static PartialBijection from_text_key(const FieldContext& f, unsigned alpha,
                                          const std::string& key);

private:
    Subspace dom_;
    MatF images_;
};

// All partial bijections, each exactly once, deterministic order sorted by
// (corank ascending, text key): total bijections first, the empty map last.
std::vector<PartialBijection> enumerate_pbl(unsigned alpha, unsigned q,
                                            const Budget& budget = {});

// Number of partial bijections of rank alpha - rho (eq. sigma_rho); exact.
Int sigma_rho(unsigned alpha, unsigned q, unsigned rho);
Int pbl_count(unsigned alpha, unsigned q);

// Deterministic invertible matrix agreeing with lambda on dom lambda:
// columns are the images of dom's RREF basis followed by the images of the
// standard completion vectors, mapped onto the completion of im lambda.
MatF extend_to_gl(const PartialBijection& lambda);

}  // namespace cosetiq
