#include "cosetiq/ratpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace cosetiq {

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

Int parse_int(const std::string& s) { return Int(s); }

RatPoly RatPoly::operator+(const RatPoly& o) const {
    std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return RatPoly(std::move(c));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
    std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
    return RatPoly(std::move(c));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
    if (c_.empty() || o.c_.empty()) return RatPoly();
    std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    }
    return RatPoly(std::move(c));
}

RatPoly RatPoly::operator*(const Rat& s) const {
    if (s == 0) return RatPoly();
    std::vector<Rat> c(c_);
    for (auto& x : c) x *= s;
    return RatPoly(std::move(c));
}

RatPoly RatPoly::operator-() const { return *this * Rat(-1); }

Rat RatPoly::eval(const Rat& t) const {
    Rat acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
}

RatPoly RatPoly::deflate(const Rat& root) const {
    if (is_zero()) throw std::invalid_argument("deflate: zero polynomial");
    std::vector<Rat> q(c_.size() - 1, Rat(0));
    Rat carry = 0;
    for (size_t i = c_.size(); i-- > 1;) {
        carry = c_[i] + carry * root;
        q[i - 1] = carry;
    }
    if (c_[0] + carry * root != 0) throw std::invalid_argument("deflate: not a root");
    return RatPoly(std::move(q));
}

RatPoly RatPoly::integer_normalized() const {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    if (is_zero()) return RatPoly();
    Int den = 1;
    for (const auto& c : c_) den = lcm(den, Int(denominator(c)));
    Int content = 0;
    std::vector<Rat> scaled(c_);
    for (auto& c : scaled) c *= den;
    for (const auto& c : scaled) content = gcd(content, Int(numerator(c)));
    if (content == 0) content = 1;
    for (auto& c : scaled) c /= content;
    return RatPoly(std::move(scaled));
}

std::string RatPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rat& c = c_[i];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        Rat a = (!first && c < 0) ? Rat(-c) : c;
        if (first && c < 0) { os << "-"; a = -c; }
        if (i == 0 || a != 1) os << rat_str(a);
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

RatPoly lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
    RatPoly acc;
    for (size_t i = 0; i < points.size(); ++i) {
        RatPoly numer = RatPoly::constant(Rat(1));
        Rat denom = 1;
        for (size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            numer = numer * RatPoly({-points[j].first, Rat(1)});
            denom *= points[i].first - points[j].first;
        }
        if (denom == 0) throw std::invalid_argument("lagrange: repeated interpolation point");
        acc = acc + numer * (points[i].second / denom);
    }
    return acc;
}

std::vector<Rat> rational_roots(const RatPoly& p) {
    std::vector<Rat> roots;
    if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
    RatPoly q = p.integer_normalized();
    // strip t^k factors: root 0
    while (q.coeff(0) == 0 && q.degree() > 0) {
        if (roots.empty() || roots.back() != 0) roots.push_back(Rat(0));
        q = q.deflate(Rat(0));
    }
    if (q.degree() < 1) return roots;
    Int a0 = numerator(q.coeff(0));
    Int an = numerator(q.coeff(q.degree()));
    if (a0 < 0) a0 = -a0;
    if (an < 0) an = -an;
    auto divisors = [](const Int& n) {
        std::vector<Int> ds;
        for (Int d = 1; d * d <= n; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                if (d * d != n) ds.push_back(n / d);
            }
        return ds;
    };
    for (const Int& pnum : divisors(a0)) {
        for (const Int& pden : divisors(an)) {
            for (int sign : {1, -1}) {
                Rat cand(sign * pnum, pden);
                while (q.degree() > 0 && q.eval(cand) == 0) {
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                    q = q.deflate(cand);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace cosetiq
