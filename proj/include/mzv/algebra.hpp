#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mzv/index.hpp"
#include "mzv/rational.hpp"

namespace mzv {

// Canonical term order for rendering and map keys: weight ascending, then
// depth descending, then part sequence lexicographically descending, plain
// before starred.
struct term_order {
    bool operator()(const signed_index& a, const signed_index& b) const;
};

// A finite rational-coefficient combination of indices.  AllowStar=false is
// the strict currency of identities: unstarred, admissible terms only.
// AllowStar=true additionally carries z-star terms symbolically (expanded on
// demand via expand_stars()).
template <bool AllowStar>
class basic_sum {
  public:
    using term_map = std::map<signed_index, rational, term_order>;

    basic_sum() = default;
    basic_sum(const signed_index& idx, const rational& coef = 1) { add(idx, coef); }

    // Adds coef * idx; drops the term if the coefficient cancels to zero.
    // Throws divergent_term for non-admissible indices and (when AllowStar is
    // false) for starred ones.
    void add(const signed_index& idx, const rational& coef);

    template <bool OtherStar>
        requires(AllowStar || !OtherStar)
    void add(const basic_sum<OtherStar>& other, const rational& scale = 1) {
        for (const auto& [idx, c] : other.terms()) add(idx, c * scale);
    }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const term_map& terms() const { return terms_; }
    rational coefficient(const signed_index& idx) const;

    basic_sum& operator+=(const basic_sum& o) { add(o); return *this; }
    basic_sum& operator-=(const basic_sum& o) { add(o, -1); return *this; }
    basic_sum& operator*=(const rational& s);
    friend basic_sum operator+(basic_sum a, const basic_sum& b) { a += b; return a; }
    friend basic_sum operator-(basic_sum a, const basic_sum& b) { a -= b; return a; }
    friend basic_sum operator*(const rational& s, basic_sum a) { a *= s; return a; }
    friend bool operator==(const basic_sum&, const basic_sum&) = default;

    // "c1*z(..) + c2*z(..)" with rational coefficients rendered as "p/q";
    // the empty sum renders as "0".
    std::string str() const;

  private:
    term_map terms_;
};

using formal_sum = basic_sum<false>;
using star_sum = basic_sum<true>;

formal_sum expand_stars(const star_sum& s);
star_sum as_star_sum(const formal_sum& s);

// Parses "c1*z(..) + c2*zs(..) - z(..)" (coefficients "p/q", optional).
star_sum parse_sum(const std::string& text);

// Applies the duality involution to every term (all terms must be unsigned
// and admissible).
formal_sum map_dual(const formal_sum& s);

// Integer-multiplicity combination of words, the shuffle product's codomain.
class word_sum {
  public:
    using term_map = std::map<word, bigint>;

    void add(const word& w, const bigint& mult);
    const term_map& terms() const { return terms_; }
    bigint total_multiplicity() const;
    friend bool operator==(const word_sum&, const word_sum&) = default;
    std::string str() const;

  private:
    term_map terms_;
};

// All order-preserving interleavings; total multiplicity C(|w1|+|w2|, |w1|).
word_sum shuffle(const word& w1, const word& w2);

// to_word -> shuffle -> from_word, termwise; both inputs unsigned admissible.
formal_sum shuffle_indices(const signed_index& x, const signed_index& y);

// Harmonic (quasi-shuffle) product: interleave-or-merge on parts, merged
// exponents add and signs multiply.  Inputs unstarred admissible.
formal_sum stuffle(const signed_index& x, const signed_index& y);
formal_sum stuffle(const formal_sum& x, const formal_sum& y);

// z-star as a sum of 2^{depth-1} plain values (contract adjacent runs).
formal_sum star_expand(const signed_index& idx);

// z(a1..ar) + (-1)^r zstar(ar..a1) = sum_k (-1)^{k+1} zstar(ak..a1) z(a_{k+1}..ar),
// for a1 >= 2, ar >= 2, unsigned.  Factors of the right-hand side are kept
// symbolic (star markers expand at evaluation time).
struct product_term {
    rational coef;
    signed_index left;   // may be starred
    signed_index right;  // plain
};
struct reflection_identity {
    star_sum lhs;
    std::vector<product_term> rhs;
};
reflection_identity reflection_instance(const std::vector<int>& alpha);

// Modified Bell polynomials P_m: coefficients of exp(sum_k x_k z^k / k).
// Works on any field-like T (exact rationals or reals); requires |xs| >= m.
template <typename T>
T bell_p(int m, std::span<const T> xs) {
    if (m < 0) throw parameter_out_of_range("bell_p: m must be >= 0");
    if (static_cast<int>(xs.size()) < m)
        throw parameter_out_of_range("bell_p: need at least m values");
    std::vector<T> p(static_cast<std::size_t>(m) + 1);
    p[0] = T(1);
    for (int j = 1; j <= m; ++j) {
        T acc = T(0);
        for (int k = 1; k <= j; ++k)
            acc += xs[static_cast<std::size_t>(k - 1)] * p[static_cast<std::size_t>(j - k)];
        p[static_cast<std::size_t>(j)] = acc / T(j);
    }
    return p[static_cast<std::size_t>(m)];
}

template <typename T>
T bell_p(int m, const std::vector<T>& xs) {
    return bell_p<T>(m, std::span<const T>(xs));
}

// Both sides of the harmonic-sum identity
//   P_n(h_1..h_n) = sum_{k1 <= l1 <= ... <= ln <= k2} 1/(l1...ln),
// h_j = sum_{i=k1}^{k2} i^{-j}, as exact rationals.
std::pair<rational, rational> bell_harmonic(int k1, int k2, int n);

}  // namespace mzv
