#include "mzv/algebra.hpp"

#include <algorithm>
#include <cctype>

namespace mzv {

bool term_order::operator()(const signed_index& a, const signed_index& b) const {
    const int wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    if (a.depth() != b.depth()) return a.depth() > b.depth();
    if (a.parts() != b.parts()) return a.parts() > b.parts();
    return a.starred() < b.starred();
}

template <bool AllowStar>
void basic_sum<AllowStar>::add(const signed_index& idx, const rational& coef) {
    if (coef == 0) return;
    if (!AllowStar && idx.starred())
        throw divergent_term("starred index in a plain formal sum: " + render(idx));
    if (!idx.is_admissible())
        throw divergent_term("non-admissible index in a formal sum: " + render(idx));
    auto [it, inserted] = terms_.emplace(idx, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second == 0) terms_.erase(it);
    }
}

template <bool AllowStar>
rational basic_sum<AllowStar>::coefficient(const signed_index& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? rational(0) : it->second;
}

template <bool AllowStar>
basic_sum<AllowStar>& basic_sum<AllowStar>::operator*=(const rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [idx, c] : terms_) c *= s;
    return *this;
}

template <bool AllowStar>
std::string basic_sum<AllowStar>::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [idx, c] : terms_) {
        if (!out.empty()) out += " + ";
        if (c != 1) out += to_string(c) + "*";
        out += render(idx);
    }
    return out;
}

template class basic_sum<false>;
template class basic_sum<true>;

formal_sum expand_stars(const star_sum& s) {
    formal_sum out;
    for (const auto& [idx, c] : s.terms()) {
        if (idx.starred())
            out.add(star_expand(idx), c);
        else
            out.add(idx, c);
    }
    return out;
}

star_sum as_star_sum(const formal_sum& s) {
    star_sum out;
    for (const auto& [idx, c] : s.terms()) out.add(idx, c);
    return out;
}

star_sum parse_sum(const std::string& text) {
    star_sum out;
    std::size_t pos = 0;
    const auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    bool first = true;
    for (;;) {
        skip_ws();
        if (pos == text.size()) {
            if (first) throw parse_error(pos, "empty expression");
            break;
        }
        rational sign = 1;
        if (!first) {
            if (text[pos] == '+') {
                ++pos;
            } else if (text[pos] == '-') {
                sign = -1;
                ++pos;
            } else {
                throw parse_error(pos, "expected '+' or '-' between terms");
            }
            skip_ws();
        } else if (text[pos] == '-') {
            sign = -1;
            ++pos;
            skip_ws();
        }
        first = false;
        // Optional rational coefficient followed by '*'.
        rational coef = 1;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            const std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
                ++pos;
            coef = parse_rational(text.substr(start, pos - start));
            skip_ws();
            if (pos >= text.size() || text[pos] != '*')
                throw parse_error(pos, "expected '*' after coefficient");
            ++pos;
            skip_ws();
        }
        if (pos >= text.size() || text[pos] != 'z')
            throw parse_error(pos, "expected an index 'z(...)' or 'zs(...)'");
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != ')') ++pos;
        if (pos == text.size()) throw parse_error(start, "unterminated index");
        ++pos;  // include ')'
        signed_index idx = parse_index(text.substr(start, pos - start));
        const rational c = sign * coef;
        if (!idx.is_admissible())
            throw divergent_index("divergent index in expression: " + render(idx));
        out.add(idx, c);
    }
    return out;
}

formal_sum map_dual(const formal_sum& s) {
    formal_sum out;
    for (const auto& [idx, c] : s.terms()) out.add(dual(idx), c);
    return out;
}

void word_sum::add(const word& w, const bigint& mult) {
    if (mult == 0) return;
    auto [it, inserted] = terms_.emplace(w, mult);
    if (!inserted) {
        it->second += mult;
        if (it->second == 0) terms_.erase(it);
    }
}

bigint word_sum::total_multiplicity() const {
    bigint t = 0;
    for (const auto& [w, m] : terms_) t += m;
    return t;
}

std::string word_sum::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, m] : terms_) {
        if (!out.empty()) out += " + ";
        if (m != 1) out += m.str() + "*";
        out += w.text();
    }
    return out;
}

namespace {

void shuffle_rec(const std::vector<letter>& u, std::size_t i, const std::vector<letter>& v,
                 std::size_t j, std::vector<letter>& acc, word_sum& out) {
    if (i == u.size() && j == v.size()) {
        out.add(word(acc), 1);
        return;
    }
    if (i < u.size()) {
        acc.push_back(u[i]);
        shuffle_rec(u, i + 1, v, j, acc, out);
        acc.pop_back();
    }
    if (j < v.size()) {
        acc.push_back(v[j]);
        shuffle_rec(u, i, v, j + 1, acc, out);
        acc.pop_back();
    }
}

}  // namespace

word_sum shuffle(const word& w1, const word& w2) {
    word_sum out;
    std::vector<letter> acc;
    acc.reserve(w1.letters().size() + w2.letters().size());
    shuffle_rec(w1.letters(), 0, w2.letters(), 0, acc, out);
    return out;
}

formal_sum shuffle_indices(const signed_index& x, const signed_index& y) {
    const word_sum ws = shuffle(to_word(x), to_word(y));
    formal_sum out;
    for (const auto& [w, m] : ws.terms()) {
        // Interleavings of admissible words keep the leading A and trailing B.
        out.add(from_word(w), rational(m));
    }
    return out;
}

namespace {

using parts_vec = std::vector<index_part>;

void stuffle_rec(const parts_vec& x, std::size_t i, const parts_vec& y, std::size_t j,
                 parts_vec& acc, formal_sum& out) {
    // Build from the outermost slot inward; acc holds the chosen tail reversed.
    if (i == 0 && j == 0) {
        parts_vec term(acc.rbegin(), acc.rend());
        out.add(signed_index(std::move(term)), 1);
        return;
    }
    if (i > 0) {
        acc.push_back(x[i - 1]);
        stuffle_rec(x, i - 1, y, j, acc, out);
        acc.pop_back();
    }
    if (j > 0) {
        acc.push_back(y[j - 1]);
        stuffle_rec(x, i, y, j - 1, acc, out);
        acc.pop_back();
    }
    if (i > 0 && j > 0) {
        acc.push_back(index_part{x[i - 1].exponent + y[j - 1].exponent,
                                 x[i - 1].sign * y[j - 1].sign});
        stuffle_rec(x, i - 1, y, j - 1, acc, out);
        acc.pop_back();
    }
}

}  // namespace

formal_sum stuffle(const signed_index& x, const signed_index& y) {
    if (x.starred() || y.starred())
        throw precondition_violated("stuffle is defined on unstarred indices");
    if (!x.is_admissible() || !y.is_admissible())
        throw divergent_term("stuffle requires admissible factors");
    formal_sum out;
    parts_vec acc;
    stuffle_rec(x.parts(), x.parts().size(), y.parts(), y.parts().size(), acc, out);
    return out;
}

formal_sum stuffle(const formal_sum& x, const formal_sum& y) {
    formal_sum out;
    for (const auto& [ix, cx] : x.terms())
        for (const auto& [iy, cy] : y.terms()) out.add(stuffle(ix, iy), cx * cy);
    return out;
}

formal_sum star_expand(const signed_index& idx) {
    if (!idx.starred())
        throw precondition_violated("star_expand needs a starred index: " + render(idx));
    if (!idx.is_admissible())
        throw divergent_term("star_expand of a divergent index: " + render(idx));
    const auto& parts = idx.parts();
    const int r = idx.depth();
    formal_sum out;
    // Subsets of the r-1 adjacent boundaries; a cleared boundary merges its
    // two neighbours (exponents add, signs multiply).  All 2^{r-1} resulting
    // compositions are distinct, so every coefficient stays 1.
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (r - 1)); ++mask) {
        parts_vec merged;
        merged.push_back(parts[0]);
        for (int i = 1; i < r; ++i) {
            if (mask & (std::uint64_t(1) << (i - 1))) {
                merged.back().exponent += parts[static_cast<std::size_t>(i)].exponent;
                merged.back().sign *= parts[static_cast<std::size_t>(i)].sign;
            } else {
                merged.push_back(parts[static_cast<std::size_t>(i)]);
            }
        }
        signed_index term{std::move(merged)};
        if (!term.is_admissible())
            throw divergent_term("star contraction produced a divergent index");
        out.add(term, 1);
    }
    return out;
}

reflection_identity reflection_instance(const std::vector<int>& alpha) {
    const int r = static_cast<int>(alpha.size());
    if (r < 1) throw precondition_violated("reflection needs a nonempty tuple");
    for (int a : alpha)
        if (a < 1) throw precondition_violated("reflection parts must be positive");
    if (alpha.front() < 2 || alpha.back() < 2)
        throw precondition_violated("reflection needs first and last exponent >= 2");

    auto slice = [&](int from, int to, bool reversed, bool starred) {
        std::vector<int> e(alpha.begin() + from, alpha.begin() + to);
        if (reversed) std::reverse(e.begin(), e.end());
        return signed_index::of(e, starred);
    };

    reflection_identity out;
    out.lhs.add(slice(0, r, false, false), 1);
    out.lhs.add(slice(0, r, true, true), (r % 2 == 0) ? 1 : -1);
    for (int k = 1; k <= r - 1; ++k) {
        out.rhs.push_back(product_term{(k % 2 == 1) ? rational(1) : rational(-1),
                                       slice(0, k, true, true), slice(k, r, false, false)});
    }
    return out;
}

std::pair<rational, rational> bell_harmonic(int k1, int k2, int n) {
    if (k1 < 1 || k2 < k1 || n < 0)
        throw parameter_out_of_range("bell_harmonic needs 1 <= k1 <= k2 and n >= 0");
    std::vector<rational> h(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) {
        rational s = 0;
        for (int i = k1; i <= k2; ++i) {
            rational p = 1;
            for (int t = 0; t < j; ++t) p *= i;
            s += rational(1) / p;
        }
        h[static_cast<std::size_t>(j - 1)] = s;
    }
    const rational lhs = bell_p<rational>(n, h);

    // sum over k1 <= l1 <= ... <= ln <= k2 of 1/(l1...ln), one pass per level;
    // acc[i] holds the partial sum over tuples whose top element is k1+i.
    std::vector<rational> acc(static_cast<std::size_t>(k2 - k1 + 1), rational(0));
    acc[0] = 1;
    for (int level = 0; level < n; ++level) {
        rational running = 0;
        for (int i = 0; i <= k2 - k1; ++i) {
            running += acc[static_cast<std::size_t>(i)];
            acc[static_cast<std::size_t>(i)] = running / (k1 + i);
        }
    }
    rational rhs = 0;
    for (const rational& v : acc) rhs += v;
    return {lhs, rhs};
}

}  // namespace mzv
