#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mzv/errors.hpp"

namespace mzv {

// One slot of a (possibly alternating) index: exponent >= 1, sign in {+1,-1}.
// sign == -1 is the "bar": a (-1)^k factor on that slot of the nested series.
struct index_part {
    int exponent = 1;
    int sign = +1;

    friend auto operator<=>(const index_part&, const index_part&) = default;
};

// A composition with per-part sign flags plus a star flag; the universal
// argument of z / z-bar / z-star.  Immutable after construction.
class signed_index {
  public:
    signed_index(std::vector<index_part> parts, bool starred = false);

    // Convenience: negative entries are barred parts, e.g. {1,-2} ~ z(1,-2).
    static signed_index of(std::initializer_list<int> exponents, bool starred = false);
    static signed_index of(const std::vector<int>& exponents, bool starred = false);

    const std::vector<index_part>& parts() const { return parts_; }
    bool starred() const { return starred_; }
    int depth() const { return static_cast<int>(parts_.size()); }
    int weight() const;
    int height() const;
    bool is_unsigned() const;

    // Convergence of the defining nested series: last exponent >= 2, or the
    // last slot alternating.
    bool is_admissible() const;

    signed_index with_star(bool starred) const { return signed_index(parts_, starred); }

    friend auto operator<=>(const signed_index& a, const signed_index& b) {
        if (auto c = a.parts_ <=> b.parts_; c != 0) return c;
        return a.starred_ <=> b.starred_;
    }
    friend bool operator==(const signed_index&, const signed_index&) = default;

  private:
    std::vector<index_part> parts_;
    bool starred_;
};

struct classification {
    int weight = 0;
    int depth = 0;
    int height = 0;
    friend bool operator==(const classification&, const classification&) = default;
};

classification classify(const signed_index& idx);

// Two-letter encoding of the iterated integral: A ~ dt/(1-t), B ~ dt/t.
enum class letter : std::uint8_t { A, B };

class word {
  public:
    explicit word(std::vector<letter> letters);
    static word from_text(const std::string& text);  // e.g. "ABBBB"

    const std::vector<letter>& letters() const { return letters_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool is_admissible() const;  // starts with A, ends with B
    std::string text() const;

    friend auto operator<=>(const word&, const word&) = default;

  private:
    std::vector<letter> letters_;
};

// A B^{a1-1} A B^{a2-1} ... ; length equals the weight.  Rejects barred or
// starred input (the two-letter calculus covers unsigned values only).
word to_word(const signed_index& idx);
signed_index from_word(const word& w);

// Reverse the word and exchange A/B; an involution preserving weight.
signed_index dual(const signed_index& idx);
word dual(const word& w);

// Compositions of `total` into `length` positive parts, lexicographic order,
// C(total-1, length-1) of them.
using composition = std::vector<int>;
void enumerate_compositions(int total, int length,
                            const std::function<void(const composition&)>& fn);
std::vector<composition> compositions(int total, int length);

// Text grammar:  index := ("z"|"zs") "(" part ("," part)* ")"
//                part  := int | int "^" uint     (negative int = barred part)
signed_index parse_index(const std::string& text);
std::string render(const signed_index& idx);

}  // namespace mzv
