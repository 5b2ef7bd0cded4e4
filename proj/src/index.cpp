#include "mzv/index.hpp"

#include <algorithm>
#include <cctype>

#include "mzv/rational.hpp"

namespace mzv {

signed_index::signed_index(std::vector<index_part> parts, bool starred)
    : parts_(std::move(parts)), starred_(starred) {
    if (parts_.empty()) throw parameter_out_of_range("index must have at least one part");
    for (const auto& p : parts_) {
        if (p.exponent < 1) throw parameter_out_of_range("index exponents must be >= 1");
        if (p.sign != 1 && p.sign != -1)
            throw parameter_out_of_range("index signs must be +1 or -1");
    }
}

signed_index signed_index::of(std::initializer_list<int> exponents, bool starred) {
    return of(std::vector<int>(exponents), starred);
}

signed_index signed_index::of(const std::vector<int>& exponents, bool starred) {
    std::vector<index_part> parts;
    parts.reserve(exponents.size());
    for (int e : exponents) {
        if (e == 0) throw parameter_out_of_range("index exponents must be nonzero");
        parts.push_back(e < 0 ? index_part{-e, -1} : index_part{e, +1});
    }
    return signed_index(std::move(parts), starred);
}

int signed_index::weight() const {
    int w = 0;
    for (const auto& p : parts_) w += p.exponent;
    return w;
}

int signed_index::height() const {
    int h = 0;
    for (const auto& p : parts_) h += p.exponent > 1;
    return h;
}

bool signed_index::is_unsigned() const {
    return std::all_of(parts_.begin(), parts_.end(),
                       [](const index_part& p) { return p.sign == 1; });
}

bool signed_index::is_admissible() const {
    const index_part& last = parts_.back();
    return last.exponent >= 2 || last.sign == -1;
}

classification classify(const signed_index& idx) {
    return {idx.weight(), idx.depth(), idx.height()};
}

word::word(std::vector<letter> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw parameter_out_of_range("word must be nonempty");
}

word word::from_text(const std::string& text) {
    std::vector<letter> ls;
    ls.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == 'A' || c == 'a')
            ls.push_back(letter::A);
        else if (c == 'B' || c == 'b')
            ls.push_back(letter::B);
        else
            throw parse_error(i, "word letters must be A or B");
    }
    return word(std::move(ls));
}

bool word::is_admissible() const {
    return letters_.front() == letter::A && letters_.back() == letter::B;
}

std::string word::text() const {
    std::string s;
    s.reserve(letters_.size());
    for (letter l : letters_) s.push_back(l == letter::A ? 'A' : 'B');
    return s;
}

word to_word(const signed_index& idx) {
    if (!idx.is_unsigned() || idx.starred())
        throw signed_word_unsupported(
            "word encoding is defined for unsigned, unstarred indices only: " + render(idx));
    if (!idx.is_admissible())
        throw non_admissible_word("index is not admissible: " + render(idx));
    std::vector<letter> ls;
    ls.reserve(static_cast<std::size_t>(idx.weight()));
    for (const auto& p : idx.parts()) {
        ls.push_back(letter::A);
        for (int i = 1; i < p.exponent; ++i) ls.push_back(letter::B);
    }
    return word(std::move(ls));
}

signed_index from_word(const word& w) {
    if (!w.is_admissible())
        throw non_admissible_word("word must start with A and end with B: " + w.text());
    std::vector<index_part> parts;
    for (letter l : w.letters()) {
        if (l == letter::A)
            parts.push_back(index_part{1, +1});
        else
            ++parts.back().exponent;
    }
    return signed_index(std::move(parts));
}

word dual(const word& w) {
    std::vector<letter> ls(w.letters().rbegin(), w.letters().rend());
    for (letter& l : ls) l = (l == letter::A) ? letter::B : letter::A;
    return word(std::move(ls));
}

signed_index dual(const signed_index& idx) {
    return from_word(dual(to_word(idx)));
}

void enumerate_compositions(int total, int length,
                            const std::function<void(const composition&)>& fn) {
    if (length < 1 || total < length)
        throw empty_range("no compositions of " + std::to_string(total) + " into " +
                          std::to_string(length) + " positive parts");
    composition parts(static_cast<std::size_t>(length), 1);
    parts.back() = total - length + 1;
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == length - 1) {
            parts[static_cast<std::size_t>(pos)] = remaining;
            fn(parts);
            return;
        }
        for (int v = 1; v <= remaining - (length - pos - 1); ++v) {
            parts[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, total);
}

std::vector<composition> compositions(int total, int length) {
    std::vector<composition> out;
    enumerate_compositions(total, length, [&](const composition& c) { out.push_back(c); });
    return out;
}

namespace {

class index_parser {
  public:
    explicit index_parser(const std::string& text) : text_(text) {}

    signed_index parse() {
        skip_ws();
        bool starred = false;
        expect('z', "expected 'z' or 'zs'");
        if (peek() == 's') {
            ++pos_;
            starred = true;
        }
        skip_ws();
        expect('(', "expected '('");
        std::vector<index_part> parts;
        parse_part(parts);
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            parse_part(parts);
            skip_ws();
        }
        expect(')', "expected ',' or ')'");
        skip_ws();
        if (pos_ != text_.size()) throw parse_error(pos_, "trailing characters after index");
        if (parts.empty())
            throw parse_error(pos_, "index must have at least one part");
        return signed_index(std::move(parts), starred);
    }

  private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    void expect(char c, const char* msg) {
        if (peek() != c) throw parse_error(pos_, msg);
        ++pos_;
    }

    long parse_int(bool allow_negative) {
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (allow_negative && peek() == '-') {
            negative = true;
            ++pos_;
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw parse_error(pos_, "expected an integer");
        long value = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1'000'000) throw parse_error(start, "integer too large");
            ++pos_;
        }
        return negative ? -value : value;
    }

    void parse_part(std::vector<index_part>& parts) {
        const std::size_t start = pos_;
        const long v = parse_int(/*allow_negative=*/true);
        if (v == 0) throw parse_error(start, "part exponent must be nonzero");
        long reps = 1;
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            reps = parse_int(/*allow_negative=*/false);
        }
        const index_part p = v < 0 ? index_part{static_cast<int>(-v), -1}
                                   : index_part{static_cast<int>(v), +1};
        for (long i = 0; i < reps; ++i) parts.push_back(p);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

signed_index parse_index(const std::string& text) {
    return index_parser(text).parse();
}

std::string render(const signed_index& idx) {
    std::string s = idx.starred() ? "zs(" : "z(";
    bool first = true;
    for (const auto& p : idx.parts()) {
        if (!first) s.push_back(',');
        first = false;
        if (p.sign < 0) s.push_back('-');
        s += std::to_string(p.exponent);
    }
    s.push_back(')');
    return s;
}

rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return rational(bigint(text));
        const bigint num(text.substr(0, slash));
        const bigint den(text.substr(slash + 1));
        if (den == 0) throw parse_error(slash + 1, "zero denominator");
        return rational(num, den);
    } catch (const std::runtime_error&) {
        throw parse_error(0, "malformed rational: " + text);
    }
}

}  // namespace mzv
