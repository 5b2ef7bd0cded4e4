#include <doctest.h>

#include <random>

#include "mzv/algebra.hpp"
#include "mzv/identities.hpp"

using namespace mzv;

namespace {

word w(const char* text) { return word::from_text(text); }

}  // namespace

TEST_CASE("shuffle small cases") {
    word_sum ab_ab = shuffle(w("AB"), w("AB"));
    CHECK(ab_ab.terms().size() == 2);
    CHECK(ab_ab.terms().at(w("ABAB")) == 2);
    CHECK(ab_ab.terms().at(w("AABB")) == 4);

    word_sum ab_b = shuffle(w("AB"), w("B"));
    CHECK(ab_b.terms().at(w("BAB")) == 1);
    CHECK(ab_b.terms().at(w("ABB")) == 2);

    CHECK(shuffle(w("A"), w("A")).total_multiplicity() == 2);
}

TEST_CASE("shuffle multiplicity law, exhaustive to length 8") {
    for (int n1 = 1; n1 <= 7; ++n1)
        for (int n2 = 1; n1 + n2 <= 8; ++n2)
            for (unsigned bits1 = 0; bits1 < (1u << n1); ++bits1)
                for (unsigned bits2 = 0; bits2 < (1u << n2); ++bits2) {
                    std::vector<letter> l1, l2;
                    for (int i = 0; i < n1; ++i)
                        l1.push_back(bits1 & (1u << i) ? letter::A : letter::B);
                    for (int i = 0; i < n2; ++i)
                        l2.push_back(bits2 & (1u << i) ? letter::A : letter::B);
                    const word_sum s = shuffle(word(l1), word(l2));
                    CHECK(s.total_multiplicity() == binomial(n1 + n2, n1));
                    for (const auto& [res, mult] : s.terms())
                        CHECK(res.length() == n1 + n2);
                }
}

TEST_CASE("shuffle as indices") {
    const formal_sum s = shuffle_indices(signed_index::of({2}), signed_index::of({2}));
    CHECK(s.str() == "2*z(2,2) + 4*z(1,3)");
    CHECK(shuffle_indices(signed_index::of({2}), signed_index::of({3})).size() == 3);
}

TEST_CASE("stuffle reproduces the depth-one alternating relation") {
    for (int r = 1; r <= 4; ++r)
        for (int s = 1; s <= 4; ++s) {
            const formal_sum prod =
                stuffle(signed_index::of({-r}), signed_index::of({-s}));
            formal_sum expect;
            expect.add(signed_index::of({-r, -s}), 1);
            expect.add(signed_index::of({-s, -r}), 1);
            expect.add(signed_index::of({r + s}), 1);
            CHECK(prod == expect);
        }
}

TEST_CASE("stuffle plain examples") {
    formal_sum z22;
    z22.add(signed_index::of({2, 2}), 2);
    z22.add(signed_index::of({4}), 1);
    CHECK(stuffle(signed_index::of({2}), signed_index::of({2})) == z22);

    formal_sum z23;
    z23.add(signed_index::of({2, 3}), 1);
    z23.add(signed_index::of({3, 2}), 1);
    z23.add(signed_index::of({5}), 1);
    CHECK(stuffle(signed_index::of({2}), signed_index::of({3})) == z23);

    CHECK_THROWS_AS(stuffle(signed_index::of({2, 1}), signed_index::of({2})),
                    divergent_term);
}

TEST_CASE("stuffle and shuffle are commutative; both associate") {
    std::mt19937_64 seeds(23);
    for (int i = 0; i < 30; ++i) {
        const auto x = random_admissible_index(seeds(), 6, 3, true);
        const auto y = random_admissible_index(seeds(), 6, 3, true);
        const auto z = random_admissible_index(seeds(), 5, 2, true);
        CHECK(stuffle(x, y) == stuffle(y, x));
        CHECK(stuffle(stuffle(x, y), formal_sum(z)) ==
              stuffle(formal_sum(x), stuffle(y, z)));
    }
    const auto lift = [](const formal_sum& s, const formal_sum& t) {
        formal_sum out;
        for (const auto& [ix, cx] : s.terms())
            for (const auto& [iy, cy] : t.terms())
                out.add(shuffle_indices(ix, iy), cx * cy);
        return out;
    };
    for (int i = 0; i < 30; ++i) {
        const auto x = random_admissible_index(seeds(), 5, 3, false);
        const auto y = random_admissible_index(seeds(), 4, 2, false);
        const auto z = random_admissible_index(seeds(), 3, 2, false);
        CHECK(shuffle_indices(x, y) == shuffle_indices(y, x));
        CHECK(lift(shuffle_indices(x, y), formal_sum(z)) ==
              lift(formal_sum(x), shuffle_indices(y, z)));
    }
}

TEST_CASE("star expansion") {
    formal_sum e23;
    e23.add(signed_index::of({2, 3}), 1);
    e23.add(signed_index::of({5}), 1);
    CHECK(star_expand(signed_index::of({2, 3}, true)) == e23);

    formal_sum e12;
    e12.add(signed_index::of({1, 2}), 1);
    e12.add(signed_index::of({3}), 1);
    CHECK(star_expand(signed_index::of({1, 2}, true)) == e12);

    CHECK(star_expand(signed_index::of({2, 2}, true)).str() == "z(2,2) + z(4)");
    CHECK_THROWS_AS(star_expand(signed_index::of({2, 2})), precondition_violated);
}

TEST_CASE("star expansion yields 2^{depth-1} unit-coefficient terms") {
    std::mt19937_64 seeds(37);
    for (int i = 0; i < 50; ++i) {
        const auto base = random_admissible_index(seeds(), 11, 7, true);
        const formal_sum s = star_expand(base.with_star(true));
        CHECK(s.size() == (std::size_t{1} << (base.depth() - 1)));
        for (const auto& [idx, c] : s.terms()) CHECK(c == 1);
    }
}

TEST_CASE("reflection identity, exact for depth two") {
    // z(2,2) + zstar(2,2) = z(2) z(2); both sides expand to the same sum.
    const reflection_identity r22 = reflection_instance({2, 2});
    formal_sum lhs = expand_stars(r22.lhs);
    formal_sum rhs;
    for (const auto& pt : r22.rhs) {
        REQUIRE(pt.right.is_admissible());
        rhs.add(stuffle(expand_stars(star_sum(pt.left, 1)), formal_sum(pt.right)), pt.coef);
    }
    CHECK(lhs == rhs);

    const reflection_identity r23 = reflection_instance({2, 3});
    formal_sum lhs23 = expand_stars(r23.lhs);
    formal_sum rhs23;
    for (const auto& pt : r23.rhs)
        rhs23.add(stuffle(expand_stars(star_sum(pt.left, 1)), formal_sum(pt.right)), pt.coef);
    CHECK(lhs23 == rhs23);

    CHECK_THROWS_AS(reflection_instance({1, 2}), precondition_violated);
    CHECK_THROWS_AS(reflection_instance({2, 1}), precondition_violated);
}

TEST_CASE("modified Bell polynomials") {
    using R = rational;
    const std::vector<R> xs{R(2), R(3), R(5)};
    CHECK(bell_p<R>(0, xs) == 1);
    CHECK(bell_p<R>(1, xs) == 2);
    // P2 = (x1^2 + x2)/2, P3 = (x1^3 + 3 x1 x2 + 2 x3)/6
    CHECK(bell_p<R>(2, xs) == R(7, 2));
    CHECK(bell_p<R>(3, xs) == R(8 + 18 + 10, 6));
    CHECK_THROWS_AS(bell_p<R>(4, xs), parameter_out_of_range);

    // Cross-check the recurrence against the explicit multinomial sum
    // over k1 + 2 k2 + 3 k3 = 3: x1^3/3! + (x1/1)(x2/2) + x3/3.
    const R direct = R(2 * 2 * 2, 6) + R(2) * R(3, 2) + R(5, 3);
    CHECK(bell_p<R>(3, xs) == direct);
}

TEST_CASE("bell_harmonic identity, exact rationals") {
    auto [l1, r1] = bell_harmonic(1, 1, 3);
    CHECK(l1 == 1);
    CHECK(r1 == 1);
    auto [l2, r2] = bell_harmonic(1, 2, 2);
    CHECK(l2 == rational(7, 4));
    CHECK(r2 == rational(7, 4));
    auto [l3, r3] = bell_harmonic(2, 3, 1);
    CHECK(l3 == rational(5, 6));
    CHECK(r3 == rational(5, 6));
    for (int k1 = 1; k1 <= 8; ++k1)
        for (int k2 = k1; k2 <= 8; ++k2)
            for (int n = 0; n <= 5; ++n) {
                auto [lhs, rhs] = bell_harmonic(k1, k2, n);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("formal sum rendering and arithmetic") {
    formal_sum s;
    CHECK(s.str() == "0");
    s.add(signed_index::of({1, 3}), rational(1, 2));
    s.add(signed_index::of({2, 2}), 2);
    CHECK(s.str() == "2*z(2,2) + 1/2*z(1,3)");
    s.add(signed_index::of({2, 2}), -2);
    CHECK(s.size() == 1);
    CHECK_THROWS_AS(s.add(signed_index::of({2, 1}), 1), divergent_term);
    formal_sum star_reject;
    CHECK_THROWS_AS(star_reject.add(signed_index::of({2, 2}, true), 1), divergent_term);

    star_sum mixed;
    mixed.add(signed_index::of({2, 2}, true), 1);
    CHECK(expand_stars(mixed).str() == "z(2,2) + z(4)");
}

TEST_CASE("sum expression parsing") {
    const star_sum s = parse_sum("2*z(2,2) + 4*z(1,3)");
    CHECK(s.size() == 2);
    CHECK(s.coefficient(signed_index::of({1, 3})) == 4);
    const star_sum neg = parse_sum("-z(3) + 1/2*zs(1,2)");
    CHECK(neg.coefficient(signed_index::of({3})) == -1);
    CHECK(neg.coefficient(signed_index::of({1, 2}, true)) == rational(1, 2));
    CHECK_THROWS_AS(parse_sum("z(2) ++ z(3)"), parse_error);
    CHECK_THROWS_AS(parse_sum("2 z(2)"), parse_error);
    CHECK_THROWS_AS(parse_sum("z(2,1)"), divergent_index);
}
