#include <doctest.h>

#include <random>

#include "frozen.hpp"
#include "mzv/eval.hpp"
#include "mzv/identities.hpp"

using namespace mzv;

namespace {

const evaluator ev;

real err_against(const eval_result& r, const char* reference) {
    return boost::multiprecision::abs(r.value - real(reference));
}

// Test-side oracle for depth-one values: direct summation with an
// Euler-Maclaurin tail for plain s >= 2, alternating pairing otherwise.
real naive_depth1(int s, int sign, long n = 2000) {
    real sum = 0;
    if (sign > 0) {
        for (long k = 1; k <= n; ++k) sum += real(1) / boost::multiprecision::pow(real(k), s);
        // integral tail with the first two correction terms
        const real nn(n);
        sum += boost::multiprecision::pow(nn, 1 - s) / (s - 1) -
               boost::multiprecision::pow(nn, -s) / 2 +
               s * boost::multiprecision::pow(nn, -s - 1) / 12;
    } else {
        for (long k = 1; k <= n; ++k) {
            const real t = real(1) / boost::multiprecision::pow(real(k), s);
            sum += (k % 2) ? -t : t;
        }
        // average of consecutive partial sums halves the alternating tail
        const real t = real(1) / boost::multiprecision::pow(real(n + 1), s);
        sum += ((n + 1) % 2) ? -t / 2 : t / 2;
    }
    return sum;
}

}  // namespace

TEST_CASE("depth-one values against the frozen references") {
    CHECK(err_against(ev.eval_index(signed_index::of({2}), real("1e-12")), frozen::zeta2) <
          real("1e-12"));
    CHECK(err_against(ev.eval_index(signed_index::of({-1}), real("1e-12")), frozen::zbar1) <
          real("1e-12"));
    CHECK(err_against(ev.eval_index(signed_index::of({-2}), real("1e-14")), frozen::zbar2) <
          real("1e-14"));
    CHECK(err_against(ev.eval_index(signed_index::of({-3}), real("1e-14")), frozen::zbar3) <
          real("1e-14"));
}

TEST_CASE("naive oracle agrees with the evaluator at depth one") {
    for (int s = 2; s <= 5; ++s) {
        const real direct = naive_depth1(s, +1);
        const real fast = ev.eval_index(signed_index::of({s}), real("1e-20")).value;
        CHECK(boost::multiprecision::abs(direct - fast) < real("1e-12"));
    }
    for (int s = 1; s <= 4; ++s) {
        const real direct = naive_depth1(s, -1, 400000);
        const real fast = ev.eval_index(signed_index::of({-s}), real("1e-20")).value;
        CHECK(boost::multiprecision::abs(direct - fast) < real("1e-9"));
    }
}

TEST_CASE("multi-slot values with classical reductions") {
    CHECK(err_against(ev.eval_index(signed_index::of({1, 2}), real("1e-12")), frozen::zeta3) <
          real("1e-12"));
    CHECK(err_against(ev.eval_index(signed_index::of({1, 3}), real("1e-12")), frozen::zeta13) <
          real("1e-12"));
    CHECK(err_against(ev.eval_index(signed_index::of({2, 2}), real("1e-12")), frozen::zeta22) <
          real("1e-12"));
    CHECK(err_against(ev.eval_index(signed_index::of({-1, -1}), real("1e-12")),
                      frozen::zbar1bar1) < real("1e-12"));
    CHECK(err_against(ev.eval_star(signed_index::of({2, 2}, true), real("1e-12")),
                      frozen::zstar22) < real("1e-12"));
    // zstar(1,2) = 2 zeta(3)
    const eval_result zs12 = ev.eval_star(signed_index::of({1, 2}, true), real("1e-12"));
    CHECK(boost::multiprecision::abs(zs12.value - 2 * real(frozen::zeta3)) < real("1e-12"));
}

TEST_CASE("eval_sum budgets the combined bound") {
    formal_sum s;
    s.add(signed_index::of({2, 2}), 2);
    s.add(signed_index::of({1, 3}), 4);
    const eval_result r = ev.eval_sum(s, real("1e-10"));
    CHECK(boost::multiprecision::abs(r.value - real(frozen::zeta2_sq)) < real("1e-10"));
    CHECK(r.error_bound <= real("1e-10"));

    const eval_result zero = ev.eval_sum(formal_sum{}, real("1e-10"));
    CHECK(zero.value == 0);
    CHECK(zero.error_bound == 0);

    // z(1,3) alone is zeta(4)/4
    const eval_result q = ev.eval_index(signed_index::of({1, 3}), real("1e-10"));
    CHECK(boost::multiprecision::abs(q.value - real(frozen::zeta4) / 4) < real("1e-10"));
}

TEST_CASE("xi values") {
    const real z3(frozen::zeta3);
    CHECK(boost::multiprecision::abs(ev.xi(1, 2, real("1e-12")).value - 2 * z3) <
          real("1e-11"));
    CHECK(boost::multiprecision::abs(ev.xi(2, 1, real("1e-12")).value - z3) < real("1e-11"));
    // xi_1(3) = zstar(1,1,2) = sum of its star expansion
    const eval_result direct = ev.eval_sum(
        star_expand(signed_index::of({1, 1, 2}, true)), real("1e-12"));
    CHECK(boost::multiprecision::abs(ev.xi(1, 3, real("1e-12")).value - direct.value) <
          real("1e-11"));
    CHECK_THROWS_AS(ev.xi(0, 1, real("1e-10")), parameter_out_of_range);
}

TEST_CASE("divergent and out-of-range inputs") {
    CHECK_THROWS_AS(ev.eval_index(signed_index::of({2, 1}), real("1e-10")), divergent_index);
    CHECK_THROWS_AS(ev.eval_index(signed_index::of({2}), real("1e-31")),
                    parameter_out_of_range);
    const evaluator tiny(nullptr, {backend::direct, 1000});
    CHECK_THROWS_AS(tiny.eval_index(signed_index::of({1, 2}), real("1e-12")),
                    precision_unreachable);
}

TEST_CASE("direct backend is an independent oracle for the default one") {
    const evaluator direct(nullptr, {backend::direct, 30'000'000});
    std::mt19937_64 seeds(101);
    int checked = 0;
    for (int i = 0; checked < 8 && i < 100; ++i) {
        const signed_index x = random_admissible_index(seeds(), 8, 5, /*allow_bars=*/true);
        // keep the oracle fast: need decay faster than 1/N
        if (x.parts().back().exponent < 3) continue;
        ++checked;
        const eval_result slow = direct.eval_index(x, real("1e-6"));
        const eval_result fast = ev.eval_index(x, real("1e-12"));
        CHECK(boost::multiprecision::abs(slow.value - fast.value) <=
              slow.error_bound + fast.error_bound);
    }
    CHECK(checked == 8);
    // boundary shapes near the convergence edge (last exponent 2 or an
    // alternating tail) converge like 1/N, so the oracle runs loose
    for (const auto& exps :
         {std::vector<int>{2, -1}, {1, -2}, {-1, -1, 3}, {3, -1}, {1, -1}}) {
        const signed_index x = signed_index::of(exps);
        const eval_result slow = direct.eval_index(x, real("1e-4"));
        const eval_result fast = ev.eval_index(x, real("1e-12"));
        CHECK(boost::multiprecision::abs(slow.value - fast.value) <=
              slow.error_bound + fast.error_bound);
    }
}

TEST_CASE("certification: coarse and fine evaluations agree") {
    std::mt19937_64 seeds(211);
    for (int i = 0; i < 40; ++i) {
        const signed_index x = random_admissible_index(seeds(), 8, 5, /*allow_bars=*/true);
        const eval_result coarse = ev.eval_index(x, real("1e-6"));
        const eval_result fine = ev.eval_index(x, real("1e-12"));
        CHECK(boost::multiprecision::abs(coarse.value - fine.value) < real("2e-6"));
        CHECK(coarse.error_bound <= real("1e-6"));
        CHECK(fine.error_bound <= real("1e-12"));
    }
}

TEST_CASE("duality leaves values invariant") {
    std::mt19937_64 seeds(307);
    for (int i = 0; i < 30; ++i) {
        const signed_index x = random_admissible_index(seeds(), 9, 5, /*allow_bars=*/false);
        const eval_result a = ev.eval_index(x, real("1e-11"));
        const eval_result b = ev.eval_index(dual(x), real("1e-11"));
        CHECK(boost::multiprecision::abs(a.value - b.value) <=
              a.error_bound + b.error_bound);
    }
}

TEST_CASE("evaluation is a homomorphism for shuffle and stuffle") {
    std::mt19937_64 seeds(401);
    const real tol("1e-9");
    for (int i = 0; i < 30; ++i) {
        const signed_index x = random_admissible_index(seeds(), 4, 2, /*allow_bars=*/false);
        const signed_index y = random_admissible_index(seeds(), 3, 2, /*allow_bars=*/false);
        if (x.weight() + y.weight() > 7) continue;
        const real prod =
            ev.eval_index(x, tol / 8).value * ev.eval_index(y, tol / 8).value;
        const real via_shuffle = ev.eval_sum(shuffle_indices(x, y), tol / 4).value;
        const real via_stuffle = ev.eval_sum(stuffle(x, y), tol / 4).value;
        CHECK(boost::multiprecision::abs(prod - via_shuffle) < tol);
        CHECK(boost::multiprecision::abs(prod - via_stuffle) < tol);
    }
    // signed stuffle homomorphism
    for (int i = 0; i < 15; ++i) {
        const signed_index x = random_admissible_index(seeds(), 4, 2, /*allow_bars=*/true);
        const signed_index y = random_admissible_index(seeds(), 3, 2, /*allow_bars=*/true);
        const real prod =
            ev.eval_index(x, tol / 8).value * ev.eval_index(y, tol / 8).value;
        const real via_stuffle = ev.eval_sum(stuffle(x, y), tol / 4).value;
        CHECK(boost::multiprecision::abs(prod - via_stuffle) < tol);
    }
}

TEST_CASE("tolerance tiers and monotone budgets") {
    CHECK(precision_tier(real("1e-4")) == 1);
    CHECK(precision_tier(real("1e-6")) == 1);
    CHECK(precision_tier(real("1e-10")) == 2);
    CHECK(precision_tier(real("1e-12")) == 2);
    CHECK(precision_tier(real("1e-13")) == 3);
    CHECK(precision_tier(real("1e-30")) == 5);

    real tol("1e-6");
    real last_bound = 1;
    const signed_index x = signed_index::of({1, -1, 2});
    for (int step = 0; step < 40; ++step) {
        const eval_result r = ev.eval_index(x, tol);
        CHECK(r.error_bound <= last_bound);
        last_bound = r.error_bound;
        tol /= 2;
        if (tol < real("1e-29")) break;
    }
}

TEST_CASE("eval_sum is linear within combined bounds") {
    formal_sum s, t;
    s.add(signed_index::of({2, 2}), 1);
    s.add(signed_index::of({-3}), rational(1, 3));
    t.add(signed_index::of({1, 3}), 2);
    t.add(signed_index::of({-1, 2}), -1);
    const rational a(5, 7), b(-3, 2);
    formal_sum combined;
    combined.add(s, a);
    combined.add(t, b);
    const real tol("1e-11");
    const eval_result whole = ev.eval_sum(combined, tol);
    const eval_result parts_s = ev.eval_sum(s, tol);
    const eval_result parts_t = ev.eval_sum(t, tol);
    const real recombined = to_real(a) * parts_s.value + to_real(b) * parts_t.value;
    CHECK(boost::multiprecision::abs(whole.value - recombined) <=
          whole.error_bound + 2 * (parts_s.error_bound + parts_t.error_bound) + real("1e-30"));
}

TEST_CASE("product evaluation carries a combined bound") {
    const eval_result r = ev.eval_product(signed_index::of({2}, false),
                                          signed_index::of({2}, false), real("1e-12"));
    CHECK(boost::multiprecision::abs(r.value - real(frozen::zeta2_sq)) < real("1e-12"));
    CHECK(r.error_bound <= real("1e-12"));
}
