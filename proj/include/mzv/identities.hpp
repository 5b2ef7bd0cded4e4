#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mzv/algebra.hpp"
#include "mzv/eval.hpp"
#include "mzv/index.hpp"

namespace mzv {

// One verifiable (lhs, rhs) pair.  Sides are independent constructions:
// a linear combination of (possibly starred) indices plus optional two-factor
// products; a few suites plug in a custom evaluation instead.
struct identity_instance {
    enum class kind { numeric, exact_symbolic };

    std::string id;
    std::vector<std::pair<std::string, std::string>> params;
    kind exactness = kind::numeric;

    star_sum lhs, rhs;
    std::vector<product_term> lhs_products, rhs_products;

    // Overrides for the two special suites (bell-zeta, sec7-unknown):
    // returns (lhs, rhs) evaluations directly.
    std::function<std::pair<eval_result, eval_result>(const evaluator&, const real&)> custom;
    // Override for exact checks that are not formal-sum comparisons
    // (bell-harmonic): returns pass and fills printable side values.
    std::function<bool(std::string& lhs_text, std::string& rhs_text)> exact_check;

    std::string param_text() const;
};

// --- named quantities ------------------------------------------------------

// W_alpha(a,b,c) = 2^{sigma(a+b+1)-sigma(a)-(b+1)} (1 - 2^{1-alpha_{a+b+1}}),
// sigma(r) = alpha_0 + ... + alpha_r.  Nonnegative dyadic; zero exactly when
// alpha_{a+b+1} = 1.  c only participates in the range check.
rational weight_w(const composition& alpha, int a, int b, int c);

formal_sum z_minus(int m);             // sum_{a+b=m} (-1)^b z({1}^a, b+2)
formal_sum z_star_plus(int n);         // sum_{c+d=n} zstar({1}^c, d+2), stars expanded
formal_sum z_minus_closed(int m);      // 0 for odd m, 2(1-2^{-(m+1)}) z(m+2) for even
formal_sum z_star_plus_closed(int n);  // 2(n+1)(1-2^{-(n+1)}) z(n+2)

// The six simplex restrictions of the convolution integral, as explicit sums.
formal_sum j_part(int j, int p);
formal_sum j_total_closed(int p);
formal_sum j1_closed(int p);
formal_sum j2_closed(int p);

// sum over two-part compositions of n+3 of
// (2^{alpha2-1}-1) { zstar(alpha1, {1}^m, alpha2+1) - z(m+n+4) }.
star_sum t_mn(int m, int n);

// sum over two-part compositions of n+3 of 2^{alpha2} zstar(alpha1,{1}^m,alpha2+1).
star_sum unknown_weighted_sum(int m, int n);

// --- identity pairs --------------------------------------------------------

identity_instance main_theorem(int p);
identity_instance main_theorem_symbolic(int p);
std::vector<identity_instance> j_decomposition(int p);  // (i), (ii), (iii)
identity_instance j1_closed_pair(int p);
identity_instance j1_star_pair(int p);
identity_instance j2_closed_pair(int p);
identity_instance j2_jp_pair(int p);
identity_instance granville_pair(int q, int r);
identity_instance le_murakami_pair(int w);
std::vector<identity_instance> prop22_pairs(int m);  // even/star/eta forms + odd cases
identity_instance ohno_zstar_pair(int w);
identity_instance zeta_star_3_2n_pair(int n);
identity_instance star_double_sum_pair(int p);
identity_instance sec6_pair(int p);
identity_instance sec6_star_height1(int m);
std::vector<identity_instance> sec6_dual_route(int p);
identity_instance sec7_t_pair(int p);
identity_instance star_height1_dual_sum(int m, int n);
identity_instance sec7_unknown_probe(int m, int n);
identity_instance euler_family(int p, int q, const rational& lambda);
std::vector<identity_instance> euler_specials(const std::string& name, int p);
identity_instance reflection_pair(const std::vector<int>& alpha);
identity_instance bell_harmonic_pair(int k1, int k2, int n);
std::vector<identity_instance> bell_zeta_pairs(int n);

const std::vector<std::string>& euler_special_names();

// --- registry ---------------------------------------------------------------

struct suite_params {
    std::optional<int> p_max;
    std::optional<int> q_max;
    std::optional<int> w_max;
    std::vector<rational> lambdas;  // empty = default {0, 1, -1, -2, 3/2}
    std::uint64_t seed = 20220326;
};

struct suite_def {
    std::string id;
    std::string description;
    std::function<std::vector<identity_instance>(const suite_params&)> make;
};

const std::vector<suite_def>& identity_registry();
const suite_def* find_suite(const std::string& id);

// Deterministic admissible index sampling for property tests and the
// reflection suite.
signed_index random_admissible_index(std::uint64_t seed, int max_weight, int max_depth,
                                     bool allow_bars);

}  // namespace mzv
