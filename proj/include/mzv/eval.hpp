#pragma once

#include <cstdint>
#include <optional>

#include "mzv/algebra.hpp"
#include "mzv/index.hpp"
#include "mzv/real.hpp"

namespace mzv {

class value_cache;

// A certified evaluation: |value - true value| <= error_bound, and
// error_bound <= the requested tolerance on success.
struct eval_result {
    real value = 0;
    real error_bound = 0;
    bool cache_hit = false;
};

enum class backend {
    // Splits the iterated integral at 1/2; every admissible signed index
    // becomes a short geometrically convergent double series.  Default.
    holder,
    // Truncated nested partial sums S_j(k) with integral/alternating-pair
    // tail bounds.  Slow near the convergence boundary; kept as the
    // independent oracle.
    direct,
};

struct eval_options {
    backend method = backend::holder;
    std::int64_t direct_max_terms = 20'000'000;
};

// Tolerances are quantized to powers of 10^-6 for the cache.
int precision_tier(const real& tol);
real tier_tolerance(int tier);

class evaluator {
  public:
    explicit evaluator(value_cache* cache = nullptr, eval_options opts = {});

    // Certified value of an admissible index; starred indices go through
    // star_expand.  Throws divergent_index / precision_unreachable.
    eval_result eval_index(const signed_index& idx, const real& tol) const;
    eval_result eval_star(const signed_index& idx, const real& tol) const;

    // sum c_i * eval(term_i) with the per-term tolerance budgeted so the
    // combined bound stays within tol.  The empty sum is 0 +- 0.
    eval_result eval_sum(const formal_sum& s, const real& tol) const;
    eval_result eval_sum(const star_sum& s, const real& tol) const;

    // eval(a) * eval(b) with a propagated product bound.
    eval_result eval_product(const signed_index& a, const signed_index& b,
                             const real& tol) const;

    // xi_k(s) = zstar({1}^{s-1}, k+1).
    eval_result xi(int k, int s, const real& tol) const;

    const eval_options& options() const { return opts_; }
    value_cache* cache() const { return cache_; }

  private:
    eval_result eval_plain(const signed_index& idx, const real& tol) const;

    value_cache* cache_;
    eval_options opts_;
};

}  // namespace mzv
