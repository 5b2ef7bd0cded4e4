#include "mzv/eval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mzv/cache.hpp"

namespace mzv {

namespace {

const real k_eps_per_op("1e-47");

real log_upper(long n) {  // upper bound for ln(n), n >= 1
    return boost::multiprecision::log(real(n)) + real("1e-45");
}

real pow2_real(long k) {
    return boost::multiprecision::ldexp(real(1), static_cast<int>(k));
}

real factorial_real(int n) {
    real f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// ---------------------------------------------------------------------------
// Hoelder-convolution backend.
//
// An admissible signed index maps to a word over forms dt/t (pole 0) and
// dt/(c - t) (pole c in {+1,-1}); the value is the iterated integral of the
// word over 0 < t_1 < ... < t_n < 1.  Splitting the simplex at 1/2 turns the
// value into a sum over cut positions of products of two truncated integrals,
// and each truncated integral is a nested series in powers of 1/2:
//
//   Z(P) = sum_{k1<...<kr} prod_{j<r} (g_{j+1}/g_j)^{k_j} (1/(2 g_r))^{k_r}
//          / prod k_j^{e_j}
//
// for the pole word P = [(g_1,e_1)..(g_r,e_r)].  The upper piece is reflected
// by t -> 1-t, which maps poles 0 -> 1, 1 -> 0, -1 -> 2 and contributes a
// factor (-1) per pole -1 letter.
// ---------------------------------------------------------------------------

struct pole_part {
    int pole;  // in {1, -1, 2}
    int exponent;
};

struct series_result {
    real value = 1;
    real bound = 0;      // truncation + roundoff
    real abs_total = 1;  // upper bound for sum of |terms|
};

// Tail of Z(P) past k_r = N:  |slice(m)| <= 2^-m H_{m-1}^{r-1} / (r-1)!.
real z_tail_bound(int rho, long n) {
    const real l = 1 + log_upper(n + 1);
    return 2 * boost::multiprecision::pow(l, rho - 1) * pow2_real(-n) /
           factorial_real(rho - 1);
}

series_result z_half_series(const std::vector<pole_part>& parts, const real& tol) {
    const int rho = static_cast<int>(parts.size());
    if (rho == 0) return {};

    long n = std::max<long>({4L * rho, 16L, 8});
    while (z_tail_bound(rho, n) > tol / 2) n += 8;

    int max_e = 1;
    for (const auto& p : parts) max_e = std::max(max_e, p.exponent);

    std::vector<real> ratio(static_cast<std::size_t>(rho));
    for (int j = 0; j + 1 < rho; ++j)
        ratio[static_cast<std::size_t>(j)] =
            real(parts[static_cast<std::size_t>(j) + 1].pole) /
            parts[static_cast<std::size_t>(j)].pole;
    ratio[static_cast<std::size_t>(rho) - 1] =
        real(1) / (2 * parts[static_cast<std::size_t>(rho) - 1].pole);

    std::vector<real> s(static_cast<std::size_t>(rho) + 1, real(0));
    std::vector<real> a(static_cast<std::size_t>(rho) + 1, real(0));
    s[0] = a[0] = 1;
    std::vector<real> rpow(static_cast<std::size_t>(rho), real(1));
    std::vector<real> apow(static_cast<std::size_t>(rho), real(1));
    std::vector<real> inv_pow(static_cast<std::size_t>(max_e) + 1);

    for (long k = 1; k <= n; ++k) {
        const real invk = real(1) / k;
        inv_pow[0] = 1;
        for (int e = 1; e <= max_e; ++e)
            inv_pow[static_cast<std::size_t>(e)] =
                inv_pow[static_cast<std::size_t>(e) - 1] * invk;
        for (int j = rho; j >= 1; --j) {
            const auto ji = static_cast<std::size_t>(j - 1);
            rpow[ji] *= ratio[ji];
            apow[ji] *= boost::multiprecision::abs(ratio[ji]);
            const real f = inv_pow[static_cast<std::size_t>(parts[ji].exponent)];
            s[static_cast<std::size_t>(j)] += s[static_cast<std::size_t>(j) - 1] * rpow[ji] * f;
            a[static_cast<std::size_t>(j)] += a[static_cast<std::size_t>(j) - 1] * apow[ji] * f;
        }
    }

    const real tail = z_tail_bound(rho, n);
    const real roundoff =
        real(16 * n * rho + 16) * k_eps_per_op * (a[static_cast<std::size_t>(rho)] + 1);
    series_result out;
    out.value = s[static_cast<std::size_t>(rho)];
    out.bound = tail + roundoff;
    out.abs_total = a[static_cast<std::size_t>(rho)] + tail;
    return out;
}

std::vector<int> pole_letters(const signed_index& idx) {
    const auto& parts = idx.parts();
    const int r = idx.depth();
    std::vector<int> suffix(static_cast<std::size_t>(r) + 1, 1);
    for (int j = r - 1; j >= 0; --j)
        suffix[static_cast<std::size_t>(j)] =
            parts[static_cast<std::size_t>(j)].sign * suffix[static_cast<std::size_t>(j) + 1];
    std::vector<int> letters;
    letters.reserve(static_cast<std::size_t>(idx.weight()));
    for (int j = 0; j < r; ++j) {
        letters.push_back(suffix[static_cast<std::size_t>(j)]);
        for (int i = 1; i < parts[static_cast<std::size_t>(j)].exponent; ++i)
            letters.push_back(0);
    }
    return letters;
}

std::vector<pole_part> group_letters(const int* first, const int* last) {
    std::vector<pole_part> out;
    for (const int* p = first; p != last; ++p) {
        if (*p != 0)
            out.push_back({*p, 1});
        else
            ++out.back().exponent;  // a leading zero letter cannot occur here
    }
    return out;
}

std::vector<pole_part> reflect_letters(const int* first, const int* last) {
    std::vector<int> mapped;
    mapped.reserve(static_cast<std::size_t>(last - first));
    for (const int* p = last; p != first;) {
        --p;
        mapped.push_back(*p == 0 ? 1 : (*p == 1 ? 0 : 2));
    }
    return mapped.empty() ? std::vector<pole_part>{}
                          : group_letters(mapped.data(), mapped.data() + mapped.size());
}

eval_result holder_eval(const signed_index& idx, const real& tol) {
    const std::vector<int> letters = pole_letters(idx);
    const int n = static_cast<int>(letters.size());
    const real tol_word = tol / (8 * (n + 1));

    real value = 0, err = 0, abs_acc = 0;
    for (int cut = 0; cut <= n; ++cut) {
        const series_result zu =
            z_half_series(group_letters(letters.data(), letters.data() + cut), tol_word);
        const series_result zv =
            z_half_series(reflect_letters(letters.data() + cut, letters.data() + n), tol_word);
        int neg = 0;
        for (int i = cut; i < n; ++i) neg += letters[static_cast<std::size_t>(i)] == -1;
        const real sign = (neg % 2) ? -1 : 1;
        value += sign * zu.value * zv.value;
        err += zu.abs_total * zv.bound + zu.bound * zv.abs_total + zu.bound * zv.bound;
        abs_acc += zu.abs_total * zv.abs_total;
    }
    err += real(8 * (n + 1)) * k_eps_per_op * (abs_acc + 1);
    return {value, err, false};
}

// ---------------------------------------------------------------------------
// Direct backend: S_j(k) = S_j(k-1) + S_{j-1}(k-1) sigma_j^k / k^{e_j}.
// Tail bounds: integral comparison for last exponent >= 2, consecutive-term
// pairing when the last slot is alternating with exponent 1.
// ---------------------------------------------------------------------------

// int_N^inf (ln x)^k x^-s dx, s >= 2.
real int_logpow(int k, int s, const real& n) {
    const real npow = boost::multiprecision::pow(n, 1 - s);
    const real logn = boost::multiprecision::log(n) + real("1e-45");
    real acc = npow / (s - 1);  // k = 0
    for (int i = 1; i <= k; ++i)
        acc = (npow * boost::multiprecision::pow(logn, i) + i * acc) / (s - 1);
    return acc;
}

// int_N^inf (1+ln x)^j x^-s dx, s >= 2.
real int_one_plus_logpow(int j, int s, const real& n) {
    real acc = 0;
    for (int i = 0; i <= j; ++i)
        acc += to_real(rational(binomial(j, i))) * int_logpow(i, s, n);
    return acc;
}

real direct_tail_bound(const signed_index& idx, long n) {
    const int r = idx.depth();
    const auto& parts = idx.parts();
    const int last_e = parts.back().exponent;
    const real nn(n);
    if (last_e >= 2)
        return int_one_plus_logpow(r - 1, last_e, nn) / factorial_real(r - 1);
    // Alternating slot with exponent 1: |sum_{m>N} (-1)^m a_m / m| is at most
    // sum of consecutive differences of a_m / m.
    if (r == 1) return real(1) / n;
    const int prev_e = parts[static_cast<std::size_t>(r) - 2].exponent;
    return int_one_plus_logpow(r - 1, 2, nn) / factorial_real(r - 1) +
           int_one_plus_logpow(r - 2, prev_e + 1, nn) / factorial_real(r - 2);
}

long direct_min_n(const signed_index& idx) {
    const int r = idx.depth();
    const int last_e = std::max(idx.parts().back().exponent, 1);
    // Keep (1+ln x)^j x^-s decreasing past N for every bound in play.
    const double need = std::exp(static_cast<double>(r) / std::max(2, last_e));
    return std::max<long>(16, static_cast<long>(std::ceil(need)) + 1);
}

eval_result direct_eval(const signed_index& idx, const real& tol, std::int64_t max_terms) {
    const long n_min = direct_min_n(idx);
    long lo = n_min, hi = n_min;
    while (direct_tail_bound(idx, hi) > tol / 2) {
        if (hi >= max_terms)
            throw precision_unreachable("direct summation of " + render(idx) + " needs more than " +
                                        std::to_string(max_terms) + " terms for tolerance " +
                                        to_decimal(tol, 3));
        lo = hi;
        hi = std::min<long>(max_terms, hi * 2);
    }
    while (lo < hi) {  // smallest N with tail <= tol/2
        const long mid = lo + (hi - lo) / 2;
        if (direct_tail_bound(idx, mid) <= tol / 2)
            hi = mid;
        else
            lo = mid + 1;
    }
    const long n = hi;

    const int r = idx.depth();
    const auto& parts = idx.parts();
    std::vector<real> s(static_cast<std::size_t>(r) + 1, real(0));
    std::vector<real> a(static_cast<std::size_t>(r) + 1, real(0));
    s[0] = a[0] = 1;
    std::vector<int> sign_pow(static_cast<std::size_t>(r), 1);
    int max_e = 1;
    for (const auto& p : parts) max_e = std::max(max_e, p.exponent);
    std::vector<real> inv_pow(static_cast<std::size_t>(max_e) + 1);

    for (long k = 1; k <= n; ++k) {
        const real invk = real(1) / k;
        inv_pow[0] = 1;
        for (int e = 1; e <= max_e; ++e)
            inv_pow[static_cast<std::size_t>(e)] =
                inv_pow[static_cast<std::size_t>(e) - 1] * invk;
        for (int j = r; j >= 1; --j) {
            const auto ji = static_cast<std::size_t>(j - 1);
            sign_pow[ji] *= parts[ji].sign;
            const real f = inv_pow[static_cast<std::size_t>(parts[ji].exponent)];
            const real t = s[static_cast<std::size_t>(j) - 1] * f;
            s[static_cast<std::size_t>(j)] += sign_pow[ji] > 0 ? t : -t;
            a[static_cast<std::size_t>(j)] += a[static_cast<std::size_t>(j) - 1] * f;
        }
    }

    const real tail = direct_tail_bound(idx, n);
    const real roundoff =
        real(12 * n * r + 16) * k_eps_per_op * (a[static_cast<std::size_t>(r)] + 1);
    return {s[static_cast<std::size_t>(r)], tail + roundoff, false};
}

}  // namespace

// ---------------------------------------------------------------------------

int precision_tier(const real& tol) {
    if (!(tol > 0) || tol < real("1e-30"))
        throw parameter_out_of_range("tolerance must lie in [1e-30, 1)");
    if (tol >= 1) throw parameter_out_of_range("tolerance must be < 1");
    const double digits = -static_cast<double>(boost::multiprecision::log10(tol));
    const int tier = static_cast<int>(std::ceil(digits / 6.0 - 1e-9));
    return std::clamp(tier, 1, 5);
}

real tier_tolerance(int tier) {
    return boost::multiprecision::pow(real(10), -6 * tier);
}

real to_real(const rational& q) {
    return real(boost::multiprecision::numerator(q)) /
           real(boost::multiprecision::denominator(q));
}

std::string to_decimal(const real& v, unsigned digits) {
    return v.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

evaluator::evaluator(value_cache* cache, eval_options opts) : cache_(cache), opts_(opts) {}

eval_result evaluator::eval_plain(const signed_index& idx, const real& tol) const {
    // Tolerances quantize to cache tiers only when a cache is attached;
    // the quantized tolerance is never looser than the request.
    const int tier = precision_tier(tol);
    const real ttol = cache_ ? tier_tolerance(tier) : tol;
    const std::string key = render(idx);
    if (cache_) {
        if (auto hit = cache_->lookup(key, tier))
            return {real(hit->value), real(hit->err), true};
    }
    eval_result r = opts_.method == backend::direct
                        ? direct_eval(idx, ttol, opts_.direct_max_terms)
                        : holder_eval(idx, ttol);
    if (r.error_bound > ttol)
        throw precision_unreachable("could not certify " + key + " to " + to_decimal(ttol, 3));
    if (cache_) {
        const real stored_err =
            r.error_bound * (1 + real("1e-6")) + boost::multiprecision::abs(r.value) * real("1e-38") +
            real("1e-38");
        if (stored_err <= ttol) {
            cache_->store(key, tier, to_decimal(r.value, 42), to_decimal(stored_err, 8));
            // Serve the stored form so later cache hits see the identical result.
            if (auto stored = cache_->lookup(key, tier))
                return {real(stored->value), real(stored->err), false};
        }
    }
    return r;
}

eval_result evaluator::eval_index(const signed_index& idx, const real& tol) const {
    if (!idx.is_admissible())
        throw divergent_index("divergent index: " + render(idx));
    if (idx.starred()) return eval_star(idx, tol);
    return eval_plain(idx, tol);
}

eval_result evaluator::eval_star(const signed_index& idx, const real& tol) const {
    if (!idx.starred()) return eval_index(idx, tol);
    if (!idx.is_admissible())
        throw divergent_index("divergent index: " + render(idx));
    const int tier = precision_tier(tol);
    const real ttol = cache_ ? tier_tolerance(tier) : tol;
    const std::string key = render(idx);
    if (cache_) {
        if (auto hit = cache_->lookup(key, tier))
            return {real(hit->value), real(hit->err), true};
    }
    eval_result r = eval_sum(star_expand(idx), ttol);
    if (cache_) {
        const real stored_err =
            r.error_bound * (1 + real("1e-6")) + boost::multiprecision::abs(r.value) * real("1e-38") +
            real("1e-38");
        if (stored_err <= ttol) {
            cache_->store(key, tier, to_decimal(r.value, 42), to_decimal(stored_err, 8));
            if (auto stored = cache_->lookup(key, tier))
                return {real(stored->value), real(stored->err), false};
        }
    }
    return r;
}

namespace {

template <typename Terms>
eval_result eval_linear(const evaluator& ev, const Terms& terms, const real& tol) {
    const std::size_t count = terms.size();
    if (count == 0) return {real(0), real(0), false};
    real value = 0, err = 0, scale = 0;
    for (const auto& [idx, coef] : terms) {
        const real c = to_real(coef);
        const real ac = boost::multiprecision::abs(c) * (1 + real("1e-45"));
        const real sub = tol / (real(count) * std::max(real(1), ac));
        const eval_result r =
            idx.starred() ? ev.eval_star(idx, sub) : ev.eval_index(idx, sub);
        value += c * r.value;
        err += ac * r.error_bound;
        scale += ac * (boost::multiprecision::abs(r.value) + 1);
    }
    err += real(8 * count + 8) * k_eps_per_op * (scale + 1);
    return {value, err, false};
}

}  // namespace

eval_result evaluator::eval_sum(const formal_sum& s, const real& tol) const {
    return eval_linear(*this, s.terms(), tol);
}

eval_result evaluator::eval_sum(const star_sum& s, const real& tol) const {
    return eval_linear(*this, s.terms(), tol);
}

eval_result evaluator::eval_product(const signed_index& a, const signed_index& b,
                                    const real& tol) const {
    auto once = [&](const real& sub) {
        const eval_result ra = a.starred() ? eval_star(a, sub) : eval_index(a, sub);
        const eval_result rb = b.starred() ? eval_star(b, sub) : eval_index(b, sub);
        eval_result out;
        out.value = ra.value * rb.value;
        out.error_bound = boost::multiprecision::abs(ra.value) * rb.error_bound +
                          boost::multiprecision::abs(rb.value) * ra.error_bound +
                          ra.error_bound * rb.error_bound +
                          8 * k_eps_per_op * (boost::multiprecision::abs(out.value) + 1);
        return out;
    };
    eval_result r = once(tol / 8);
    if (r.error_bound > tol) {
        const real scale = boost::multiprecision::abs(r.value) + 4;
        r = once(tol / (8 * scale));
    }
    return r;
}

eval_result evaluator::xi(int k, int s, const real& tol) const {
    if (k < 1 || s < 1) throw parameter_out_of_range("xi needs k >= 1 and s >= 1");
    std::vector<int> exps(static_cast<std::size_t>(s) - 1, 1);
    exps.push_back(k + 1);
    return eval_star(signed_index::of(exps, /*starred=*/true), tol);
}

}  // namespace mzv
