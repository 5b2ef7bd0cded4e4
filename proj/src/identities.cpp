#include "mzv/identities.hpp"

#include <algorithm>
#include <random>

namespace mzv {

namespace {

signed_index make_index(const std::vector<int>& exps, bool starred = false) {
    return signed_index::of(exps, starred);
}

// {1}^a followed by tail exponents.
std::vector<int> ones_then(int a, std::vector<int> tail) {
    std::vector<int> exps(static_cast<std::size_t>(a), 1);
    exps.insert(exps.end(), tail.begin(), tail.end());
    return exps;
}

std::string int_text(int v) { return std::to_string(v); }

void set_param(identity_instance& inst, const std::string& k, int v) {
    inst.params.emplace_back(k, int_text(v));
}

formal_sum single(const std::vector<int>& exps, const rational& coef = 1) {
    formal_sum s;
    s.add(make_index(exps), coef);
    return s;
}

}  // namespace

std::string identity_instance::param_text() const {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ",";
        out += k + "=" + v;
    }
    return out;
}

rational weight_w(const composition& alpha, int a, int b, int c) {
    const int parts = static_cast<int>(alpha.size());
    if (a < 0 || b < 0 || c < 0 || a + b + c > parts - 2)
        throw index_out_of_range("weight_w: need a,b,c >= 0 and a+b+c <= parts-2");
    auto sigma = [&](int r) {
        long s = 0;
        for (int j = 0; j <= r; ++j) s += alpha[static_cast<std::size_t>(j)];
        return s;
    };
    const int pivot = alpha[static_cast<std::size_t>(a + b + 1)];
    const long e = sigma(a + b + 1) - sigma(a) - (b + 1);
    return pow2(e) * (rational(1) - pow2(1 - pivot));
}

formal_sum z_minus(int m) {
    if (m < 0) throw parameter_out_of_range("z_minus: m >= 0");
    formal_sum s;
    for (int a = 0; a <= m; ++a) {
        const int b = m - a;
        s.add(make_index(ones_then(a, {b + 2})), (b % 2) ? rational(-1) : rational(1));
    }
    return s;
}

formal_sum z_star_plus(int n) {
    if (n < 0) throw parameter_out_of_range("z_star_plus: n >= 0");
    formal_sum s;
    for (int c = 0; c <= n; ++c)
        s += star_expand(make_index(ones_then(c, {n - c + 2}), /*starred=*/true));
    return s;
}

formal_sum z_minus_closed(int m) {
    if (m < 0) throw parameter_out_of_range("z_minus_closed: m >= 0");
    if (m % 2) return {};
    return single({m + 2}, 2 * (rational(1) - pow2(-(m + 1))));
}

formal_sum z_star_plus_closed(int n) {
    if (n < 0) throw parameter_out_of_range("z_star_plus_closed: n >= 0");
    return single({n + 2}, 2 * (n + 1) * (rational(1) - pow2(-(n + 1))));
}

// ---------------------------------------------------------------------------
// The six simplex parts.
// ---------------------------------------------------------------------------

formal_sum j_part(int j, int p) {
    if (j < 1 || j > 6) throw parameter_out_of_range("j_part: j in 1..6");
    if (p < 0) throw parameter_out_of_range("j_part: p >= 0");
    formal_sum out;

    if (j == 1) {
        // sum over m+n=p, a+b+c=m, u+v=n of double composition sums of
        // z(alpha_0..alpha_a + 1, {1}^b, beta_0..beta_c + 1).
        for (int m = 0; m <= p; ++m) {
            const int n = p - m;
            for (int a = 0; a <= m; ++a)
                for (int b = 0; a + b <= m; ++b) {
                    const int c = m - a - b;
                    for (int u = 0; u <= n; ++u) {
                        const int v = n - u;
                        enumerate_compositions(a + u + 1, a + 1, [&](const composition& al) {
                            enumerate_compositions(c + v + 1, c + 1, [&](const composition& be) {
                                std::vector<int> exps(al.begin(), al.end());
                                exps.back() += 1;
                                exps.insert(exps.end(), static_cast<std::size_t>(b), 1);
                                exps.insert(exps.end(), be.begin(), be.end());
                                exps.back() += 1;
                                out.add(make_index(exps), 1);
                            });
                        });
                    }
                }
        }
        return out;
    }

    if (j == 2) {
        for (int c = 0; c <= p; ++c)
            for (int d = 0; c + d <= p; ++d) {
                const int m = p - c - d;
                std::vector<int> exps{c + 2};
                exps.insert(exps.end(), static_cast<std::size_t>(m), 1);
                exps.push_back(d + 2);
                out.add(make_index(exps), (m % 2) ? rational(-1) : rational(1));
            }
        return out;
    }

    // j in 3..6: W-weighted sums over |alpha| = p+3 into m+2 parts.
    for (int m = 0; m <= p; ++m) {
        enumerate_compositions(p + 3, m + 2, [&](const composition& alpha) {
            rational coef = 0;
            switch (j) {
                case 3:
                    for (int a = 0; a <= m; ++a)
                        for (int b = 0; a + b <= m; ++b) coef += weight_w(alpha, a, b, m - a - b);
                    break;
                case 4:
                    for (int a = 0; a <= m; ++a) coef += weight_w(alpha, a, m - a, 0);
                    break;
                case 5:
                    coef = weight_w(alpha, 0, m, 0);
                    break;
                case 6:
                    for (int b = 0; b <= m; ++b) coef += weight_w(alpha, 0, b, m - b);
                    break;
            }
            if (coef == 0) return;
            std::vector<int> exps(alpha.begin(), alpha.end());
            exps.back() += 1;
            out.add(make_index(exps), coef);
        });
    }
    return out;
}

formal_sum j_total_closed(int p) {
    if (p < 0) throw parameter_out_of_range("j_total_closed: p >= 0");
    formal_sum s;
    const rational alt = (p % 2) ? rational(-1) : rational(1);
    s.add(make_index({p + 2, -2}), 2 * (alt - 1));
    s.add(make_index({p + 4}), rational(p + 2) * (rational(p + 1) + pow2(-(p + 2))));
    return s;
}

formal_sum j1_closed(int p) {
    if (p < 0) throw parameter_out_of_range("j1_closed: p >= 0");
    return single({p + 4}, rational(p) * (p + 3) / 2 + rational(p + 3) * pow2(-(p + 2)));
}

formal_sum j2_closed(int p) {
    if (p < 0) throw parameter_out_of_range("j2_closed: p >= 0");
    formal_sum s;
    const rational alt = (p % 2) ? rational(-1) : rational(1);
    s.add(make_index({p + 2, -2}), 2 * (alt - 1));
    s.add(make_index({p + 4}), rational(1) - pow2(-(p + 2)));
    return s;
}

star_sum t_mn(int m, int n) {
    if (m < 0 || n < 0) throw parameter_out_of_range("t_mn: m,n >= 0");
    star_sum out;
    for (int a1 = 1; a1 <= n + 2; ++a1) {
        const int a2 = n + 3 - a1;
        const rational coef = pow2(a2 - 1) - 1;
        if (coef == 0) continue;
        std::vector<int> exps{a1};
        exps.insert(exps.end(), static_cast<std::size_t>(m), 1);
        exps.push_back(a2 + 1);
        out.add(make_index(exps, /*starred=*/true), coef);
        out.add(make_index({m + n + 4}), -coef);
    }
    return out;
}

star_sum unknown_weighted_sum(int m, int n) {
    if (m < 0 || n < 0) throw parameter_out_of_range("unknown_weighted_sum: m,n >= 0");
    star_sum out;
    for (int a1 = 1; a1 <= n + 2; ++a1) {
        const int a2 = n + 3 - a1;
        std::vector<int> exps{a1};
        exps.insert(exps.end(), static_cast<std::size_t>(m), 1);
        exps.push_back(a2 + 1);
        out.add(make_index(exps, /*starred=*/true), pow2(a2));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Identity pairs.
// ---------------------------------------------------------------------------

namespace {

// The per-composition coefficient of the weighted sum formula: the four
// weight families W(a,b,c) + W(a,b,0) + W(0,m,0) + W(0,b,c).
rational four_family_coefficient(const composition& alpha, int m) {
    rational t = 0;
    for (int a = 0; a <= m; ++a)
        for (int b = 0; a + b <= m; ++b) t += weight_w(alpha, a, b, m - a - b);
    for (int a = 0; a <= m; ++a) t += weight_w(alpha, a, m - a, 0);
    t += weight_w(alpha, 0, m, 0);
    for (int b = 0; b <= m; ++b) t += weight_w(alpha, 0, b, m - b);
    return t;
}

formal_sum weighted_sum_rhs(int p) {
    formal_sum out;
    for (int m = 0; m <= p; ++m) {
        enumerate_compositions(p + 3, m + 2, [&](const composition& alpha) {
            const rational coef = four_family_coefficient(alpha, m);
            if (coef == 0) return;
            std::vector<int> exps(alpha.begin(), alpha.end());
            exps.back() += 1;
            out.add(make_index(exps), coef);
        });
    }
    return out;
}

}  // namespace

identity_instance main_theorem(int p) {
    identity_instance inst;
    inst.id = "main-theorem";
    set_param(inst, "p", p);
    inst.lhs = as_star_sum(single({p + 4}, rational(p + 1) * (p + 2) / 2));
    inst.rhs = as_star_sum(weighted_sum_rhs(p));
    return inst;
}

identity_instance main_theorem_symbolic(int p) {
    identity_instance inst;
    inst.id = "main-theorem-sym";
    set_param(inst, "p", p);
    inst.exactness = identity_instance::kind::exact_symbolic;
    inst.lhs = as_star_sum(weighted_sum_rhs(p));
    formal_sum parts;
    for (int j = 3; j <= 6; ++j) parts += j_part(j, p);
    inst.rhs = as_star_sum(parts);
    return inst;
}

std::vector<identity_instance> j_decomposition(int p) {
    std::vector<identity_instance> out;
    {
        identity_instance inst;
        inst.id = "j-decomp-all";
        set_param(inst, "p", p);
        formal_sum lhs;
        for (int j = 1; j <= 6; ++j) lhs += j_part(j, p);
        inst.lhs = as_star_sum(lhs);
        inst.rhs = as_star_sum(j_total_closed(p));
        out.push_back(std::move(inst));
    }
    {
        identity_instance inst;
        inst.id = "j-decomp-12";
        set_param(inst, "p", p);
        inst.lhs = as_star_sum(j_part(1, p) + j_part(2, p));
        formal_sum rhs = j_total_closed(p);
        rhs.add(make_index({p + 4}), -rational(p + 1) * (p + 2) / 2);
        inst.rhs = as_star_sum(rhs);
        out.push_back(std::move(inst));
    }
    {
        identity_instance inst;
        inst.id = "j-decomp-36";
        set_param(inst, "p", p);
        formal_sum lhs;
        for (int j = 3; j <= 6; ++j) lhs += j_part(j, p);
        inst.lhs = as_star_sum(lhs);
        inst.rhs = as_star_sum(single({p + 4}, rational(p + 1) * (p + 2) / 2));
        out.push_back(std::move(inst));
    }
    return out;
}

identity_instance j1_closed_pair(int p) {
    identity_instance inst;
    inst.id = "j1-closed";
    set_param(inst, "p", p);
    inst.lhs = as_star_sum(j_part(1, p));
    inst.rhs = as_star_sum(j1_closed(p));
    return inst;
}

identity_instance j1_star_pair(int p) {
    identity_instance inst;
    inst.id = "j1-star";
    set_param(inst, "p", p);
    star_sum lhs;
    for (int m = 0; m <= p; ++m)
        for (int c = 0; c + m <= p; ++c) {
            const int d = p - m - c;
            std::vector<int> exps{c + 2};
            exps.insert(exps.end(), static_cast<std::size_t>(m), 1);
            exps.push_back(d + 2);
            lhs.add(make_index(exps, /*starred=*/true), 1);
            lhs.add(make_index({p + 4}), -1);
        }
    inst.lhs = lhs;
    inst.rhs = as_star_sum(j1_closed(p));
    return inst;
}

identity_instance j2_closed_pair(int p) {
    identity_instance inst;
    inst.id = "j2-closed";
    set_param(inst, "p", p);
    inst.lhs = as_star_sum(j_part(2, p));
    inst.rhs = as_star_sum(j2_closed(p));
    return inst;
}

identity_instance j2_jp_pair(int p) {
    identity_instance inst;
    inst.id = "j2-jp";
    set_param(inst, "p", p);
    inst.lhs = as_star_sum(j_part(2, p));
    star_sum rhs = as_star_sum(j_total_closed(p));
    for (int m = 0; m <= p; ++m)
        for (int c = 0; c + m <= p; ++c) {
            const int d = p - m - c;
            std::vector<int> exps{d + 2};
            exps.insert(exps.end(), static_cast<std::size_t>(m), 1);
            exps.push_back(c + 2);
            rhs.add(make_index(exps, /*starred=*/true), -1);
        }
    inst.rhs = rhs;
    return inst;
}

identity_instance granville_pair(int q, int r) {
    if (q < 0 || r < 0) throw parameter_out_of_range("granville: q,r >= 0");
    identity_instance inst;
    inst.id = "granville";
    set_param(inst, "q", q);
    set_param(inst, "r", r);
    formal_sum lhs;
    enumerate_compositions(q + r + 1, q + 1, [&](const composition& alpha) {
        std::vector<int> exps(alpha.begin(), alpha.end());
        exps.back() += 1;
        lhs.add(make_index(exps), 1);
    });
    inst.lhs = as_star_sum(lhs);
    inst.rhs = as_star_sum(single({q + r + 2}));
    return inst;
}

identity_instance le_murakami_pair(int w) {
    if (w < 1) throw parameter_out_of_range("le_murakami: w >= 1");
    identity_instance inst;
    inst.id = "le-murakami";
    set_param(inst, "w", w);
    formal_sum lhs;
    for (int a = 0; a <= 2 * w - 2; ++a) {
        const int b = 2 * w - 2 - a;
        lhs.add(make_index(ones_then(a, {b + 2})), (a % 2) ? rational(1) : rational(-1));
    }
    inst.lhs = as_star_sum(lhs);
    formal_sum rhs;
    rhs.add(make_index({-(2 * w)}), 2);
    inst.rhs = as_star_sum(rhs);
    return inst;
}

std::vector<identity_instance> prop22_pairs(int m) {
    std::vector<identity_instance> out;
    auto base = [&](const char* form) {
        identity_instance inst;
        inst.id = "prop22";
        set_param(inst, "m", m);
        inst.params.emplace_back("form", form);
        return inst;
    };
    {
        auto inst = base("closed");
        inst.lhs = as_star_sum(z_minus(2 * m));
        inst.rhs = as_star_sum(z_minus_closed(2 * m));
        out.push_back(std::move(inst));
    }
    {
        auto inst = base("star");
        inst.lhs = as_star_sum(z_minus(2 * m));
        star_sum rhs;
        rhs.add(make_index(std::vector<int>(static_cast<std::size_t>(m) + 1, 2),
                           /*starred=*/true),
                1);
        inst.rhs = rhs;
        out.push_back(std::move(inst));
    }
    {
        auto inst = base("eta");
        inst.lhs = as_star_sum(z_minus(2 * m));
        formal_sum rhs;
        rhs.add(make_index({-(2 * m + 2)}), -2);
        inst.rhs = as_star_sum(rhs);
        out.push_back(std::move(inst));
    }
    {
        auto inst = base("odd");
        inst.lhs = as_star_sum(z_minus(2 * m + 1));
        out.push_back(std::move(inst));  // rhs = 0
    }
    {
        auto inst = base("odd-sym");
        inst.exactness = identity_instance::kind::exact_symbolic;
        const formal_sum z = z_minus(2 * m + 1);
        inst.lhs = as_star_sum(map_dual(z));
        inst.rhs = as_star_sum(rational(-1) * z);
        out.push_back(std::move(inst));
    }
    return out;
}

identity_instance ohno_zstar_pair(int w) {
    if (w < 2) throw parameter_out_of_range("ohno_zstar: w >= 2");
    identity_instance inst;
    inst.id = "ohno-zstar";
    set_param(inst, "w", w);
    star_sum lhs;
    for (int a = 0; a <= w - 2; ++a)
        lhs.add(make_index(ones_then(a, {w - a}), /*starred=*/true), 1);
    inst.lhs = lhs;
    inst.rhs = as_star_sum(single({w}, 2 * (w - 1) * (rational(1) - pow2(1 - w))));
    return inst;
}

identity_instance zeta_star_3_2n_pair(int n) {
    if (n < 0) throw parameter_out_of_range("zeta_star_3_2n: n >= 0");
    identity_instance inst;
    inst.id = "zstar3-2n";
    set_param(inst, "n", n);
    std::vector<int> exps{3};
    exps.insert(exps.end(), static_cast<std::size_t>(n), 2);
    star_sum lhs;
    lhs.add(make_index(exps, /*starred=*/true), 1);
    inst.lhs = lhs;

    formal_sum rhs = z_star_plus(2 * n + 1);
    for (int a = 0; a <= n; ++a) {
        const int b = n - a;
        if (a == 0) {
            rhs.add(make_index({2 * b + 3}), -2);
        } else {
            const formal_sum star_twos = star_expand(
                make_index(std::vector<int>(static_cast<std::size_t>(a), 2), /*starred=*/true));
            rhs.add(stuffle(star_twos, single({2 * b + 3})), -2);
        }
    }
    inst.rhs = as_star_sum(rhs);
    return inst;
}

identity_instance star_double_sum_pair(int p) {
    identity_instance inst;
    inst.id = "star-double-sum";
    set_param(inst, "p", p);
    star_sum lhs;
    for (int a = 0; a <= p; ++a)
        for (int b = 0; a + b <= p; ++b) {
            const int m = p - a - b;
            std::vector<int> exps{a + 2};
            exps.insert(exps.end(), static_cast<std::size_t>(m), 1);
            exps.push_back(b + 2);
            lhs.add(make_index(exps, /*starred=*/true), 1);
        }
    inst.lhs = lhs;
    inst.rhs = as_star_sum(single(
        {p + 4}, rational(p) * p + 3 * p + 1 + rational(p + 3) * pow2(-(p + 2))));
    return inst;
}

identity_instance sec6_pair(int p) {
    identity_instance inst;
    inst.id = "sec6";
    set_param(inst, "p", p);
    formal_sum lhs;
    for (int a = 0; a <= p; ++a)
        for (int b = 0; a + b <= p; ++b) {
            const int c = p - a - b;
            enumerate_compositions(a + b + 1, a + 1, [&](const composition& alpha) {
                std::vector<int> exps(alpha.begin(), alpha.end());
                exps.back() += 1;
                exps.push_back(c + 2);
                lhs.add(make_index(exps), 1);
            });
            enumerate_compositions(b + c + 1, b + 1, [&](const composition& beta) {
                std::vector<int> exps{a + 2};
                exps.insert(exps.end(), beta.begin(), beta.end());
                exps.back() += 1;
                lhs.add(make_index(exps), 1);
            });
        }
    inst.lhs = as_star_sum(lhs);

    formal_sum rhs;
    for (int m = 0; m <= p; ++m)
        rhs.add(stuffle(single({m + 2}), single({p - m + 2})), rational(p + 2) / 2);
    rhs.add(make_index({p + 4}), -rational(p + 1) * (p + 2) / 2);
    inst.rhs = as_star_sum(rhs);
    return inst;
}

identity_instance sec6_star_height1(int m) {
    identity_instance inst;
    inst.id = "sec6-star";
    set_param(inst, "m", m);
    star_sum lhs;
    lhs.add(make_index(ones_then(m, {2}), /*starred=*/true), 1);
    inst.lhs = lhs;
    inst.rhs = as_star_sum(single({m + 2}, m + 1));
    return inst;
}

namespace {

// The two Ohno-shifted families of the duality route.  Family 1: shape
// z(c_1+1 .. c_a+1, c_{a+1}+2, c_{a+2}+2) summed over |c| = m; family 2:
// z(c_1+2, c_2+1 .. c_{a+1}+1, c_{a+2}+2).
formal_sum dual_route_block(int family, int a, int m) {
    formal_sum out;
    enumerate_compositions(m + a + 2, a + 2, [&](const composition& raw) {
        std::vector<int> c(raw.begin(), raw.end());
        for (int& v : c) v -= 1;
        std::vector<int> exps;
        if (family == 1) {
            for (int i = 0; i < a; ++i) exps.push_back(c[static_cast<std::size_t>(i)] + 1);
            exps.push_back(c[static_cast<std::size_t>(a)] + 2);
            exps.push_back(c[static_cast<std::size_t>(a) + 1] + 2);
        } else {
            exps.push_back(c[0] + 2);
            for (int i = 1; i <= a; ++i) exps.push_back(c[static_cast<std::size_t>(i)] + 1);
            exps.push_back(c[static_cast<std::size_t>(a) + 1] + 2);
        }
        out.add(make_index(exps), 1);
    });
    return out;
}

formal_sum dual_route_rhs(int family, int a, int m) {
    formal_sum out;
    for (int d1 = 0; d1 <= m; ++d1) {
        const int d2 = m - d1;
        if (family == 1)
            out.add(make_index({d1 + 2, d2 + a + 2}), 1);
        else
            out.add(make_index({d1 + a + 2, d2 + 2}), 1);
    }
    return out;
}

}  // namespace

std::vector<identity_instance> sec6_dual_route(int p) {
    std::vector<identity_instance> out;

    // Exact regrouping of the two direct sums into the per-a Ohno blocks.
    for (int family = 1; family <= 2; ++family) {
        identity_instance inst;
        inst.id = "sec6-dual";
        set_param(inst, "p", p);
        inst.params.emplace_back("route", family == 1 ? "regroup1" : "regroup2");
        inst.exactness = identity_instance::kind::exact_symbolic;
        formal_sum direct;
        for (int a = 0; a <= p; ++a)
            for (int b = 0; a + b <= p; ++b) {
                const int c = p - a - b;
                if (family == 1) {
                    enumerate_compositions(a + b + 1, a + 1, [&](const composition& alpha) {
                        std::vector<int> exps(alpha.begin(), alpha.end());
                        exps.back() += 1;
                        exps.push_back(c + 2);
                        direct.add(make_index(exps), 1);
                    });
                } else {
                    enumerate_compositions(b + c + 1, b + 1, [&](const composition& beta) {
                        std::vector<int> exps{a + 2};
                        exps.insert(exps.end(), beta.begin(), beta.end());
                        exps.back() += 1;
                        direct.add(make_index(exps), 1);
                    });
                }
            }
        formal_sum blocks;
        for (int a = 0; a <= p; ++a) blocks += dual_route_block(family, a, p - a);
        inst.lhs = as_star_sum(direct);
        inst.rhs = as_star_sum(blocks);
        out.push_back(std::move(inst));
    }

    // Termwise duality at shift 0 is exact.
    for (int a = 0; a <= p; ++a) {
        identity_instance inst;
        inst.id = "sec6-dual";
        set_param(inst, "p", p);
        set_param(inst, "a", a);
        inst.params.emplace_back("route", "dual-term");
        inst.exactness = identity_instance::kind::exact_symbolic;
        inst.lhs = as_star_sum(map_dual(dual_route_block(1, a, 0)) +
                               map_dual(dual_route_block(2, a, 0)));
        inst.rhs = as_star_sum(dual_route_rhs(1, a, 0) + dual_route_rhs(2, a, 0));
        out.push_back(std::move(inst));
    }

    // Each Ohno block pair, numerically.
    for (int family = 1; family <= 2; ++family)
        for (int a = 0; a <= p; ++a) {
            identity_instance inst;
            inst.id = "sec6-dual";
            set_param(inst, "p", p);
            set_param(inst, "a", a);
            inst.params.emplace_back("route", family == 1 ? "ohno1" : "ohno2");
            inst.lhs = as_star_sum(dual_route_block(family, a, p - a));
            inst.rhs = as_star_sum(dual_route_rhs(family, a, p - a));
            out.push_back(std::move(inst));
        }
    return out;
}

identity_instance sec7_t_pair(int p) {
    identity_instance inst;
    inst.id = "sec7-t";
    set_param(inst, "p", p);
    star_sum lhs;
    for (int m = 0; m <= p; ++m) lhs += t_mn(m, p - m);
    inst.lhs = lhs;
    inst.rhs = as_star_sum(j_part(3, p));
    return inst;
}

identity_instance star_height1_dual_sum(int m, int n) {
    identity_instance inst;
    inst.id = "sec7-dual";
    set_param(inst, "m", m);
    set_param(inst, "n", n);
    star_sum lhs;
    for (int a1 = 1; a1 <= n + 2; ++a1) {
        const int a2 = n + 3 - a1;
        std::vector<int> exps{a1};
        exps.insert(exps.end(), static_cast<std::size_t>(m), 1);
        exps.push_back(a2 + 1);
        lhs.add(make_index(exps, /*starred=*/true), 1);
    }
    inst.lhs = lhs;
    inst.rhs = as_star_sum(single({m + n + 4}, m + n + 3));
    return inst;
}

identity_instance sec7_unknown_probe(int m, int n) {
    identity_instance inst;
    inst.id = "sec7-unknown";
    set_param(inst, "m", m);
    set_param(inst, "n", n);
    const star_sum sum = unknown_weighted_sum(m, n);
    inst.lhs = sum;
    inst.rhs = sum;
    // Stability probe: the same sum at the requested tier and at a tier four
    // orders tighter must agree within the combined bounds.
    inst.custom = [sum](const evaluator& ev, const real& tol) {
        const eval_result coarse = ev.eval_sum(sum, tol);
        const eval_result fine = ev.eval_sum(sum, tol * real("1e-4"));
        return std::make_pair(coarse, fine);
    };
    return inst;
}

identity_instance euler_family(int p, int q, const rational& lambda) {
    if (p < 0 || q < 0 || q > p)
        throw parameter_out_of_range("euler_family: need 0 <= q <= p");
    identity_instance inst;
    inst.id = "euler-family";
    set_param(inst, "p", p);
    set_param(inst, "q", q);
    inst.params.emplace_back("lambda", to_string(lambda));

    const rational mu = lambda + 1;
    star_sum lhs;
    for (int m = 0; m <= p; ++m) {
        const int n = p - m;
        if (n < q) continue;
        const rational coef = rational(binomial(n, q)) * pow_rational(lambda, n - q);
        if (coef == 0) continue;
        lhs.add(stuffle(make_index({-(m + 1)}), make_index({-(n + 1)})), coef);
    }
    inst.lhs = lhs;

    star_sum rhs;
    for (int m = 0; m <= p; ++m) {
        const int n = p - m;
        rational coef = 0;
        if (n >= q) coef += rational(binomial(n, q)) * pow_rational(mu, n - q);
        for (int a = 0; a <= std::min(q, m); ++a) {
            const int b = q - a;
            if (b > n) continue;
            coef += rational(binomial(m, a)) * rational(binomial(n, b)) *
                    pow_rational(lambda, m - a) * pow_rational(mu, n - b);
        }
        if (coef == 0) continue;
        rhs.add(make_index({m + 1, -(n + 1)}), coef);
    }
    inst.rhs = rhs;
    return inst;
}

const std::vector<std::string>& euler_special_names() {
    static const std::vector<std::string> names = {
        "l0q0", "l0q1", "l0q2", "ln1q0", "ln1q1", "l1q0", "w2n", "teo", "ln2"};
    return names;
}

std::vector<identity_instance> euler_specials(const std::string& name, int p) {
    std::vector<identity_instance> out;
    identity_instance inst;
    inst.id = "euler-special:" + name;
    set_param(inst, "p", p);
    const rational alt_p = (p % 2) ? rational(-1) : rational(1);

    auto zbar = [](int s) { return make_index({-s}); };
    auto mixed = [](int a, int s) { return make_index({a, -s}); };

    if (name == "l0q0") {
        star_sum lhs;
        for (int m = 0; m <= p; ++m) lhs.add(mixed(m + 1, p - m + 1), 1);
        inst.lhs = lhs;
        star_sum rhs = as_star_sum(stuffle(zbar(1), zbar(p + 1)));
        rhs.add(mixed(1, p + 1), -1);
        inst.rhs = rhs;
    } else if (name == "l0q1") {
        if (p < 1) return out;
        star_sum lhs;
        for (int m = 0; m <= p; ++m) lhs.add(mixed(m + 1, p - m + 1), p - m);
        inst.lhs = lhs;
        star_sum rhs = as_star_sum(stuffle(zbar(2), zbar(p)));
        rhs.add(mixed(1, p + 1), -p);
        rhs.add(mixed(2, p), -1);
        inst.rhs = rhs;
    } else if (name == "l0q2") {
        if (p < 2) return out;
        star_sum lhs;
        for (int m = 0; m <= p; ++m)
            lhs.add(mixed(m + 1, p - m + 1), rational(binomial(p - m, 2)));
        inst.lhs = lhs;
        star_sum rhs = as_star_sum(stuffle(zbar(3), zbar(p - 1)));
        rhs.add(mixed(1, p + 1), -rational(binomial(p, 2)));
        rhs.add(mixed(2, p), -(p - 1));
        rhs.add(mixed(3, p - 1), -1);
        inst.rhs = rhs;
    } else if (name == "ln1q0") {
        star_sum lhs;
        for (int m = 0; m <= p; ++m)
            lhs.add(stuffle(zbar(m + 1), zbar(p - m + 1)),
                    (m % 2) ? rational(-1) : rational(1));
        inst.lhs = lhs;
        star_sum rhs;
        rhs.add(mixed(p + 1, 1), 1 + alt_p);
        inst.rhs = rhs;
    } else if (name == "ln1q1") {
        if (p < 1) return out;
        star_sum lhs;
        for (int m = 0; m <= p; ++m) {
            const rational coef = rational(p - m) * ((m % 2) ? -1 : 1);
            if (coef != 0) lhs.add(stuffle(zbar(m + 1), zbar(p - m + 1)), coef);
        }
        inst.lhs = lhs;
        star_sum rhs;
        rhs.add(mixed(p, 2), 1 - alt_p);
        rhs.add(mixed(p + 1, 1), p);
        inst.rhs = rhs;
    } else if (name == "l1q0") {
        star_sum lhs;
        for (int m = 0; m <= p; ++m) lhs.add(stuffle(zbar(m + 1), zbar(p - m + 1)), 1);
        inst.lhs = lhs;
        star_sum rhs;
        for (int m = 0; m <= p; ++m) rhs.add(mixed(m + 1, p - m + 1), pow2(p - m + 1));
        inst.rhs = rhs;
    } else if (name == "w2n") {
        star_sum lhs;
        for (int m = 0; m <= p; ++m) lhs.add(mixed(m + 1, p - m + 1), pow2(p - m));
        inst.lhs = lhs;
        star_sum rhs;
        rhs.add(make_index({p + 2}), rational(p + 1) / 2);
        rhs.add(mixed(p + 1, 1), 1);
        rhs.add(zbar(p + 2), 1);
        inst.rhs = rhs;
    } else if (name == "teo") {
        if (p < 1) return out;
        star_sum lhs;
        for (int m = 0; m <= p; ++m) lhs.add(make_index({-(m + 1), -(p - m + 1)}), 1);
        inst.lhs = lhs;
        star_sum rhs = as_star_sum(stuffle(zbar(1), make_index({p + 1})));
        rhs.add(make_index({-1, p + 1}), -1);
        inst.rhs = rhs;
    } else if (name == "ln2") {
        star_sum lhs;
        lhs.add(make_index({p + 2}), (pow_rational(-2, p + 1) - 1) / 3);
        inst.lhs = lhs;
        star_sum rhs;
        for (int m = 0; m <= p; ++m) {
            const int n = p - m;
            rhs.add(make_index({-(m + 1), -(n + 1)}),
                    pow_rational(-2, n) + pow_rational(-2, m));
            const rational c = ((n % 2) ? rational(-1) : rational(1)) *
                               (1 + pow_rational(-2, m));
            rhs.add(mixed(m + 1, n + 1), -c);
        }
        inst.rhs = rhs;
    } else {
        throw parameter_out_of_range("unknown euler special: " + name);
    }
    out.push_back(std::move(inst));
    return out;
}

identity_instance reflection_pair(const std::vector<int>& alpha) {
    identity_instance inst;
    inst.id = "reflection";
    std::string text;
    for (int a : alpha) {
        if (!text.empty()) text += ".";
        text += int_text(a);
    }
    inst.params.emplace_back("alpha", text);
    reflection_identity refl = reflection_instance(alpha);
    inst.lhs = std::move(refl.lhs);
    inst.rhs_products = std::move(refl.rhs);
    return inst;
}

identity_instance bell_harmonic_pair(int k1, int k2, int n) {
    identity_instance inst;
    inst.id = "bell-harmonic";
    set_param(inst, "k1", k1);
    set_param(inst, "k2", k2);
    set_param(inst, "n", n);
    inst.exactness = identity_instance::kind::exact_symbolic;
    inst.exact_check = [k1, k2, n](std::string& lhs_text, std::string& rhs_text) {
        const auto [lhs, rhs] = bell_harmonic(k1, k2, n);
        lhs_text = to_string(lhs);
        rhs_text = to_string(rhs);
        return lhs == rhs;
    };
    return inst;
}

std::vector<identity_instance> bell_zeta_pairs(int n) {
    std::vector<identity_instance> out;
    for (const bool star : {false, true}) {
        identity_instance inst;
        inst.id = "bell-zeta";
        set_param(inst, "n", n);
        inst.params.emplace_back("form", star ? "star" : "plain");
        inst.custom = [n, star](const evaluator& ev, const real& tol) {
            const real sub = tol / (8 * (n + 1));
            std::vector<real> xs, xs_abs, xs_hi;
            real err_in = 0;
            for (int k = 1; k <= n; ++k) {
                const eval_result zr = ev.eval_index(make_index({2 * k}), sub);
                const bool negative = !star && (k % 2 == 0);
                xs.push_back(negative ? -zr.value : zr.value);
                xs_abs.push_back(boost::multiprecision::abs(zr.value));
                xs_hi.push_back(boost::multiprecision::abs(zr.value) + zr.error_bound);
                err_in += zr.error_bound;
            }
            eval_result lhs;
            lhs.value = bell_p<real>(n, xs);
            // A coefficient-positive polynomial: perturbing all inputs upward
            // by their bounds dominates the propagated error.
            lhs.error_bound = bell_p<real>(n, xs_hi) - bell_p<real>(n, xs_abs) +
                              real(64 * (n + 1)) * real("1e-47");
            eval_result rhs;
            if (n == 0) {
                rhs = {real(1), real(0), false};
            } else {
                const std::vector<int> twos_idx(static_cast<std::size_t>(n), 2);
                rhs = star ? ev.eval_star(make_index(twos_idx, true), tol / 4)
                           : ev.eval_index(make_index(twos_idx), tol / 4);
            }
            return std::make_pair(lhs, rhs);
        };
        out.push_back(std::move(inst));
    }
    return out;
}

signed_index random_admissible_index(std::uint64_t seed, int max_weight, int max_depth,
                                     bool allow_bars) {
    std::mt19937_64 rng(seed);
    for (;;) {
        std::uniform_int_distribution<int> depth_dist(1, max_depth);
        const int r = depth_dist(rng);
        if (r > max_weight) continue;
        std::vector<int> exps;
        int budget = max_weight;
        bool ok = true;
        for (int j = 0; j < r; ++j) {
            const int remaining_slots = r - j - 1;
            const int hi = budget - remaining_slots;
            if (hi < 1) {
                ok = false;
                break;
            }
            std::uniform_int_distribution<int> e_dist(1, std::min(hi, 6));
            int e = e_dist(rng);
            if (allow_bars && std::uniform_int_distribution<int>(0, 2)(rng) == 0) e = -e;
            exps.push_back(e);
            budget -= std::abs(e);
        }
        if (!ok) continue;
        // Fix up the last slot if the draw is divergent.
        if (exps.back() == 1) {
            if (allow_bars)
                exps.back() = -1;
            else if (budget >= 1)
                exps.back() = 2;
            else
                continue;
        }
        return signed_index::of(exps);
    }
}

// ---------------------------------------------------------------------------
// Registry.
// ---------------------------------------------------------------------------

namespace {

int pval(const suite_params& sp, int dflt) { return sp.p_max.value_or(dflt); }

std::vector<rational> lambdas_or_default(const suite_params& sp) {
    if (!sp.lambdas.empty()) return sp.lambdas;
    return {rational(0), rational(1), rational(-1), rational(-2), rational(3, 2)};
}

std::vector<suite_def> build_registry() {
    std::vector<suite_def> reg;
    auto add = [&](std::string id, std::string desc,
                   std::function<std::vector<identity_instance>(const suite_params&)> fn) {
        reg.push_back({std::move(id), std::move(desc), std::move(fn)});
    };

    add("main-theorem", "weighted sum formula (p+1)(p+2)/2 z(p+4)", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int p = 0; p <= pval(sp, 4); ++p) v.push_back(main_theorem(p));
        return v;
    });
    add("main-theorem-sym", "weighted sum rhs equals J(3)+...+J(6) exactly",
        [](const suite_params& sp) {
            std::vector<identity_instance> v;
            for (int p = 0; p <= pval(sp, 4); ++p) v.push_back(main_theorem_symbolic(p));
            return v;
        });
    add("j-decomp", "simplex decomposition of the convolution integral",
        [](const suite_params& sp) {
            std::vector<identity_instance> v;
            for (int p = 0; p <= pval(sp, 4); ++p)
                for (auto& inst : j_decomposition(p)) v.push_back(std::move(inst));
            return v;
        });
    add("j1-closed", "J(1) double-composition sum vs closed form", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int p = 0; p <= pval(sp, 5); ++p) v.push_back(j1_closed_pair(p));
        return v;
    });
    add("j1-star", "J(1) as a star double sum vs closed form", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int p = 0; p <= pval(sp, 5); ++p) v.push_back(j1_star_pair(p));
        return v;
    });
    add("j2-closed", "J(2) alternating sum vs closed form", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int p = 0; p <= pval(sp, 5); ++p) v.push_back(j2_closed_pair(p));
        return v;
    });
    add("j2-jp", "J(2) = J_p minus the reversed star double sum", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int p = 0; p <= pval(sp, 4); ++p) v.push_back(j2_jp_pair(p));
        return v;
    });
    add("granville", "sum formula over compositions", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        const int cap = sp.w_max.value_or(6);
        for (int q = 0; q <= cap; ++q)
            for (int r = 0; q + r <= cap; ++r) v.push_back(granville_pair(q, r));
        return v;
    });
    add("le-murakami", "alternating height-one sum equals 2 z(bar 2w)",
        [](const suite_params& sp) {
            std::vector<identity_instance> v;
            for (int w = 1; w <= sp.w_max.value_or(4); ++w) v.push_back(le_murakami_pair(w));
            return v;
        });
    add("prop22", "Z-(2m) closed forms and Z-(odd) = 0", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int m = 0; m <= pval(sp, 4); ++m)
            for (auto& inst : prop22_pairs(m)) v.push_back(std::move(inst));
        return v;
    });
    add("ohno-zstar", "height-one star sum 2(w-1)(1-2^{1-w}) z(w)", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int w = 2; w <= sp.w_max.value_or(12); ++w) v.push_back(ohno_zstar_pair(w));
        return v;
    });
    add("zstar3-2n", "zstar(3,{2}^n) via the height-one sum", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int n = 0; n <= pval(sp, 3); ++n) v.push_back(zeta_star_3_2n_pair(n));
        return v;
    });
    add("star-double-sum", "star double sum (p^2+3p+1+(p+3)/2^{p+2}) z(p+4)",
        [](const suite_params& sp) {
            std::vector<identity_instance> v;
            for (int p = 0; p <= pval(sp, 4); ++p) v.push_back(star_double_sum_pair(p));
            return v;
        });
    add("sec6", "two-block composition sum vs product form", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int p = 0; p <= pval(sp, 6); ++p) v.push_back(sec6_pair(p));
        return v;
    });
    add("sec6-star", "zstar({1}^m,2) = (m+1) z(m+2)", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int m = 0; m <= pval(sp, 6); ++m) v.push_back(sec6_star_height1(m));
        return v;
    });
    add("sec6-dual", "duality route for the two-block sum", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int p = 0; p <= pval(sp, 4); ++p)
            for (auto& inst : sec6_dual_route(p)) v.push_back(std::move(inst));
        return v;
    });
    add("sec7-t", "sum of T(m,n) equals J(3)", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        for (int p = 0; p <= pval(sp, 4); ++p) v.push_back(sec7_t_pair(p));
        return v;
    });
    add("sec7-dual", "star height-one dual sum (m+n+3) z(m+n+4)", [](const suite_params& sp) {
        std::vector<identity_instance> v;
        const int cap = pval(sp, 5);
        for (int m = 0; m <= cap; ++m)
            for (int n = 0; m + n <= cap; ++n) v.push_back(star_height1_dual_sum(m, n));
        return v;
    });
    add("sec7-unknown", "2^{alpha2}-weighted star sum stability probe",
        [](const suite_params& sp) {
            std::vector<identity_instance> v;
            const int cap = std::min(pval(sp, 2), 4);
            for (int m = 0; m <= cap; ++m)
                for (int n = 0; m + n <= cap; ++n) v.push_back(sec7_unknown_probe(m, n));
            return v;
        });
    add("euler-family", "weighted alternating double sums, rational lambda",
        [](const suite_params& sp) {
            std::vector<identity_instance> v;
            const int pmax = pval(sp, 8);
            const int qmax = sp.q_max.value_or(2);
            for (const rational& lam : lambdas_or_default(sp))
                for (int p = 0; p <= pmax; ++p)
                    for (int q = 0; q <= std::min(qmax, p); ++q)
                        v.push_back(euler_family(p, q, lam));
            return v;
        });
    for (const std::string& name : euler_special_names()) {
        add("euler-special:" + name, "displayed specialization " + name,
            [name](const suite_params& sp) {
                std::vector<identity_instance> v;
                for (int p = 0; p <= pval(sp, 8); ++p)
                    for (auto& inst : euler_specials(name, p)) v.push_back(std::move(inst));
                return v;
            });
    }
    add("reflection", "reflection formula on random admissible tuples",
        [](const suite_params& sp) {
            std::vector<identity_instance> v;
            for (std::uint64_t attempt = 0; v.size() < 20; ++attempt) {
                std::mt19937_64 rng(sp.seed + attempt * 7919);
                std::uniform_int_distribution<int> depth_dist(2, 4);
                const int r = depth_dist(rng);
                std::vector<int> alpha;
                int weight = 0;
                for (int j = 0; j < r; ++j) {
                    const int lo = (j == 0 || j == r - 1) ? 2 : 1;
                    std::uniform_int_distribution<int> e_dist(lo, 4);
                    alpha.push_back(e_dist(rng));
                    weight += alpha.back();
                }
                if (weight > 10) continue;
                v.push_back(reflection_pair(alpha));
            }
            return v;
        });
    add("bell-harmonic", "P_n of power sums equals the nondecreasing-product sum",
        [](const suite_params& sp) {
            std::vector<identity_instance> v;
            const int kcap = std::min(sp.w_max.value_or(8), 12);
            for (int k1 = 1; k1 <= kcap; ++k1)
                for (int k2 = k1; k2 <= kcap; ++k2)
                    for (int n = 0; n <= 5; ++n) v.push_back(bell_harmonic_pair(k1, k2, n));
            return v;
        });
    add("bell-zeta", "P_n of zeta(2k) values vs z({2}^n) and zstar({2}^n)",
        [](const suite_params& sp) {
            std::vector<identity_instance> v;
            for (int n = 0; n <= std::min(pval(sp, 4), 6); ++n)
                for (auto& inst : bell_zeta_pairs(n)) v.push_back(std::move(inst));
            return v;
        });
    return reg;
}

}  // namespace

const std::vector<suite_def>& identity_registry() {
    static const std::vector<suite_def> reg = build_registry();
    return reg;
}

const suite_def* find_suite(const std::string& id) {
    for (const auto& def : identity_registry())
        if (def.id == id) return &def;
    return nullptr;
}

}  // namespace mzv
