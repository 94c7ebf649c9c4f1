#pragma once

#include <cstdlib>
#include <vector>

#include "w2/numtheory.hpp"
#include "w2/operads.hpp"
#include "w2/parallel.hpp"
#include "w2/plaurent.hpp"
#include "w2/series.hpp"
#include "w2/symfunc.hpp"

namespace w2 {

struct Weight2Config {
    int g_max;  // maximal genus (hbar exponent)
    int n_max;  // maximal number of marked points (symmetric-function weight)
};

// The generating function is assembled from blocks
//   X_l  = sum_{d|l, d<l} mu(l/d) hbar^{l-d} P_d / P_l                (valuation >= l/2)
//   D_l  = -sum_{j>=1} (-1)^j/j X_l^j
//          - sum_{k>=1} sum_{j>=0} B_k/k binom(-k,j) (l hbar^l / P_l)^k X_l^j
//   E_l  = -sum_{k>=1} sum_{j>=0} B_{k-1} binom(-k,j) (l hbar^l / P_l)^k X_l^j
// in three coefficient rings: p-expanded symmetric functions, the n = 0
// scalar specialization (every P_d = 1), and the exact P-Laurent algebra.
// The policy supplies P_d^e and log P_l in its ring; the block assembly and
// its summation cutoffs are shared.

struct ExpandedPolicy {
    using Series = MSeries;
    int g_max, n_max;

    Series zero() const { return MSeries(Var::hbar, g_max, n_max); }
    Series one() const { return MSeries::one(Var::hbar, g_max, n_max); }
    Series hbar(int e) const { return MSeries::one(Var::hbar, g_max, n_max).shifted(e); }
    Series p_pow(int d, int e) const {
        return MSeries::term(PLaurent::monomial(LMono::var(d, e)).expand(n_max), 0, 0, Var::hbar,
                             g_max, n_max);
    }
    Series log_P(int l) const {
        if (l > n_max) return zero();
        return MSeries::term(sym_log1p(SymPoly::p(l, n_max)), 0, 0, Var::hbar, g_max, n_max);
    }
};

// n = 0 fast path: every P_d = 1, so blocks collapse to univariate series.
struct ScalarPolicy {
    using Series = ScalarSeries;
    int g_max, n_max = 0;

    Series zero() const { return ScalarSeries(Var::hbar, g_max, 0); }
    Series one() const { return ScalarSeries::one(Var::hbar, g_max, 0); }
    Series hbar(int e) const { return one().shifted(e); }
    Series p_pow(int, int) const { return one(); }
    Series log_P(int) const { return zero(); }
};

// Exact P-Laurent coefficients, no p-expansion; houses A_g and C_g.
struct LaurentPolicy {
    using Series = LaurentSeries;
    int g_max, n_max = kNoWeightCap;

    Series zero() const { return LaurentSeries(Var::hbar, g_max); }
    Series one() const { return LaurentSeries::one(Var::hbar, g_max); }
    Series hbar(int e) const { return one().shifted(e); }
    Series p_pow(int d, int e) const {
        return LaurentSeries::term(PLaurent::monomial(LMono::var(d, e)), 0, 0, Var::hbar, g_max);
    }
    Series log_P(int) const {
        throw internal_error("log P has no finite P-Laurent form");
    }
};

namespace detail {

template <class P>
typename P::Series x_block(const P& pol, int l) {
    auto x = pol.zero();
    for (long d : divisors(l)) {
        if (d == l) continue;
        int mu = moebius(l / static_cast<int>(d));
        if (mu == 0) continue;
        x += (pol.p_pow(static_cast<int>(d), 1) * pol.p_pow(l, -1))
                 .shifted(l - static_cast<int>(d))
                 .scaled(mu);
    }
    return x;
}

template <class P>
std::vector<typename P::Series> x_powers(const P& pol, const typename P::Series& x) {
    std::vector<typename P::Series> pows{pol.one()};
    if (x.is_zero()) return pows;
    auto xp = x;
    while (!xp.is_zero()) {
        pows.push_back(xp);
        xp = (xp * x).truncated(pol.g_max, pol.n_max);
    }
    return pows;
}

// The double sum over k >= 1, j >= 0 shared by D_l and E_l. The hbar
// valuations l*k (from (l hbar^l / P_l)^k) and ceil(l/2)*j (from X_l^j) make
// the cutoffs k <= g_max/l and the power list finite; both are complete by
// the valuation bounds.
template <class P>
typename P::Series bernoulli_tail(const P& pol, int l,
                                  const std::vector<typename P::Series>& xpow,
                                  bool trigamma) {
    auto acc = pol.zero();
    for (int k = 1; l * k <= pol.g_max; ++k) {
        Rat c = trigamma ? bernoulli(k - 1) : bernoulli(k) / k;
        if (c == 0) continue;
        Int lk = 1;
        for (int i = 0; i < k; ++i) lk *= l;
        auto q = pol.p_pow(l, -k).shifted(l * k).scaled(Rat(lk) * c);
        for (std::size_t j = 0; j < xpow.size(); ++j) {
            auto term = q * xpow[j];
            if (term.is_zero()) continue;
            acc -= term.scaled(binomial(Int(-k), static_cast<unsigned long>(j)));
        }
    }
    return acc;
}

template <class P>
typename P::Series d_block(const P& pol, int l, const std::vector<typename P::Series>& xpow) {
    auto acc = pol.zero();
    for (std::size_t j = 1; j < xpow.size(); ++j)
        acc -= xpow[j].scaled(Rat((j % 2 == 0) ? 1 : -1) / Rat(static_cast<long>(j)));
    acc += bernoulli_tail(pol, l, xpow, false);
    return acc;
}

template <class P>
typename P::Series e_block(const P& pol, int l, const std::vector<typename P::Series>& xpow) {
    return bernoulli_tail(pol, l, xpow, true);
}

// S = -hbar/P_1 + sum_l mu(l)/l (log P_l + D_l); the log part is only
// present in expanded rings (and only for l <= n_max).
template <class P>
typename P::Series s_sum(const P& pol, bool with_logs) {
    int l_hi = std::max(2 * pol.g_max, with_logs ? pol.n_max : 0);
    std::function<typename P::Series(std::size_t)> one_l = [&](std::size_t idx) {
        int l = static_cast<int>(idx) + 1;
        int mu = moebius(l);
        if (mu == 0) return pol.zero();
        auto acc = pol.zero();
        if (with_logs) acc += pol.log_P(l);
        if (l <= 2 * pol.g_max) {
            auto xpow = x_powers(pol, x_block(pol, l));
            acc += d_block(pol, l, xpow);
        }
        return acc.scaled(rat(mu, l));
    };
    auto parts = parallel_map<typename P::Series>(static_cast<std::size_t>(l_hi), one_l);
    auto s = (pol.hbar(1) * pol.p_pow(1, -1)).scaled(-1);
    for (auto& part : parts) s += part;
    return s;
}

// sum_l mu(l)/l (log P_{2l} + D_{2l}) + sum_l (mu(l)/l)^2 E_l.
template <class P>
typename P::Series tail_sums(const P& pol, bool with_logs) {
    int l_hi = std::max(pol.g_max, with_logs ? pol.n_max / 2 : 0);
    std::function<typename P::Series(std::size_t)> one_l = [&](std::size_t idx) {
        int l = static_cast<int>(idx) + 1;
        auto acc = pol.zero();
        int mu = moebius(l);
        if (mu != 0) {
            auto part = pol.zero();
            if (with_logs) part += pol.log_P(2 * l);
            if (2 * l <= 2 * pol.g_max) {
                auto xpow = x_powers(pol, x_block(pol, 2 * l));
                part += d_block(pol, 2 * l, xpow);
            }
            acc += part.scaled(rat(mu, l));
            if (l <= pol.g_max) {
                auto xpow = x_powers(pol, x_block(pol, l));
                acc += e_block(pol, l, xpow).scaled(rat(1, static_cast<long>(l) * l));
            }
        }
        return acc;
    };
    auto parts = parallel_map<typename P::Series>(static_cast<std::size_t>(l_hi), one_l);
    auto t = pol.zero();
    for (auto& part : parts) t += part;
    return t;
}

template <class P>
typename P::Series omega2_assemble(const P& pol) {
    auto s = s_sum(pol, true);
    auto bracket = s * s + tail_sums(pol, true) - pol.hbar(2) * pol.p_pow(1, -2);
    auto omega = ((pol.hbar(1) - pol.one()) * pol.p_pow(1, 1) * bracket).scaled(rat(1, 2)) -
                 pol.hbar(1) + (pol.hbar(2) - pol.one()) * pol.p_pow(1, 1) +
                 (pol.p_pow(1, 2) + pol.p_pow(2, 1)).scaled(rat(1, 2));
    if (omega.ceiling() < pol.g_max)
        throw internal_error("omega_2 assembly lost hbar precision");
    if (omega.valuation_floor() < 0)
        throw internal_error("omega_2 acquired negative hbar powers");
    return omega.truncated(pol.g_max, pol.n_max);
}

}  // namespace detail

// X_l in the expanded (hbar, p) ring; X_1 = 0 and val(X_l) >= l/2.
inline MSeries x_series(int l, const Weight2Config& cfg) {
    return detail::x_block(ExpandedPolicy{cfg.g_max, cfg.n_max}, l);
}

// The l-th intermediate with the hbar^{-d} tail cleared: l hbar^l Z_l equals
// prefactor * (1 + X_l) with prefactor P_l.
struct ZBlock {
    int l;
    PLaurent prefactor;  // P_l
    MSeries x;           // X_l expanded
};

inline ZBlock z_ell(int l, const Weight2Config& cfg) {
    if (l < 1) throw usage_error("z_ell needs l >= 1");
    return ZBlock{l, PLaurent::monomial(LMono::var(l, 1)), x_series(l, cfg)};
}

// log(l hbar^l Z_l) + psi_0(-Z_l), expanded: log P_l + D_l.
inline MSeries psi0_block(int l, const Weight2Config& cfg) {
    ExpandedPolicy pol{cfg.g_max, cfg.n_max};
    auto xpow = detail::x_powers(pol, detail::x_block(pol, l));
    return pol.log_P(l) + detail::d_block(pol, l, xpow);
}

// psi_1(-Z_l), expanded: E_l.
inline MSeries psi1_block(int l, const Weight2Config& cfg) {
    ExpandedPolicy pol{cfg.g_max, cfg.n_max};
    auto xpow = detail::x_powers(pol, detail::x_block(pol, l));
    return detail::e_block(pol, l, xpow);
}

// The generating function: coefficient of hbar^g, weight-n part is the
// equivariant weight-two Euler characteristic for (g, n). Unstable cells are
// asserted to vanish rather than masked.
inline MSeries omega2_closed(const Weight2Config& cfg) {
    MSeries omega = detail::omega2_assemble(ExpandedPolicy{cfg.g_max, cfg.n_max});
    for (auto [g, n] : {std::pair{0, 0}, {0, 1}, {0, 2}, {1, 0}}) {
        if (g > cfg.g_max || n > cfg.n_max) continue;
        if (!omega.at(g, 0).weight_part(n).is_zero())
            throw internal_error("unstable cell (" + std::to_string(g) + "," + std::to_string(n) +
                                 ") is nonzero");
    }
    return omega;
}

// A_g and C_g: coefficients of hbar^g in the log-free parts of the bracket,
// computed exactly in the P-Laurent algebra.
inline LaurentSeries laurent_a_series(int g_max) {
    LaurentPolicy pol{g_max};
    return (detail::s_sum(pol, false) * pol.p_pow(1, 1)).scaled(-1);
}

inline LaurentSeries laurent_c_series(int g_max) {
    LaurentPolicy pol{g_max};
    auto s = detail::s_sum(pol, false);
    auto inner = s * s + detail::tail_sums(pol, false) - pol.hbar(2) * pol.p_pow(1, -2);
    return (inner * pol.p_pow(1, 1)).scaled(rat(-1, 2));
}

inline PLaurent laurent_A(int g) {
    if (g < 1) throw usage_error("A_g needs g >= 1");
    return laurent_a_series(g).at(g, 0);
}

inline PLaurent laurent_C(int g) {
    if (g < 1) throw usage_error("C_g needs g >= 1");
    return laurent_c_series(g).at(g, 0);
}

// sum_l mu(l)/l log P_l and its doubled-index companion.
inline SymPoly moebius_log_sum(int cap) {
    SymPoly acc(cap);
    for (int l = 1; l <= cap; ++l) {
        int mu = moebius(l);
        if (mu == 0) continue;
        acc += sym_log1p(SymPoly::p(l, cap)) * rat(mu, l);
    }
    return acc;
}

inline SymPoly moebius_log_sum_doubled(int cap) {
    SymPoly acc(cap);
    for (int l = 1; 2 * l <= cap; ++l) {
        int mu = moebius(l);
        if (mu == 0) continue;
        acc += sym_log1p(SymPoly::p(2 * l, cap)) * rat(mu, l);
    }
    return acc;
}

// Genus slice assembled from A/C plus the small-genus exceptional terms;
// must match the hbar^g coefficient of omega2_closed.
inline SymPoly genus_slice(int g, const Weight2Config& cfg) {
    int cap = cfg.n_max;
    SymPoly L = moebius_log_sum(cap);
    SymPoly M = moebius_log_sum_doubled(cap);
    SymPoly P1 = PLaurent::monomial(LMono::var(1, 1)).expand(cap);
    SymPoly P2 = PLaurent::monomial(LMono::var(2, 1)).expand(cap);
    SymPoly LLM = (L * L + M) * rat(1, 2);
    if (g == 0) return -(P1 * LLM) - P1 + (P1 * P1 + P2) * rat(1, 2);
    if (g == 1)
        return P1 * LLM + L * laurent_A(1).expand(cap) + laurent_C(1).expand(cap) -
               SymPoly::constant(1, cap);
    SymPoly slice = L * (laurent_A(g) - laurent_A(g - 1)).expand(cap) +
                    (laurent_C(g) - laurent_C(g - 1)).expand(cap);
    if (g == 2) slice += P1;
    return slice;
}

// chi_2(M_g) for g = 0..g_max: the all-p_d-zero specialization.
inline std::vector<Int> chi2_mg_series(int g_max) {
    ScalarSeries omega = detail::omega2_assemble(ScalarPolicy{g_max});
    std::vector<Int> out;
    out.reserve(g_max + 1);
    for (int g = 0; g <= g_max; ++g) {
        Rat c = omega.at(g, 0);
        if (!is_integer(c))
            throw internal_error("non-integral chi_2(M_" + std::to_string(g) + ")");
        out.push_back(to_int(c));
    }
    return out;
}

inline std::vector<int> sign_sequence(int g_max) {
    std::vector<Int> chi = chi2_mg_series(g_max);
    std::vector<int> s;
    s.reserve(chi.size());
    for (const Int& v : chi) s.push_back(sgn(v));
    return s;
}

// Conjectured eventual sign pattern: - for g = 0,1 mod 4, + for g = 2,3
// mod 4, from g = 23 on. Returns the first counterexample, if any.
inline std::optional<int> sign_conjecture_counterexample(int g_max) {
    std::vector<int> s = sign_sequence(g_max);
    for (int g = 23; g <= g_max; ++g) {
        int expect = (g % 4 == 0 || g % 4 == 1) ? -1 : 1;
        if (s[g] != expect) return g;
    }
    return std::nullopt;
}

// Structural constraints on the Laurent monomials of A_g: a single
// denominator P_l^c, numerator variables dividing l, sum of numerator
// exponents at most c + 1, and degree balance g + sum b_i d_i = l c + 1.
// With c = 0 the denominator base l is unconstrained, so only the exponent
// sum and the degree balance remain.
inline bool monomial_shape_ok_a(const LMono& m, int g) {
    std::vector<std::pair<int, int>> num, den;
    for (const auto& [d, e] : m.factors()) (e > 0 ? num : den).push_back({d, std::abs(e)});
    if (den.size() > 1) return false;
    int b_sum = 0, bd_sum = 0;
    for (const auto& [d, b] : num) {
        b_sum += b;
        bd_sum += b * d;
    }
    if (den.empty()) return b_sum <= 1 && g + bd_sum == 1;
    auto [l, c] = den[0];
    for (const auto& [d, b] : num)
        if (l % d != 0) return false;
    return b_sum <= c + 1 && g + bd_sum == l * c + 1;
}

// The C_g analogue allows two denominators; numerator variables must divide
// one of them, with the combined bound b_sum <= c_1 + c_2 + 1 and balance
// g + sum b_i d_i = l_1 c_1 + l_2 c_2 + 1. A missing denominator acts as an
// unconstrained base with exponent zero.
inline bool monomial_shape_ok_c(const LMono& m, int g) {
    std::vector<std::pair<int, int>> num, den;
    for (const auto& [d, e] : m.factors()) (e > 0 ? num : den).push_back({d, std::abs(e)});
    if (den.size() > 2) return false;
    int b_sum = 0, bd_sum = 0, c_sum = 0, balance = 0;
    for (const auto& [d, b] : num) {
        b_sum += b;
        bd_sum += b * d;
    }
    for (const auto& [l, c] : den) {
        c_sum += c;
        balance += l * c;
    }
    for (const auto& [d, b] : num) {
        bool divides_some = den.size() < 2;  // a free base absorbs it
        for (const auto& [l, c] : den)
            if (l % d == 0) divides_some = true;
        if (!divides_some) return false;
    }
    return b_sum <= c_sum + 1 && g + bd_sum == balance + 1;
}

}  // namespace w2
