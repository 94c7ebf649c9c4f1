#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "w2/operads.hpp"
#include "w2/parallel.hpp"
#include "w2/series.hpp"
#include "w2/weight2.hpp"

namespace w2 {

// Complexity-graded recomputation of the generating function through the
// decorated-graph pipeline: the gamma-ratio series
//     U_l(X, u) = (-lambda_l)^X Gamma(-E_l + X) / Gamma(-E_l),
// with E_l = (1/l) sum_{d|l} mu(l/d) u^{-d} and lambda_l = l u^l (1 - u^l),
// evaluated through its logarithm
//     log U_l = X (log(lambda_l E_l) - 1)
//             + (-E_l + X - 1/2) log(1 - X/E_l) + B(-E_l + X) - B(-E_l),
// where B is the Stirling tail sum_{r>=2} B_r / (r(r-1)) z^{1-r}.
//
// All intermediates live in one Laurent-windowed ring; the honest ceiling
// propagation of GradedSeries plus the final floor assertions audit that
// every negative u-power cancels.

// lambda_l E_l = (1 - u^l) sum_{d|l} mu(l/d) u^{l-d}: a polynomial with
// constant term 1.
inline MSeries lambda_e(int l, int ceiling, int wcap) {
    MSeries core(Var::u, ceiling, wcap);
    for (long d : divisors(l)) {
        int mu = moebius(l / d);
        if (mu == 0) continue;
        core.add_term(static_cast<int>(l - d), 0, SymPoly::constant(mu, wcap));
    }
    MSeries one_minus = MSeries::one(Var::u, ceiling, wcap) -
                        MSeries::one(Var::u, ceiling, wcap).shifted(l);
    return one_minus * core;
}

inline MSeries lambda_series(int l, int ceiling, int wcap) {
    MSeries s(Var::u, ceiling, wcap);
    s.add_term(l, 0, SymPoly::constant(l, wcap));
    s.add_term(2 * l, 0, SymPoly::constant(-l, wcap));
    return s;
}

// 1/E_l = l u^l (sum_{d|l} mu(l/d) u^{l-d})^{-1}: a power series of
// valuation exactly l.
inline MSeries e_inverse(int l, int ceiling, int wcap) {
    MSeries core(Var::u, ceiling, wcap);
    for (long d : divisors(l)) {
        int mu = moebius(l / d);
        if (mu == 0) continue;
        core.add_term(static_cast<int>(l - d), 0, SymPoly::constant(mu, wcap));
    }
    return core.inverse().shifted(l).scaled(l);
}

namespace detail {

struct UContext {
    int l;
    MSeries e;        // E_l, Laurent content at [-l, -1]
    MSeries e_inv;    // 1/E_l, valuation l
    MSeries log_lam_e;  // log(lambda_l E_l)
};

inline UContext u_context(int l, int ceiling, int wcap) {
    MSeries e = e_laurent(l, ceiling, wcap);
    MSeries einv = e_inverse(l, ceiling, wcap);
    MSeries lame = lambda_e(l, ceiling, wcap);
    MSeries log_lame = (lame - MSeries::one(Var::u, ceiling, wcap)).log1p();
    return UContext{l, std::move(e), std::move(einv), std::move(log_lame)};
}

// (1 - X/E_l)^{-j} expanded binomially; j may be any integer.
inline MSeries one_minus_x_over_e_pow(const UContext& ctx, const MSeries& x, int power) {
    MSeries x_over_e = x * ctx.e_inv;
    MSeries acc = MSeries::one(Var::u, x_over_e.ceiling(), x.weight_cap());
    MSeries xp = x_over_e;
    for (long m = 1; !xp.is_zero(); ++m) {
        acc += xp.scaled(binomial(Int(power), static_cast<unsigned long>(m)) *
                         Rat((m % 2 == 0) ? 1 : -1));
        xp = (xp * x_over_e).truncated(xp.ceiling(), x.weight_cap());
    }
    return acc;
}

}  // namespace detail

// log(lambda_l (E_l - X)) as a series: log(lambda_l E_l) + log(1 - X/E_l).
inline MSeries log_lambda_e_minus_x(int l, const MSeries& x) {
    auto ctx = detail::u_context(l, x.ceiling(), x.weight_cap());
    return ctx.log_lam_e + (-(x * ctx.e_inv)).log1p();
}

// psi_0(-E_l + X) = -sum_{j>=1} B_j/j (E_l - X)^{-j}.
inline MSeries psi0_at(int l, const MSeries& x) {
    auto ctx = detail::u_context(l, x.ceiling(), x.weight_cap());
    MSeries acc(Var::u, x.ceiling(), x.weight_cap());
    for (int j = 1; l * j <= x.ceiling(); ++j) {
        Rat bj = bernoulli(j);
        if (bj == 0) continue;
        MSeries term = ctx.e_inv.pow(j) * detail::one_minus_x_over_e_pow(ctx, x, -j);
        acc -= term.scaled(bj / j);
    }
    return acc.truncated(x.ceiling(), x.weight_cap());
}

// psi_1(-E_l + X) = -sum_{j>=0} B_j (E_l - X)^{-j-1}.
inline MSeries psi1_at(int l, const MSeries& x) {
    auto ctx = detail::u_context(l, x.ceiling(), x.weight_cap());
    MSeries acc(Var::u, x.ceiling(), x.weight_cap());
    for (int j = 0; l * (j + 1) <= x.ceiling(); ++j) {
        Rat bj = bernoulli(j);
        if (bj == 0) continue;
        MSeries term = ctx.e_inv.pow(j + 1) * detail::one_minus_x_over_e_pow(ctx, x, -j - 1);
        acc -= term.scaled(bj);
    }
    return acc.truncated(x.ceiling(), x.weight_cap());
}

// (E_l - X)^{-1}, the reciprocal entering the ladder identities.
inline MSeries e_minus_x_inv(int l, const MSeries& x) {
    auto ctx = detail::u_context(l, x.ceiling(), x.weight_cap());
    return ctx.e_inv * detail::one_minus_x_over_e_pow(ctx, x, -1);
}

// U_l(X, u) for a series argument X of valuation >= 0.
inline MSeries u_eval(int l, const MSeries& x) {
    if (x.valuation_floor() < 0) throw usage_error("u_eval argument needs valuation >= 0");
    int ceiling = x.ceiling();
    int wcap = x.weight_cap();
    auto ctx = detail::u_context(l, ceiling, wcap);
    MSeries one = MSeries::one(Var::u, ceiling, wcap);

    MSeries log_one_minus = (-(x * ctx.e_inv)).log1p();
    MSeries log_u = x * (ctx.log_lam_e - one);
    log_u += (x - ctx.e - one.scaled(rat(1, 2))) * log_one_minus;
    // Stirling tail difference B(-E+X) - B(-E), with
    // (-E+X)^{1-r} = (-E)^{1-r} (1 - X/E)^{1-r}.
    for (int r = 2; l * (r - 1) <= ceiling; ++r) {
        Rat br = bernoulli(r);
        if (br == 0) continue;
        MSeries einv_pow = ctx.e_inv.pow(r - 1);
        MSeries diff = detail::one_minus_x_over_e_pow(ctx, x, 1 - r) - one;
        log_u += (einv_pow * diff).scaled(br / Rat((r - 1) * r) * Rat((r % 2 == 0) ? -1 : 1));
    }
    if (log_u.has_terms_below(1))
        throw internal_error("log U_l acquired terms of non-positive u-valuation");
    return log_u.truncated(ceiling, wcap).exp1();
}

// Y_l^{+-} = sum_{d|l} mu(l/d) (u^{-d} +- p_d); u^l Y_l is a power series
// with constant term 1, and Y_l / l = E_l -+ X_0 with X_0 the leg-free
// argument of the l-th gamma-ratio factor.
struct YSeries {
    int l;
    int sign;  // +1 or -1
    MSeries series;
};

inline YSeries y_series(int l, int sign, int ceiling, int wcap) {
    if (sign != 1 && sign != -1) throw usage_error("y_series sign must be +-1");
    MSeries s(Var::u, ceiling, wcap);
    for (long d : divisors(l)) {
        int mu = moebius(l / d);
        if (mu == 0) continue;
        s.add_term(static_cast<int>(-d), 0, SymPoly::constant(mu, wcap));
        s.add_term(0, 0, SymPoly::p(static_cast<int>(d), wcap) * rat(sign * mu));
    }
    return YSeries{l, sign, std::move(s)};
}

// Trigraded characteristic of the enlarged complex, with the epsilon-leg
// variable eliminated at 1 via sum_{d|l} mu(l/d) = [l = 1] and the omega-leg
// count carried by the nilpotent w. Factors with l > 2*ceiling are 1 within
// the window.
inline MSeries fx_argument(int l, int ceiling, int wcap, bool with_legs) {
    MSeries arg(Var::u, ceiling, wcap);
    for (long d : divisors(l)) {
        int mu = moebius(l / d);
        if (mu == 0) continue;
        arg.add_term(0, 0, SymPoly::p(static_cast<int>(d), wcap) * rat(mu, l));
    }
    if (with_legs) {
        if (l == 1) arg.add_term(0, 0, SymPoly::constant(rat(1, 1), wcap));
        arg.add_term(0, 1, SymPoly::constant(rat(moebius(l), l), wcap));
        if (l % 2 == 0) arg.add_term(0, 2, SymPoly::constant(rat(moebius(l / 2), l), wcap));
    }
    return arg;
}

inline MSeries u_product(int ceiling, int wcap, bool with_legs) {
    int l_cut = 2 * ceiling + 1;
    std::function<MSeries(std::size_t)> factor = [&](std::size_t idx) {
        int l = static_cast<int>(idx) + 1;
        return u_eval(l, fx_argument(l, ceiling, wcap, with_legs));
    };
    auto factors = parallel_map<MSeries>(static_cast<std::size_t>(l_cut), factor);
    MSeries acc = MSeries::one(Var::u, ceiling, wcap);
    for (auto& f : factors) acc *= f;
    return acc;
}

// chi^u of the disconnected leg-decorated complex (v = 1, w nilpotent).
inline MSeries chi_fX(const Trunc& tr) { return u_product(tr.t_max, tr.n_max, true); }

// chi^u of the plain disconnected complex (no epsilon/omega legs).
inline MSeries chi_fG(const Trunc& tr) { return u_product(tr.t_max, tr.n_max, false); }

// Connected parts with j = 0,1,2 omega-legs: w-coefficients of the quotient
// by the leg-free factor.
inline std::array<MSeries, 3> conn_parts(const Trunc& tr) {
    MSeries num = u_product(tr.t_max, tr.n_max, true);
    MSeries den = u_product(tr.t_max, tr.n_max, false);
    MSeries ratio = num * den.inverse();
    return {ratio.w_coefficient(0), ratio.w_coefficient(1), ratio.w_coefficient(2)};
}

// chi^u(X-check): the two-omega connected part with the (omega,omega)- and
// (epsilon,omega)-edge components stripped off, each such edge shifting
// degree and complexity by one.
inline MSeries chi_xcheck(const Trunc& tr) {
    auto conn = conn_parts(tr);
    MSeries r = conn[2] + conn[1].shifted(1) + conn[0].shifted(1) + conn[0].shifted(2);
    if (r.valuation_floor() < 1)
        throw internal_error("chi(X-check) must have positive u-valuation");
    return r;
}

// Closed forms of the connected parts from the digamma blocks; used to
// cross-check the w-derivative extraction.
inline MSeries conn_closed_form(int j, const Trunc& tr) {
    int ceiling = tr.t_max, wcap = tr.n_max;
    MSeries p1 = p_series(1, Var::u, ceiling, wcap);
    MSeries conn0 = lambda_series(1, ceiling, wcap) *
                    (e_laurent(1, ceiling, wcap) - p1);  // u(1-u)(u^{-1} - p_1)
    if (j == 0) return conn0;
    int l_cut = 2 * ceiling + 1;
    MSeries bracket1(Var::u, ceiling, wcap);
    bracket1 -= e_minus_x_inv(1, p1);
    for (int l = 1; l <= l_cut; ++l) {
        int mu = moebius(l);
        if (mu == 0) continue;
        MSeries x0 = fx_argument(l, ceiling, wcap, false);
        bracket1 += (log_lambda_e_minus_x(l, x0) + psi0_at(l, x0)).scaled(rat(mu, l));
    }
    if (j == 1) return conn0 * bracket1;
    if (j != 2) throw usage_error("conn_closed_form needs j in {0,1,2}");
    MSeries bracket2 = bracket1 * bracket1;
    bracket2 -= e_minus_x_inv(1, p1).pow(2);
    for (int l = 1; l <= l_cut; ++l) {
        int mu = moebius(l);
        if (mu == 0) continue;
        MSeries x0_2l = fx_argument(2 * l, ceiling, wcap, false);
        bracket2 += (log_lambda_e_minus_x(2 * l, x0_2l) + psi0_at(2 * l, x0_2l)).scaled(rat(mu, l));
        MSeries x0 = fx_argument(l, ceiling, wcap, false);
        bracket2 += psi1_at(l, x0).scaled(rat(1, static_cast<long>(l) * l));
    }
    return (conn0 * bracket2).scaled(rat(1, 2));
}

// The full pipeline: sign twist p -> -p with a global sign, then the
// complexity-to-genus substitution u -> hbar, p_d -> hbar^{-d} p_d, then the
// unstable and one-marked-point corrections.
inline MSeries omega2_pipeline(const Weight2Config& cfg) {
    Trunc tr{cfg.g_max + cfg.n_max, cfg.n_max};
    MSeries xcheck = chi_xcheck(tr);
    MonomialRule negate{[](int d) { return std::make_tuple(d, 0, rat(-1)); }};
    MSeries chi_x = substitute_monomial(xcheck, negate).negated();
    MonomialRule to_genus{[](int d) { return std::make_tuple(d, -d, rat(1)); }};
    MSeries omega = substitute_monomial(chi_x, to_genus, 0).retagged(Var::hbar);
    if (omega.ceiling() < cfg.g_max)
        throw internal_error("pipeline lost hbar precision in the genus substitution");
    omega += p_series(1, Var::hbar, omega.ceiling(), cfg.n_max).shifted(1);
    SymPoly half(cfg.n_max);
    half.add_term(PMono::var(1, 2), rat(1, 2));
    half.add_term(PMono::var(2), rat(1, 2));
    omega += MSeries::term(half, 0, 0, Var::hbar, omega.ceiling(), cfg.n_max);
    return omega.truncated(cfg.g_max, cfg.n_max);
}

// Cell-by-cell comparison against the closed form; the returned string
// pinpoints the first differing (genus, monomial) cell.
inline std::optional<std::string> pipeline_mismatch(const Weight2Config& cfg) {
    MSeries lhs = omega2_pipeline(cfg);
    MSeries rhs = omega2_closed(cfg);
    return first_difference(lhs, rhs);
}

}  // namespace w2
