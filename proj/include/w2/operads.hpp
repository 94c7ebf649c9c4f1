#pragma once

#include <map>
#include <utility>

#include "w2/numtheory.hpp"
#include "w2/series.hpp"
#include "w2/symfunc.hpp"

namespace w2 {

// Truncation window for complexity-graded Euler characteristics: exponents of
// the grading variable up to t_max, symmetric-function weight up to n_max.
struct Trunc {
    int t_max;
    int n_max;
};

// chi(Com_1) = exp(sum p_l / l); chi(Com) drops the empty arity.
inline SymPoly chi_com1(int cap) {
    SymPoly arg(cap);
    for (int l = 1; l <= cap; ++l) arg.add_term(PMono::var(l), rat(1, l));
    return sym_exp1(arg);
}

inline SymPoly chi_com(int cap) {
    return chi_com1(cap) - SymPoly::constant(1, cap);
}

inline SymPoly chi_lie(int cap) {
    SymPoly acc(cap);
    for (int l = 1; l <= cap; ++l) {
        int mu = moebius(l);
        if (mu == 0) continue;
        acc -= sym_log1p(-SymPoly::p(l, cap)) * rat(mu, l);
    }
    return acc;
}

inline SymPoly chi_lie0(int cap) {
    SymPoly acc(cap);
    for (int l = 1; l <= cap; ++l) {
        int mu = moebius(l);
        if (mu == 0) continue;
        acc += sym_log1p(SymPoly::p(l, cap)) * rat(mu, l);
    }
    return acc;
}

// E_l = (1/l) sum_{d|l} mu(l/d) u^{-d}, the exponent of the l-th factor in
// the complexity-graded infinite products.
inline MSeries e_laurent(int l, int ceiling, int wcap) {
    MSeries e(Var::u, ceiling, wcap);
    for (long d : divisors(l)) {
        int mu = moebius(l / d);
        if (mu == 0) continue;
        e.add_term(static_cast<int>(-d), 0, SymPoly::constant(rat(mu, l), wcap));
    }
    return e;
}

// binom(E, j) expanded as a polynomial in E before substituting the Laurent
// value, keeping negative powers inside one audited window.
inline MSeries binom_series(const MSeries& e, int j) {
    MSeries acc = MSeries::one(e.tag(), e.ceiling(), e.weight_cap());
    for (int m = 0; m < j; ++m)
        acc *= e - MSeries::constant(m, e.tag(), e.ceiling(), e.weight_cap());
    return acc.scaled(Rat(1) / Rat(factorial(static_cast<unsigned long>(j))));
}

namespace detail {

enum class ProductKind { pois, pois0, bv0, bv0_reduced };

// Factors (1 +- u^l (...) p_l)^{E_l}, expanded binomially. Every non-unit
// term of the l-th factor carries p_l^j with j >= 1, so factors with l > n_max
// are identically 1 within the truncation and the product cut at n_max is
// complete. Negative u-powers appear only inside a factor's assembly; each
// factor is asserted to be a genuine power series before entering the product.
inline MSeries graded_product(ProductKind kind, const Trunc& tr) {
    int work_ceiling = tr.t_max + tr.n_max + 1;
    MSeries acc = MSeries::one(Var::u, work_ceiling, tr.n_max);
    for (int l = 1; l <= tr.n_max; ++l) {
        MSeries e = e_laurent(l, work_ceiling, tr.n_max);
        // Variable part of the factor base: u^l p_l, u^l(1-u^l) p_l, ...
        MSeries base(Var::u, work_ceiling, tr.n_max);
        switch (kind) {
            case ProductKind::pois:
                base.add_term(l, 0, SymPoly::p(l, tr.n_max) * rat(-1));
                break;
            case ProductKind::pois0:
                base.add_term(l, 0, SymPoly::p(l, tr.n_max));
                break;
            case ProductKind::bv0:
            case ProductKind::bv0_reduced:
                base.add_term(l, 0, SymPoly::p(l, tr.n_max));
                base.add_term(2 * l, 0, SymPoly::p(l, tr.n_max) * rat(-1));
                break;
        }
        MSeries factor = MSeries::one(Var::u, work_ceiling, tr.n_max);
        MSeries base_pow = base;
        for (int j = 1; j * l <= tr.n_max; ++j) {
            factor += binom_series(e, j) * base_pow;
            base_pow *= base;
        }
        if (kind == ProductKind::bv0_reduced) {
            SymPoly expml = sym_exp1(SymPoly::p(l, tr.n_max) * rat(-1, l));
            factor *= MSeries::term(expml, 0, 0, Var::u, work_ceiling, tr.n_max);
        }
        if (factor.valuation_floor() < 0)
            throw internal_error("negative u-power survived in product factor l=" +
                                 std::to_string(l));
        acc *= factor;
    }
    if (acc.ceiling() < tr.t_max)
        throw internal_error("graded product lost precision below t_max");
    return acc.truncated(tr.t_max, tr.n_max) -
           MSeries::one(Var::u, tr.t_max, tr.n_max);
}

}  // namespace detail

inline MSeries chi_pois(const Trunc& tr) {
    return detail::graded_product(detail::ProductKind::pois, tr);
}
inline MSeries chi_pois0(const Trunc& tr) {
    return detail::graded_product(detail::ProductKind::pois0, tr);
}
inline MSeries chi_bv0(const Trunc& tr) {
    return detail::graded_product(detail::ProductKind::bv0, tr);
}
inline MSeries chi_bv0_red(const Trunc& tr) {
    return detail::graded_product(detail::ProductKind::bv0_reduced, tr);
}

// Independent route to the reduced characteristic: (chi(BV_0)+1) chi(Com_1)^{-1} - 1.
inline MSeries chi_bv0_red_via_quotient(const Trunc& tr) {
    MSeries bv = chi_bv0(tr) + MSeries::one(Var::u, tr.t_max, tr.n_max);
    // chi(Com_1)^{-1} = exp(-sum p_l / l).
    SymPoly arg(tr.n_max);
    for (int l = 1; l <= tr.n_max; ++l) arg.add_term(PMono::var(l), rat(-1, l));
    SymPoly com1_inv = sym_exp1(arg);
    return bv * MSeries::term(com1_inv, 0, 0, Var::u, tr.t_max, tr.n_max) -
           MSeries::one(Var::u, tr.t_max, tr.n_max);
}

// Two-alphabet symmetric functions (power sums p and q), truncated by total
// weight; only needed for the diagonal bisymmetric sequence.
class BiPoly {
public:
    explicit BiPoly(int cap) : cap_(cap) {}

    using Key = std::pair<PMono, PMono>;

    const std::map<Key, Rat>& terms() const { return terms_; }
    int weight_cap() const { return cap_; }
    bool is_zero() const { return terms_.empty(); }

    Rat coeff(const PMono& p, const PMono& q) const {
        auto it = terms_.find({p, q});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const PMono& p, const PMono& q, const Rat& c) {
        if (c == 0 || p.weight() + q.weight() > cap_) return;
        auto [it, inserted] = terms_.try_emplace(Key{p, q}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    BiPoly operator*(const BiPoly& o) const {
        BiPoly r(std::min(cap_, o.cap_));
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_)
                r.add_term(ka.first * kb.first, ka.second * kb.second, ca * cb);
        return r;
    }

    BiPoly& operator+=(const BiPoly& o) {
        for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
        return *this;
    }

    BiPoly weight_part(int w) const {
        BiPoly r(cap_);
        for (const auto& [k, c] : terms_)
            if (k.first.weight() + k.second.weight() == w) r.terms_.emplace(k, c);
        return r;
    }

    bool operator==(const BiPoly& o) const { return terms_ == o.terms_; }

private:
    int cap_;
    std::map<Key, Rat> terms_;
};

// chi of the diagonal bisymmetric sequence: exp(sum_n p_n q_n / n).
inline BiPoly chi_delta0(int cap) {
    BiPoly arg(cap);
    for (int n = 1; 2 * n <= cap; ++n) arg.add_term(PMono::var(n), PMono::var(n), rat(1, n));
    BiPoly acc(cap);
    acc.add_term(PMono{}, PMono{}, 1);
    BiPoly xp = arg;
    Rat mfac = 1;
    for (long m = 1; !xp.is_zero(); ++m) {
        mfac *= m;
        BiPoly scaled(cap);
        for (const auto& [k, c] : xp.terms()) scaled.add_term(k.first, k.second, c / mfac);
        acc += scaled;
        xp = xp * arg;
    }
    return acc;
}

// Complexity-graded Euler characteristic of graphs with one vertex decorated
// by a symmetric sequence with characteristic chiA: the Lie-decorated pairing
// <chiA o chi(Lie_0), 1 + chi(reduced BV_0)>. The unit term is the empty
// graph's cell, which the reduced characteristic drops but the disconnected
// graph complex contains. The reduced-BV weight-r part has complexity at
// least ceil(r/2), so a weight cap of 2 t_max is needed for the pairing to
// see every contribution up to t_max.
inline MSeries decorated_graph_euler(const SymPoly& chiA, const Trunc& tr) {
    if (tr.n_max < 2 * tr.t_max)
        throw usage_error("decorated_graph_euler needs n_max >= 2 t_max to pair faithfully");
    SymPoly composed = plethysm(chiA.truncated(tr.n_max), chi_lie0(tr.n_max));
    MSeries bv = chi_bv0_red(tr) + MSeries::one(Var::u, tr.t_max, tr.n_max);
    MSeries out(Var::u, tr.t_max, tr.n_max);
    for (const auto& [key, poly] : bv.terms()) {
        Rat acc = 0;
        for (const auto& [m, c] : poly.terms()) {
            Rat fc = composed.coeff(m);
            if (fc != 0) acc += fc * c * Rat(z_factor(m));
        }
        if (acc != 0) out.add_term(key.first, key.second, SymPoly::constant(acc, tr.n_max));
    }
    return out;
}

}  // namespace w2
