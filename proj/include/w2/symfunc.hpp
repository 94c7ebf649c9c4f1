#pragma once

#include <map>

#include "w2/numtheory.hpp"
#include "w2/partitions.hpp"
#include "w2/series.hpp"
#include "w2/sympoly.hpp"

namespace w2 {

// <p^i, p^j> = delta_ij prod_k k^{i_k} i_k!, extended bilinearly.
inline Rat hall_inner(const SymPoly& f, const SymPoly& g) {
    Rat acc = 0;
    for (const auto& [m, c] : f.terms()) {
        Rat gc = g.coeff(m);
        if (gc != 0) acc += c * gc * Rat(z_factor(m));
    }
    return acc;
}

// Plethysm f o g on plain symmetric functions: linear and multiplicative in
// f, with p_d o g substituting p_k -> p_{dk} inside g.
inline SymPoly plethysm(const SymPoly& f, const SymPoly& g) {
    int cap = std::min(f.weight_cap(), g.weight_cap());
    if (cap == kNoWeightCap) throw usage_error("plethysm needs a finite weight cap");
    bool f_unbounded_in_weight = f.weight_cap() < kNoWeightCap && f.max_weight() >= f.weight_cap();
    if (g.constant_part() != 0 && f_unbounded_in_weight)
        throw usage_error("plethysm with constant term against a truncated series is ill-defined");

    std::map<std::pair<int, int>, SymPoly> powers;  // (d, e) -> (p_d o g)^e
    auto frobenius = [&](int d) {
        SymPoly r(cap);
        for (const auto& [m, c] : g.terms()) {
            PMono md;
            for (const auto& [v, e] : m.factors()) md.set(v * d, e);
            r.add_term(md, c);
        }
        return r;
    };
    std::function<const SymPoly&(int, int)> power_of = [&](int d, int e) -> const SymPoly& {
        auto it = powers.find({d, e});
        if (it == powers.end()) {
            SymPoly p = e == 1 ? frobenius(d) : power_of(d, e - 1) * frobenius(d);
            it = powers.emplace(std::pair<int, int>{d, e}, std::move(p)).first;
        }
        return it->second;
    };

    SymPoly acc(cap);
    for (const auto& [m, c] : f.terms()) {
        SymPoly term = SymPoly::constant(c, cap);
        for (const auto& [d, e] : m.factors()) term *= power_of(d, e);
        acc += term;
    }
    return acc;
}

// Graded plethysm: p_d o g additionally raises the grading variable to its
// d-th power inside g.
inline MSeries plethysm(const SymPoly& f, const MSeries& g) {
    int cap = std::min(f.weight_cap(), g.weight_cap());
    if (cap == kNoWeightCap) throw usage_error("plethysm needs a finite weight cap");
    std::map<std::pair<int, int>, MSeries> powers;
    auto frobenius = [&](int d) {
        MSeries scaled = grading_power(g, d).truncated(g.ceiling(), cap);
        MSeries r(g.tag(), scaled.ceiling(), cap);
        for (const auto& [key, poly] : scaled.terms()) {
            SymPoly moved(cap);
            for (const auto& [m, c] : poly.terms()) {
                PMono md;
                for (const auto& [v, e] : m.factors()) md.set(v * d, e);
                moved.add_term(md, c);
            }
            r.add_term(key.first, key.second, moved);
        }
        return r;
    };
    std::function<const MSeries&(int, int)> power_of = [&](int d, int e) -> const MSeries& {
        auto it = powers.find({d, e});
        if (it == powers.end()) {
            MSeries p = e == 1 ? frobenius(d) : power_of(d, e - 1) * frobenius(d);
            it = powers.emplace(std::pair<int, int>{d, e}, std::move(p)).first;
        }
        return it->second;
    };
    MSeries acc(g.tag(), g.ceiling(), cap);
    for (const auto& [m, c] : f.terms()) {
        MSeries term = MSeries::constant(c, g.tag(), g.ceiling(), cap);
        for (const auto& [d, e] : m.factors()) term *= power_of(d, e);
        acc += term;
    }
    return acc;
}

// Virtual multiplicities of irreducibles: sparse Partition -> integer map.
using SchurExpansion = std::map<Partition, Int>;

// Convert a homogeneous weight-n symmetric function to the Schur basis via
// c_lambda = <f, s_lambda> = sum_mu f_mu chi^lambda(mu). Non-integral output
// signals an inconsistency upstream, hence the hard error.
inline SchurExpansion to_schur(const SymPoly& f, int n) {
    for (const auto& [m, c] : f.terms())
        if (m.weight() != n) throw usage_error("to_schur requires a homogeneous input");
    SchurExpansion out;
    for (const Partition& lambda : partitions_of(n)) {
        Rat c = 0;
        for (const auto& [m, fm] : f.terms()) {
            CycleType ct;
            for (const auto& [d, e] : m.factors()) {
                if (static_cast<std::size_t>(d) > ct.counts.size()) ct.counts.resize(d, 0);
                ct.counts[d - 1] = e;
            }
            c += fm * Rat(character(lambda, ct.to_partition()));
        }
        if (c != 0) {
            if (!is_integer(c))
                throw internal_error("non-integral Schur coefficient for s_" +
                                     partition_to_string(lambda));
            out.emplace(lambda, to_int(c));
        }
    }
    return out;
}

inline SymPoly schur_to_powersums(const Partition& lambda, int cap = kNoWeightCap) {
    SymPoly f(cap);
    int n = partition_size(lambda);
    for (const Partition& mu : partitions_of(n)) {
        CycleType ct = CycleType::from_partition(mu);
        f.add_term(ct.monomial(), Rat(character(lambda, mu)) / Rat(z_factor(ct)));
    }
    return f;
}

// h_2 = (p_1^2 + p_2)/2, the symmetric square.
inline SymPoly h2(int cap) {
    SymPoly f(cap);
    f.add_term(PMono::var(1, 2), rat(1, 2));
    f.add_term(PMono::var(2), rat(1, 2));
    return f;
}

// exp and log(1+x) on plain symmetric functions with zero constant term.
inline SymPoly sym_exp1(const SymPoly& x) {
    if (x.weight_cap() == kNoWeightCap) throw usage_error("sym_exp1 needs a finite weight cap");
    if (x.constant_part() != 0) throw usage_error("sym_exp1 requires zero constant term");
    SymPoly acc = SymPoly::constant(1, x.weight_cap());
    SymPoly xp = x;
    Rat mfac = 1;
    for (long m = 1; !xp.is_zero(); ++m) {
        mfac *= m;
        acc += xp * (Rat(1) / mfac);
        xp *= x;
    }
    return acc;
}

inline SymPoly sym_log1p(const SymPoly& x) {
    if (x.weight_cap() == kNoWeightCap) throw usage_error("sym_log1p needs a finite weight cap");
    if (x.constant_part() != 0) throw usage_error("sym_log1p requires zero constant term");
    SymPoly acc(x.weight_cap());
    SymPoly xp = x;
    for (long j = 1; !xp.is_zero(); ++j) {
        acc += xp * (Rat(j % 2 == 1 ? 1 : -1) / Rat(j));
        xp *= x;
    }
    return acc;
}

}  // namespace w2
