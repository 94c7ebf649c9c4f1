#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "w2/series.hpp"

using namespace w2;

namespace {

MSeries random_series(std::mt19937& rng, Var tag, int lo, int hi, int wcap, bool with_w = true) {
    std::uniform_int_distribution<int> nterms(0, 6), t(lo, hi), k(0, with_w ? 2 : 0), var(1, 3),
        expo(1, 2), num(-3, 3), den(1, 3);
    MSeries s(tag, hi, wcap);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        PMono m;
        if (var(rng) % 2) m = PMono::var(var(rng), expo(rng));
        SymPoly c(wcap);
        c.add_term(m, rat(num(rng), den(rng)));
        s.add_term(t(rng), k(rng), c);
    }
    return s;
}

}  // namespace

TEST_CASE("additive and multiplicative identities") {
    std::mt19937 rng(5);
    MSeries f = random_series(rng, Var::hbar, 0, 6, 4);
    CHECK((MSeries::zero(Var::hbar, 6, 4) + f).same_content(f));
    CHECK((f + f.negated()).is_zero());
    CHECK((f * MSeries::one(Var::hbar, 6, 4)).same_content(f.truncated(6, 4)));
}

TEST_CASE("like-term merge across the grading variable") {
    MSeries a = p_series(1, Var::hbar, 5, 3).shifted(1);
    MSeries b = p_series(2, Var::hbar, 5, 3).shifted(1);
    MSeries s = a + b;
    SymPoly want(3);
    want.add_term(PMono::var(1), 1);
    want.add_term(PMono::var(2), 1);
    CHECK(s.at(1, 0) == want);
}

TEST_CASE("w is nilpotent of order three") {
    MSeries w = MSeries::term(SymPoly::constant(1, 4), 0, 1, Var::u, 6, 4);
    CHECK(!(w * w).is_zero());
    CHECK((w * w * w).is_zero());
}

TEST_CASE("mismatched grading tags are rejected") {
    MSeries a = MSeries::one(Var::hbar, 4, 4);
    MSeries b = MSeries::one(Var::u, 4, 4);
    CHECK_THROWS_AS(a + b, usage_error);
    CHECK_THROWS_AS(a * b, usage_error);
}

TEST_CASE("ceiling propagation through Laurent multiplication") {
    // x = u^{-2} exact up to u^6; y = power series exact up to u^6.
    MSeries x = MSeries::constant(1, Var::u, 6, 2).shifted(-2);
    MSeries y = MSeries::one(Var::u, 6, 2) + MSeries::constant(1, Var::u, 6, 2).shifted(6);
    MSeries xy = x * y;
    // Products with a u^{-2} factor are only trustworthy up to 6 - 2 = 4.
    CHECK(xy.ceiling() == 4);
    CHECK(xy.valuation_floor() == -2);
    CHECK(coeff_ops<SymPoly>::constant_part(xy.at(4, 0)) == 1);
    CHECK(coeff_ops<SymPoly>::constant_part(xy.at(-2, 0)) == 1);
}

TEST_CASE("exp1 and log1p are mutually inverse up to truncation") {
    std::mt19937 rng(11);
    for (int it = 0; it < 25; ++it) {
        MSeries x = random_series(rng, Var::u, 1, 5, 4);  // valuation >= 1
        CHECK(x.log1p().exp1().same_content((MSeries::one(Var::u, x.ceiling(), 4) + x).truncated(
            x.log1p().exp1().ceiling(), 4)));
        MSeries e = x.exp1() - MSeries::one(Var::u, x.ceiling(), 4);
        CHECK(e.log1p().same_content(x.truncated(e.log1p().ceiling(), 4)));
    }
}

TEST_CASE("exp1 rejects nonzero constant term") {
    MSeries bad = MSeries::one(Var::u, 4, 4);
    CHECK_THROWS_AS(bad.exp1(), usage_error);
    MSeries laurent = MSeries::constant(1, Var::u, 4, 4).shifted(-1);
    CHECK_THROWS_AS(laurent.exp1(), usage_error);
}

TEST_CASE("exp1 Taylor expansion of p_1") {
    MSeries x = p_series(1, Var::hbar, 2, 2);
    MSeries e = x.exp1();
    SymPoly want(2);
    want.add_term(PMono{}, 1);
    want.add_term(PMono::var(1), 1);
    want.add_term(PMono::var(1, 2), rat(1, 2));
    CHECK(e.at(0, 0) == want);
    CHECK(MSeries::zero(Var::hbar, 3, 3).exp1().same_content(MSeries::one(Var::hbar, 3, 3)));
    CHECK(MSeries::zero(Var::hbar, 3, 3).log1p().is_zero());
}

TEST_CASE("inverse of unit series") {
    MSeries d = p_series(1, Var::u, 5, 3).shifted(1);
    MSeries s = MSeries::one(Var::u, 5, 3) + d;
    CHECK((s * s.inverse()).same_content(MSeries::one(Var::u, 5, 3).truncated((s * s.inverse()).ceiling(), 3)));
}

TEST_CASE("monomial substitution: sign twist, grading shift, frobenius") {
    // p_d -> -p_d on p_1 p_2 keeps the sign (two factors).
    MSeries f(Var::hbar, 4, 4);
    SymPoly c(4);
    c.add_term(PMono{{1, 1}, {2, 1}}, 1);
    f.add_term(0, 0, c);
    MonomialRule negate{[](int d) { return std::make_tuple(d, 0, rat(-1)); }};
    CHECK(substitute_monomial(f, negate).same_content(f));

    // p_d -> hbar^{-d} p_d applied to hbar^3 p_2 gives hbar p_2.
    MSeries g = p_series(2, Var::hbar, 6, 4).shifted(3);
    MonomialRule genus{[](int d) { return std::make_tuple(d, -d, rat(1)); }};
    MSeries gg = substitute_monomial(g, genus);
    CHECK(gg.at(1, 0) == SymPoly::p(2, 4));

    // p_d -> p_{2d} on p_1 + p_3: plethysm by p_2.
    MSeries h = p_series(1, Var::hbar, 2, 6) + p_series(3, Var::hbar, 2, 6);
    MonomialRule frob{[](int d) { return std::make_tuple(2 * d, 0, rat(1)); }};
    MSeries hh = substitute_monomial(h, frob);
    SymPoly want(6);
    want.add_term(PMono::var(2), 1);
    want.add_term(PMono::var(6), 1);
    CHECK(hh.at(0, 0) == want);
}

TEST_CASE("substitution below a declared floor is an error") {
    MSeries g = p_series(2, Var::hbar, 6, 4);  // at hbar^0
    MonomialRule genus{[](int d) { return std::make_tuple(d, -d, rat(1)); }};
    CHECK_THROWS_AS(substitute_monomial(g, genus, 0), usage_error);
}

TEST_CASE("expand_plaurent with a genus exponent rule") {
    PLaurent a1;
    a1.add_term(LMono{{1, 2}, {2, -1}}, rat(-1, 2));
    a1.add_term(LMono{}, rat(1, 2));
    // Place every monomial at hbar^1 (a genus-slice coefficient).
    MSeries s(Var::hbar, 3, 2);
    for (const auto& [m, cc] : a1.terms()) {
        SymPoly ex = PLaurent::monomial(m, cc).expand(2);
        s.add_term(1, 0, ex);
    }
    SymPoly want(2);
    want.add_term(PMono::var(1), rat(-1));
    want.add_term(PMono::var(1, 2), rat(-1, 2));
    want.add_term(PMono::var(2), rat(1, 2));
    CHECK(s.at(1, 0) == want);
}
