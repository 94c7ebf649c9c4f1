#include <catch2/catch_amalgamated.hpp>

#include "w2/symfunc.hpp"
#include "w2/weight2.hpp"

using namespace w2;

namespace {

PLaurent pl(std::initializer_list<std::pair<LMono, Rat>> terms) {
    PLaurent f;
    for (const auto& [m, c] : terms) f.add_term(m, c);
    return f;
}

}  // namespace

TEST_CASE("X_l blocks") {
    Weight2Config cfg{6, 4};
    CHECK(x_series(1, cfg).is_zero());

    // X_2 = -hbar P_1 / P_2.
    MSeries x2 = x_series(2, cfg);
    SymPoly want = (PLaurent::monomial(LMono{{1, 1}, {2, -1}}) * rat(-1)).expand(4);
    CHECK(x2.at(1, 0) == want);
    CHECK(x2.valuation_floor() == 1);

    for (int l = 2; l <= 12; ++l) {
        MSeries x = x_series(l, Weight2Config{12, 2});
        if (!x.is_zero()) CHECK(2 * x.valuation_floor() >= l);
    }
}

TEST_CASE("psi blocks at l = 1") {
    Weight2Config cfg{6, 3};
    MSeries b = psi0_block(1, cfg);
    // log P_1 - sum_k B_k/k (hbar/P_1)^k; weight-0 part is -sum B_k/k hbar^k.
    for (int g = 1; g <= 6; ++g) {
        Rat c = b.at(g, 0).constant_part();
        CHECK(c == -bernoulli(g) / g);
    }
    CHECK(b.at(0, 0) == sym_log1p(SymPoly::p(1, 3)));

    MSeries t = psi1_block(1, cfg);
    // Leading term (k=1, j=0) is -hbar/P_1.
    SymPoly lead = (PLaurent::monomial(LMono::var(1, -1)) * rat(-1)).expand(3);
    CHECK(t.at(1, 0) == lead);
    for (int l = 1; l <= 6; ++l) {
        MSeries tl = psi1_block(l, cfg);
        if (!tl.is_zero()) CHECK(tl.valuation_floor() >= l);
    }
}

TEST_CASE("psi series consistency: psi_1 = psi_0' + 1/z") {
    // In x = 1/z: psi_0 = sum_j (-1)^{j+1} B_j/j x^j, psi_1 = sum_j (-1)^j B_j x^{j+1},
    // d/dz = -x^2 d/dx. Order 20 pins B_0 = 1 and the j-alignment; the 1/z
    // coefficient -1/2 pins the B_1 convention against the digamma expansion.
    int order = 20;
    std::vector<Rat> psi0(order + 1, Rat(0)), psi1(order + 1, Rat(0));
    for (int j = 1; j <= order; ++j) psi0[j] = Rat(j % 2 ? 1 : -1) * bernoulli(j) / j;
    for (int j = 0; j + 1 <= order; ++j) psi1[j + 1] = Rat(j % 2 ? -1 : 1) * bernoulli(j);
    // psi_0'(z) in x: -x^2 * d/dx turns x^j into -j x^{j+1}.
    std::vector<Rat> dpsi0(order + 1, Rat(0));
    for (int j = 1; j + 1 <= order; ++j) dpsi0[j + 1] = -Rat(j) * psi0[j];
    dpsi0[1] += 1;  // + 1/z
    for (int j = 0; j <= order; ++j) CHECK(psi1[j] == dpsi0[j]);
    CHECK(psi1[1] == 1);       // trigamma leading 1/z
    CHECK(psi0[1] == rat(-1, 2));  // digamma -1/(2z)
}

TEST_CASE("omega_2 small cells") {
    MSeries omega = omega2_closed(Weight2Config{2, 4});
    // (1,1) cell is p_1 = s_1.
    CHECK(omega.at(1, 0).weight_part(1) == SymPoly::p(1, 4));
    // (0,3) vanishes; (0,4) is s_4 = h_4.
    CHECK(omega.at(0, 0).weight_part(3).is_zero());
    SymPoly h4(4);
    h4.add_term(PMono::var(1, 4), rat(1, 24));
    h4.add_term(PMono{{1, 2}, {2, 1}}, rat(1, 4));
    h4.add_term(PMono::var(2, 2), rat(1, 8));
    h4.add_term(PMono{{1, 1}, {3, 1}}, rat(1, 3));
    h4.add_term(PMono::var(4), rat(1, 4));
    CHECK(omega.at(0, 0).weight_part(4) == h4);
    CHECK(to_schur(omega.at(0, 0).weight_part(4), 4) == SchurExpansion{{{4}, 1}});
    // (1,2) vanishes.
    CHECK(omega.at(1, 0).weight_part(2).is_zero());
}

TEST_CASE("printed Laurent polynomials at small genus") {
    CHECK(laurent_A(1) == pl({{LMono{{1, 2}, {2, -1}}, rat(-1, 2)}, {LMono{}, rat(1, 2)}}));
    CHECK(laurent_C(1) == pl({{LMono{{1, 2}, {2, -1}}, rat(1, 2)}, {LMono{}, rat(1, 2)}}));
    CHECK(laurent_C(2) == pl({{LMono{{1, -1}}, rat(1, 8)},
                              {LMono{{1, 3}, {2, -2}}, rat(1, 8)},
                              {LMono{{1, 1}, {2, 1}, {4, -1}}, rat(-1, 4)}}));
    // chi_2(M_2) = 0: C_2 - C_1 + P_1 vanishes at P = 1.
    PLaurent val = laurent_C(2) - laurent_C(1) + PLaurent::monomial(LMono::var(1, 1));
    CHECK(val.eval_all(rat(1)) == 0);
}

TEST_CASE("n = 0 series spot values") {
    std::vector<Int> chi = chi2_mg_series(12);
    for (int g = 0; g <= 7; ++g) CHECK(chi[g] == 0);
    CHECK(chi[8] == -1);
    CHECK(chi[9] == 4);
    CHECK(chi[10] == -4);
    CHECK(chi[11] == 4);
    CHECK(chi[12] == -7);
}

TEST_CASE("genus slices match the generating function") {
    Weight2Config cfg{4, 4};
    MSeries omega = omega2_closed(cfg);
    for (int g = 0; g <= 4; ++g) {
        SymPoly slice = genus_slice(g, cfg);
        INFO("g = " << g);
        CHECK(slice == omega.at(g, 0));
    }
}

TEST_CASE("z blocks expose the prefactor and the X series") {
    Weight2Config cfg{4, 3};
    ZBlock z2 = z_ell(2, cfg);
    CHECK(z2.prefactor == PLaurent::monomial(LMono::var(2, 1)));
    CHECK(z2.x.same_content(x_series(2, cfg)));
    CHECK(z_ell(1, cfg).x.is_zero());
    CHECK_THROWS_AS(z_ell(0, cfg), usage_error);
}

TEST_CASE("two-tree symmetric square identity") {
    // h_2 composed with the moebius-log sum is (L^2 + M)/2.
    int cap = 6;
    SymPoly L = moebius_log_sum(cap);
    SymPoly lhs = plethysm(h2(cap), L);
    SymPoly rhs = (L * L + moebius_log_sum_doubled(cap)) * rat(1, 2);
    CHECK(lhs == rhs);
}

TEST_CASE("expanded A_1 at weight 2") {
    SymPoly ex = laurent_A(1).expand(2);
    SymPoly want(2);
    want.add_term(PMono::var(1), rat(-1));
    want.add_term(PMono::var(1, 2), rat(-1, 2));
    want.add_term(PMono::var(2), rat(1, 2));
    CHECK(ex == want);
}
