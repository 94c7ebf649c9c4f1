// Acceptance suite: one check per published claim, each reported as a
// PASS/FAIL line with its runtime.
#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>

#include "golden_data.hpp"
#include "w2/graphs.hpp"
#include "w2/pipeline.hpp"
#include "w2/records.hpp"
#include "w2/verify.hpp"

using namespace w2;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const std::string& name, bool pass, double seconds) {
    std::printf("%s  criterion %d: %s  (%.2fs)\n", pass ? "PASS" : "FAIL", criterion,
                name.c_str(), seconds);
    std::fflush(stdout);
}

}  // namespace

TEST_CASE("criterion 1: published (g,n) table, 66 cells, exact") {
    Stopwatch sw;
    auto records = omega2_records(Weight2Config{10, 5}, "schur");
    bool pass = true;
    for (const auto& rec : records) {
        SchurExpansion cell;
        for (const auto& [lambda, c] : rec.schur_terms) cell.emplace(lambda, c);
        std::string got = schur_cell_to_string(cell);
        std::string want = golden::kTableCells[rec.genus][rec.points];
        if (got != want) {
            pass = false;
            UNSCOPED_INFO("cell (" << rec.genus << "," << rec.points << "): got \"" << got
                                   << "\" want \"" << want << "\"");
        }
    }
    double s = sw.seconds();
    report(1, "(g,n) table matches all 66 cells", pass, s);
    CHECK(pass);
    CHECK(s <= 120.0);
}

TEST_CASE("criterion 2: n = 0 series through g = 50, exact integers") {
    Stopwatch sw;
    auto chi = chi2_mg_series(50);
    bool pass = chi.size() == golden::kChiSeries.size();
    for (std::size_t g = 0; pass && g < chi.size(); ++g)
        pass = chi[g].get_str() == golden::kChiSeries[g];
    double s = sw.seconds();
    report(2, "chi_2(M_g) for g <= 50 matches coefficient-for-coefficient", pass, s);
    CHECK(pass);
    CHECK(s <= 30.0);
}

TEST_CASE("criterion 3: sign pattern for 23 <= g <= 200") {
    Stopwatch sw;
    auto counterexample = sign_conjecture_counterexample(200);
    bool pass = !counterexample.has_value();
    if (!pass) UNSCOPED_INFO("counterexample at g = " << *counterexample);
    double s = sw.seconds();
    report(3, "sign of chi_2(M_g) is (-,-,+,+) on g = (0,1,2,3) mod 4", pass, s);
    CHECK(pass);
    CHECK(s <= 600.0);
}

TEST_CASE("criterion 4: Laurent polynomials A_g, C_g for g <= 5, termwise") {
    Stopwatch sw;
    bool pass = true;
    for (int g = 1; g <= 5; ++g) {
        PLaurent got_a = laurent_A(g), got_c = laurent_C(g);
        PLaurent want_a = golden::laurent_from_terms(golden::kLaurentA[g - 1]);
        PLaurent want_c = golden::laurent_from_terms(golden::kLaurentC[g - 1]);
        if (!(got_a == want_a)) {
            pass = false;
            UNSCOPED_INFO("A_" << g << " differs: " << laurent_to_string(got_a - want_a));
        }
        if (!(got_c == want_c)) {
            pass = false;
            UNSCOPED_INFO("C_" << g << " differs: " << laurent_to_string(got_c - want_c));
        }
    }
    // The full printed term inventory of C_5.
    bool c5_count = laurent_C(5).term_count() == 20;
    if (!c5_count) pass = false;
    // P = 1 consistency pinning the corrected C_4 sign: chi_2(M_g) = 0 for
    // g <= 7 forces C_2(1) = C_1(1) - 1 = 0 and C_g(1) = C_{g-1}(1) for
    // 3 <= g <= 5, i.e. C_2(1) = ... = C_5(1) = 0.
    if (laurent_C(1).eval_all(rat(1)) != 1) pass = false;
    for (int g = 2; g <= 5; ++g) {
        if (laurent_C(g).eval_all(rat(1)) != 0) {
            pass = false;
            UNSCOPED_INFO("C_" << g << " at P = 1 nonzero");
        }
    }
    double s = sw.seconds();
    report(4, "A_g, C_g match the printed lists termwise (C_4 sign pinned at P=1)", pass, s);
    CHECK(pass);
}

TEST_CASE("criterion 5: pipeline oracle equals the closed form, g <= 8, n <= 4") {
    Stopwatch sw;
    auto mismatch = pipeline_mismatch(Weight2Config{8, 4});
    bool pass = !mismatch.has_value();
    if (!pass) UNSCOPED_INFO(*mismatch);
    double s = sw.seconds();
    report(5, "derivation pipeline reproduces every cell exactly", pass, s);
    CHECK(pass);
    CHECK(s <= 300.0);
}

TEST_CASE("criterion 6: brute-force enumeration on small cells") {
    Stopwatch sw;
    bool pass = true;
    for (const auto& check : verify_oracle())

        if (!check.pass) {
            pass = false;
            UNSCOPED_INFO(check.name << ": " << check.detail);
        }
    bool schur_pins = to_schur(equivariant_euler_x(0, 4), 4) == SchurExpansion{{{4}, 1}} &&
                      to_schur(equivariant_euler_x(0, 5), 5) == SchurExpansion{{{3, 2}, -1}};
    pass = pass && schur_pins;
    double s = sw.seconds();
    report(6, "graph enumeration matches (0,3),(0,4),(0,5),(1,2),(1,3)", pass, s);
    CHECK(pass);
}

TEST_CASE("criterion 7: exact identity suite") {
    Stopwatch sw;
    bool pass = true;
    for (const auto& check : verify_identities()) {
        if (!check.pass) {
            pass = false;
            UNSCOPED_INFO(check.name << ": " << check.detail);
        }
    }
    double s = sw.seconds();
    report(7, "identity suite (moebius, koszul, psi, gamma ladder, reduced BV)", pass, s);
    CHECK(pass);
}

TEST_CASE("criterion 8: structural assertions") {
    Stopwatch sw;
    bool pass = true;
    // No negative hbar powers, unstable cells vanish: asserted inside
    // omega2_closed, so successful construction is the check. Integral Schur
    // coefficients: to_schur throws on fractional output.
    MSeries omega = omega2_closed(Weight2Config{10, 5});
    if (omega.valuation_floor() < 0) pass = false;
    for (int g = 0; g <= 10; ++g)
        for (int n = 0; n <= 5; ++n) (void)to_schur(omega.at(g, 0).weight_part(n), n);
    // Monomial shapes of Cor-type constraints for all A_g, C_g with g <= 8.
    LaurentSeries a = laurent_a_series(8), c = laurent_c_series(8);
    for (int g = 1; g <= 8; ++g) {
        PLaurent ag = a.at(g, 0), cg = c.at(g, 0);
        for (const auto& [m, coeff] : ag.terms())
            if (!monomial_shape_ok_a(m, g)) {
                pass = false;
                UNSCOPED_INFO("A_" << g << " monomial " << m.to_string() << " out of shape");
            }
        for (const auto& [m, coeff] : cg.terms())
            if (!monomial_shape_ok_c(m, g)) {
                pass = false;
                UNSCOPED_INFO("C_" << g << " monomial " << m.to_string() << " out of shape");
            }
    }
    // The n = 0 column starts exactly at hbar^8.
    auto chi = chi2_mg_series(8);
    for (int g = 0; g <= 7; ++g)
        if (chi[g] != 0) pass = false;
    if (chi[8] != -1) pass = false;
    double s = sw.seconds();
    report(8, "no negative powers, unstable cells vanish, shapes hold to g = 8", pass, s);
    CHECK(pass);
}
