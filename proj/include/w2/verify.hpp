#pragma once

#include <random>
#include <string>
#include <vector>

#include "w2/graphs.hpp"
#include "w2/operads.hpp"
#include "w2/pipeline.hpp"
#include "w2/weight2.hpp"

namespace w2 {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

inline MSeries fixed_random_argument(std::mt19937& rng, int ceiling, int wcap) {
    std::uniform_int_distribution<int> nterms(1, 4), t(0, 3), var(1, 3), num(-2, 2), den(1, 2);
    MSeries x(Var::u, ceiling, wcap);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        SymPoly c(wcap);
        c.add_term(PMono::var(var(rng)), rat(num(rng), den(rng)));
        x.add_term(t(rng), 0, c);
    }
    return x;
}

}  // namespace verify_detail

// Exact identity suite: Moebius divisor sums, the Moebius-log collapse, the
// Koszul pairing, the digamma/trigamma series relation, the gamma-function
// recurrence and derivative ladder, and the reduced-BV product identity.
inline std::vector<CheckResult> verify_identities() {
    std::vector<CheckResult> out;

    {
        bool ok = true;
        for (long n = 1; n <= 200 && ok; ++n) {
            int acc = 0;
            for (long d : divisors(n)) acc += moebius(d);
            ok = acc == (n == 1 ? 1 : 0);
        }
        out.push_back({"moebius divisor sum [N=1] for N <= 200", ok, ""});
    }
    {
        int order = 50;
        ScalarSeries acc(Var::x, order, 0);
        for (int l = 1; l <= order; ++l) {
            int mu = moebius(l);
            if (mu == 0) continue;
            acc += ScalarSeries::term(Rat(-1), l, 0, Var::x, order, 0).log1p().scaled(rat(mu, l));
        }
        bool ok = acc.same_content(ScalarSeries::term(Rat(-1), 1, 0, Var::x, order, 0));
        out.push_back({"moebius-log identity to order 50", ok, ""});
    }
    {
        bool ok = plethysm(chi_lie0(12), chi_com(12)) == SymPoly::p(1, 12);
        out.push_back({"chi(Lie_0) o chi(Com) = p_1 to weight 12", ok, ""});
    }
    {
        int order = 20;
        bool ok = true;
        // In x = 1/z: psi_1 - (psi_0' + 1/z) must vanish termwise.
        for (int j = 1; j <= order && ok; ++j) {
            Rat psi1 = (j >= 1) ? Rat((j - 1) % 2 ? -1 : 1) * bernoulli(j - 1) : Rat(0);
            Rat dpsi0 = 0;
            if (j >= 2) {
                Rat psi0_jm1 = Rat((j - 1) % 2 ? 1 : -1) * bernoulli(j - 1) / (j - 1);
                dpsi0 = -Rat(j - 1) * psi0_jm1;
            }
            if (j == 1) dpsi0 += 1;
            ok = psi1 == dpsi0;
        }
        out.push_back({"psi_1 = psi_0' + 1/z to order 20", ok, ""});
    }
    {
        std::mt19937 rng(20240817);
        bool ok = true;
        std::string detail;
        for (int l : {1, 2}) {
            MSeries e = e_laurent(l, 10, 4);
            MSeries lam = lambda_series(l, 10, 4);
            for (int it = 0; it < 3 && ok; ++it) {
                MSeries x = verify_detail::fixed_random_argument(rng, 10, 4);
                MSeries ux = u_eval(l, x);
                for (int p = 1; p <= 3 && ok; ++p) {
                    MSeries lhs = u_eval(l, x + MSeries::constant(p, Var::u, 10, 4));
                    MSeries rhs = ux.scaled(Rat((p % 2 == 0) ? 1 : -1)) * lam.pow(p);
                    for (int m = 0; m < p; ++m)
                        rhs *= x - e + MSeries::constant(m, Var::u, 10, 4).truncated(x.ceiling(), 4);
                    if (auto diff = first_difference(lhs, rhs)) {
                        ok = false;
                        detail = *diff;
                    }
                }
            }
        }
        out.push_back({"gamma recurrence (u <= 10, weight <= 4)", ok, detail});
    }
    {
        std::mt19937 rng(907);
        bool ok = true;
        std::string detail;
        for (int l : {1, 2}) {
            MSeries lam = lambda_series(l, 10, 4);
            MSeries e = e_laurent(l, 10, 4);
            for (int it = 0; it < 2 && ok; ++it) {
                MSeries x = verify_detail::fixed_random_argument(rng, 10, 4);
                MSeries w_unit = MSeries::term(SymPoly::constant(1, 4), 0, 1, Var::u, 10, 4);
                MSeries ud = u_eval(l, x + w_unit);
                MSeries ud1 = u_eval(l, x + w_unit + MSeries::constant(1, Var::u, 10, 4));
                MSeries ux = u_eval(l, x);
                MSeries logpsi = log_lambda_e_minus_x(l, x) + psi0_at(l, x);
                MSeries inv = e_minus_x_inv(l, x);
                MSeries factor = (x - e) * lam.scaled(-1);
                auto check_one = [&](const MSeries& got, const MSeries& want, const char* tag) {
                    if (auto diff = first_difference(got, want)) {
                        ok = false;
                        detail = std::string(tag) + ": " + *diff;
                    }
                };
                check_one(ud.w_coefficient(1), logpsi * ux, "dU");
                check_one(ud.w_coefficient(2).scaled(2),
                          (logpsi * logpsi + psi1_at(l, x)) * ux, "d2U");
                check_one(ud1.w_coefficient(1), (logpsi - inv) * factor * ux, "dU(X+1)");
                MSeries br = logpsi - inv;
                check_one(ud1.w_coefficient(2).scaled(2),
                          (br * br + psi1_at(l, x) - inv * inv) * factor * ux, "d2U(X+1)");
            }
        }
        out.push_back({"derivative ladder identities (u <= 10, weight <= 4)", ok, detail});
    }
    {
        Trunc tr{8, 4};
        auto diff = first_difference(chi_bv0_red(tr), chi_bv0_red_via_quotient(tr));
        out.push_back({"reduced BV product identity (u <= 8, weight <= 4)", !diff.has_value(),
                       diff.value_or("")});
    }
    return out;
}

// Cross-oracle equality of the pipeline recomputation with the closed form.
inline std::vector<CheckResult> verify_pipeline(const Weight2Config& cfg) {
    std::vector<CheckResult> out;
    auto mismatch = pipeline_mismatch(cfg);
    out.push_back({"pipeline = closed form for g <= " + std::to_string(cfg.g_max) + ", n <= " +
                       std::to_string(cfg.n_max),
                   !mismatch.has_value(), mismatch.value_or("")});
    return out;
}

// Brute-force graph enumeration against the generating function.
inline std::vector<CheckResult> verify_oracle() {
    std::vector<CheckResult> out;
    MSeries omega = omega2_closed(Weight2Config{1, 5});
    for (auto [g, n] : {std::pair{0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}}) {
        SymPoly direct = equivariant_euler_x(g, n);
        SymPoly cell = omega.at(g, 0).weight_part(n).truncated(n);
        bool ok = direct == cell;
        std::string name = "enumeration matches cell (" + std::to_string(g) + "," +
                           std::to_string(n) + ")";
        out.push_back({name, ok,
                       ok ? "" : "direct=" + direct.to_string() + " cell=" + cell.to_string()});
    }
    {
        MSeries fg = chi_fG(Trunc{2, 4});
        bool ok = true;
        std::string detail;
        for (int c = 0; c <= 2 && ok; ++c)
            for (int r = 0; r <= 4 && ok; ++r) {
                SymPoly direct = equivariant_euler_fg(c, r);
                SymPoly slice = fg.at(c, 0).weight_part(r).truncated(r);
                if (!(direct == slice)) {
                    ok = false;
                    detail = "C=" + std::to_string(c) + " r=" + std::to_string(r);
                }
            }
        out.push_back({"leg-labeled enumeration matches the gamma-ratio product (C<=2, r<=4)", ok,
                       detail});
    }
    return out;
}

}  // namespace w2
