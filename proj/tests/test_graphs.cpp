#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "w2/graphs.hpp"
#include "w2/pipeline.hpp"
#include "w2/weight2.hpp"

using namespace w2;

namespace {

DecoratedGraph theta_graph() {
    DecoratedGraph g;
    g.internal_count = 2;
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.add_edge(0, 1);
    g.normalize();
    return g;
}

// Independent generate-and-filter enumeration of the weight-two generators:
// every subset of the complete graph on the fixed vertex set, filtered by
// the definition, deduplicated by canonical key. Exercised on small (g, n)
// to certify the structured enumerator's completeness.
int brute_force_x_class_count(int g, int n) {
    using Key = std::tuple<int, std::vector<int>, std::vector<std::pair<int, int>>>;
    std::set<Key> keys;
    int v_hi = 2 * g + n - 2;
    for (int v_int = 0; v_int <= v_hi; ++v_int) {
        for (int k = 0; v_int + k <= v_hi; ++k) {
            DecoratedGraph base;
            base.internal_count = v_int;
            for (int j = 1; j <= n; ++j) base.external.push_back(j);
            base.external.push_back(kOmega);
            base.external.push_back(kOmega);
            for (int j = 0; j < k; ++j) base.external.push_back(kEps);
            int nv = base.vertex_count();
            std::vector<std::pair<int, int>> all_pairs;
            for (int a = 0; a < nv; ++a)
                for (int b = a + 1; b < nv; ++b) all_pairs.push_back({a, b});
            int e_total = g + v_int + n;
            if (e_total < 0 || e_total > static_cast<int>(all_pairs.size())) continue;
            std::vector<int> pick(all_pairs.size(), 0);
            std::fill(pick.end() - e_total, pick.end(), 1);
            do {
                DecoratedGraph cand = base;
                for (std::size_t i = 0; i < all_pairs.size(); ++i)
                    if (pick[i]) cand.edges.push_back(all_pairs[i]);
                bool ok = true;
                for (int v = 0; v < v_int && ok; ++v)
                    if (cand.valence(v) < 3) ok = false;
                for (int v = v_int; v < nv && ok; ++v)
                    if (cand.valence(v) != 1) ok = false;
                if (ok) {
                    // No (eps,omega)/(omega,omega) edge components.
                    for (const auto& [a, b] : cand.edges) {
                        if (cand.is_internal(a) || cand.is_internal(b)) continue;
                        int da = cand.decoration(a), db = cand.decoration(b);
                        bool omega_involved = (da == kOmega || db == kOmega);
                        if (omega_involved && !(da > 0 || db > 0)) ok = false;
                    }
                }
                if (ok)
                    ok = graph_detail::every_component_decorated(
                        cand, [](int d) { return d == kEps || d == kOmega; });
                if (ok) {
                    cand.normalize();
                    CanonicalForm cf = canonical_form(cand);
                    keys.insert({cand.internal_count, cand.external, cf.key});
                }
            } while (std::next_permutation(pick.begin(), pick.end()));
        }
    }
    return static_cast<int>(keys.size());
}

}  // namespace

TEST_CASE("weight-two generators at tiny (g, n)") {
    // (0,2): the single two-omega matching, degree 1, trivial automorphisms.
    auto x02 = enumerate_x_generators(0, 2);
    REQUIRE(x02.size() == 1);
    CHECK(x02[0].degree == 1);
    CHECK(x02[0].aut_size == 1);
    SymPoly chi02 = equivariant_euler_x(0, 2);
    SymPoly want(2);
    want.add_term(PMono::var(1, 2), rat(-1, 2));
    want.add_term(PMono::var(2), rat(-1, 2));
    CHECK(chi02 == want);

    // (1,1): the lone candidate has an odd omega swap and represents zero.
    CHECK(enumerate_x_generators(1, 1).empty());
    CHECK(equivariant_euler_x(1, 1).is_zero());

    // (0,3): three classes in degree 2 and three in degree 1.
    auto x03 = enumerate_x_generators(0, 3);
    CHECK(x03.size() == 6);
    int deg1 = 0, deg2 = 0;
    for (const auto& c : x03) (c.degree == 1 ? deg1 : deg2) += 1;
    CHECK(deg1 == 3);
    CHECK(deg2 == 3);
    CHECK(equivariant_euler_x(0, 3).is_zero());
}

TEST_CASE("oracle cells match the generating function") {
    MSeries omega = omega2_closed(Weight2Config{1, 5});
    for (auto [g, n] : {std::pair{0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}}) {
        SymPoly direct = equivariant_euler_x(g, n);
        INFO("(g,n)=(" << g << "," << n << ")");
        CHECK(direct == omega.at(g, 0).weight_part(n).truncated(n));
    }
    CHECK(to_schur(equivariant_euler_x(0, 4), 4) == SchurExpansion{{{4}, 1}});
    CHECK(to_schur(equivariant_euler_x(0, 5), 5) == SchurExpansion{{{3, 2}, -1}});
}

TEST_CASE("enumeration completeness by generate-and-filter") {
    // Both passes count all isomorphism classes, including those that
    // represent zero by an orientation-reversing automorphism.
    for (auto [g, n] : {std::pair{0, 2}, {0, 3}, {1, 1}, {1, 2}}) {
        int brute = brute_force_x_class_count(g, n);
        int structured = static_cast<int>(enumerate_x_classes(g, n, {}, true).size());
        INFO("(g,n)=(" << g << "," << n << ")");
        CHECK(structured == brute);
    }
}

TEST_CASE("disconnected leg-labeled complex against the gamma-ratio product") {
    CHECK(equivariant_euler_fg(0, 0) == SymPoly::constant(1, 0));
    CHECK(equivariant_euler_fg(0, 1).is_zero());

    MSeries fg = chi_fG(Trunc{2, 4});
    for (int c = 0; c <= 2; ++c) {
        for (int r = 0; r <= 4; ++r) {
            SymPoly direct = equivariant_euler_fg(c, r);
            SymPoly slice = fg.at(c, 0).weight_part(r).truncated(4);
            INFO("C=" << c << " r=" << r << " direct=" << direct.to_string()
                      << " product=" << slice.to_string());
            CHECK(direct == slice.truncated(r));
        }
    }
}

TEST_CASE("trace is independent of class storage order") {
    auto classes = enumerate_x_generators(0, 4);
    SymPoly base = graph_detail::equivariant_trace(classes, 4, 4);
    std::mt19937 rng(7);
    for (int it = 0; it < 3; ++it) {
        std::shuffle(classes.begin(), classes.end(), rng);
        CHECK(graph_detail::equivariant_trace(classes, 4, 4) == base);
    }
}

TEST_CASE("automorphism sizes divide the vertex-set factorial") {
    for (auto [g, n] : {std::pair{0, 3}, {0, 4}, {1, 2}}) {
        for (const auto& cls : enumerate_x_generators(g, n)) {
            Int vfac = factorial(static_cast<unsigned long>(cls.rep.vertex_count()));
            CHECK(vfac % Int(static_cast<long>(cls.aut_size)) == 0);
        }
    }
}

TEST_CASE("core computation") {
    // omega-rooted tree: one internal vertex with legs omega, eps, eps.
    DecoratedGraph tree;
    tree.internal_count = 1;
    tree.external = {kOmega, kEps, kEps};
    tree.add_edge(0, 1);
    tree.add_edge(0, 2);
    tree.add_edge(0, 3);
    tree.normalize();
    // Numbered-leg variant: legs 1, 2 and an omega root.
    DecoratedGraph tree2;
    tree2.internal_count = 1;
    tree2.external = {1, 2, kOmega};
    tree2.add_edge(0, 1);
    tree2.add_edge(0, 2);
    tree2.add_edge(0, 3);
    tree2.normalize();
    DecoratedGraph core2 = core_of(tree2);
    CHECK(core2.internal_count == 0);
    CHECK(core2.external == std::vector<int>{kOmega});
    CHECK(core2.edges.empty());

    // Idempotence and the theta graph being its own core.
    DecoratedGraph theta = theta_graph();
    CHECK(core_of(theta).edges == theta.edges);
    DecoratedGraph c = core_of(tree2);
    CHECK(core_of(c).external == c.external);

    // Subdivided theta smooths back to theta.
    DecoratedGraph subdiv;
    subdiv.internal_count = 3;  // 0,1 theta vertices; 2 subdivides one edge
    subdiv.add_edge(0, 1);
    subdiv.add_edge(0, 1);
    subdiv.add_edge(0, 2);
    subdiv.add_edge(1, 2);
    subdiv.normalize();
    DecoratedGraph sc = core_of(subdiv);
    CHECK(sc.internal_count == 2);
    CHECK(sc.edges == theta.edges);
}

TEST_CASE("theta core contribution") {
    DecoratedGraph theta = theta_graph();
    auto auts = core_automorphisms(theta);
    CHECK(auts.size() == 12);

    PLaurent raw = core_contribution(theta, CoreNormalization::raw_sum);
    PLaurent want;
    want.add_term(LMono{{1, -1}}, 1);
    want.add_term(LMono{{1, 1}, {2, -1}}, 6);
    want.add_term(LMono{{1, 2}, {3, -1}}, 2);
    want.add_term(LMono{{1, 3}, {2, -2}}, 1);
    want.add_term(LMono{{2, 1}, {3, 1}, {6, -1}}, 2);
    CHECK(raw == want);

    PLaurent avg = core_contribution(theta, CoreNormalization::aut_average);
    CHECK(avg.coeff(LMono{{1, -1}}) == rat(1, 12));

    // Every theta monomial fits the two-denominator shape at genus 2, and
    // the 1/(c P_1)-type term matches the 1/(8 P_1) seen in C_2.
    for (const auto& [m, c] : raw.terms()) CHECK(monomial_shape_ok_c(m, 2));
    CHECK(laurent_C(2).coeff(LMono{{1, -1}}) == rat(1, 8));
}

TEST_CASE("debug dump format") {
    auto x02 = enumerate_x_generators(0, 2);
    REQUIRE(x02.size() == 1);
    CHECK(x02[0].rep.dump_line() == "V 0 L 1 2 w w E 0-2 1-3");
}
