#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "w2/partitions.hpp"
#include "w2/plaurent.hpp"
#include "w2/series.hpp"
#include "w2/symfunc.hpp"

namespace w2 {

// External decorations: positive integers are the numbered labels.
constexpr int kEps = 0;
constexpr int kOmega = -1;

// Finite graph with internal vertices 0..internal_count-1 and external
// (univalent) vertices following them, each carrying a decoration. Edges are
// stored normalized (a <= b); parallel edges are repeated entries and loops
// (a == a) occur only in cores.
struct DecoratedGraph {
    int internal_count = 0;
    std::vector<int> external;  // decorations, vertex id = internal_count + index
    std::vector<std::pair<int, int>> edges;

    int vertex_count() const { return internal_count + static_cast<int>(external.size()); }
    bool is_internal(int v) const { return v < internal_count; }
    int decoration(int v) const { return external[v - internal_count]; }

    void add_edge(int a, int b) {
        if (a > b) std::swap(a, b);
        edges.push_back({a, b});
    }
    void normalize() { std::sort(edges.begin(), edges.end()); }

    int valence(int v) const {
        int d = 0;
        for (const auto& [a, b] : edges) {
            if (a == v) ++d;
            if (b == v) ++d;  // loops count twice
        }
        return d;
    }

    bool has_parallel_edges() const {
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (edges[i] == edges[i - 1]) return true;
        return false;
    }

    // An edge is structural when neither endpoint carries a numbered label.
    bool is_structural(const std::pair<int, int>& e) const {
        auto numbered = [&](int v) { return !is_internal(v) && decoration(v) > 0; };
        return !numbered(e.first) && !numbered(e.second);
    }

    std::vector<int> component_of() const {
        int n = vertex_count();
        std::vector<int> comp(n);
        for (int i = 0; i < n; ++i) comp[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (comp[x] != x) x = comp[x] = comp[comp[x]];
            return x;
        };
        for (const auto& [a, b] : edges) comp[find(a)] = find(b);
        for (int i = 0; i < n; ++i) comp[i] = find(i);
        return comp;
    }

    // Line format: V <internal-count> L <decorations> E <edge list>.
    std::string dump_line() const {
        std::ostringstream os;
        os << "V " << internal_count << " L";
        for (int d : external) {
            os << " ";
            if (d == kEps) os << "e";
            else if (d == kOmega) os << "w";
            else os << d;
        }
        os << " E";
        for (const auto& [a, b] : edges) os << " " << a << "-" << b;
        return os.str();
    }
};

namespace graph_detail {

// Color classes for isomorphism search: internal vertices are mutually
// interchangeable, as are the eps-externals and the omega-externals; each
// numbered label is pinned.
inline std::vector<std::vector<int>> color_classes(const DecoratedGraph& g) {
    std::vector<std::vector<int>> classes;
    std::vector<int> internals;
    for (int v = 0; v < g.internal_count; ++v) internals.push_back(v);
    if (!internals.empty()) classes.push_back(internals);
    std::vector<int> eps, omega;
    for (std::size_t i = 0; i < g.external.size(); ++i) {
        int v = g.internal_count + static_cast<int>(i);
        if (g.external[i] == kEps) eps.push_back(v);
        else if (g.external[i] == kOmega) omega.push_back(v);
        else classes.push_back({v});  // numbered labels are fixed
    }
    if (!eps.empty()) classes.push_back(eps);
    if (!omega.empty()) classes.push_back(omega);
    return classes;
}

inline void permutations_of_classes(const std::vector<std::vector<int>>& classes, int n,
                                    std::vector<std::vector<int>>& out) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::vector<int>> class_perms;
    std::function<void(std::size_t)> rec = [&](std::size_t ci) {
        if (ci == classes.size()) {
            out.push_back(perm);
            return;
        }
        std::vector<int> target = classes[ci];
        std::sort(target.begin(), target.end());
        do {
            for (std::size_t i = 0; i < target.size(); ++i) perm[classes[ci][i]] = target[i];
            rec(ci + 1);
        } while (std::next_permutation(target.begin(), target.end()));
    };
    rec(0);
}

inline std::vector<std::pair<int, int>> apply_perm(const std::vector<std::pair<int, int>>& edges,
                                                   const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        int x = perm[a], y = perm[b];
        if (x > y) std::swap(x, y);
        out.push_back({x, y});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Sign of the permutation induced on a set of simple edges by a vertex map.
inline int edge_perm_sign(const std::vector<std::pair<int, int>>& oriented,
                          const std::vector<int>& perm) {
    std::vector<int> idx(oriented.size());
    for (std::size_t i = 0; i < oriented.size(); ++i) {
        int x = perm[oriented[i].first], y = perm[oriented[i].second];
        if (x > y) std::swap(x, y);
        auto it = std::lower_bound(oriented.begin(), oriented.end(), std::pair<int, int>{x, y});
        if (it == oriented.end() || *it != std::pair<int, int>{x, y})
            throw internal_error("vertex map does not preserve the oriented edge set");
        idx[i] = static_cast<int>(it - oriented.begin());
    }
    return permutation_sign(idx);
}

}  // namespace graph_detail

// Canonical form data: the lexicographically least edge list over all
// decoration-preserving relabelings, one relabeling achieving it, and the
// automorphism group (stabilizer).
struct CanonicalForm {
    std::vector<std::pair<int, int>> key;
    std::vector<int> to_canonical;
    std::vector<std::vector<int>> automorphisms;
};

inline CanonicalForm canonical_form(const DecoratedGraph& g) {
    std::vector<std::vector<int>> perms;
    graph_detail::permutations_of_classes(graph_detail::color_classes(g), g.vertex_count(), perms);
    CanonicalForm cf;
    bool first = true;
    std::vector<std::pair<int, int>> self = g.edges;
    std::sort(self.begin(), self.end());
    for (const auto& perm : perms) {
        auto mapped = graph_detail::apply_perm(g.edges, perm);
        if (first || mapped < cf.key) {
            cf.key = mapped;
            cf.to_canonical = perm;
            first = false;
        }
        if (mapped == self) cf.automorphisms.push_back(perm);
    }
    return cf;
}

// One enumerated isomorphism class.
struct GraphClass {
    DecoratedGraph rep;
    CanonicalForm canon;
    std::vector<std::pair<int, int>> oriented;  // ordered edge set carrying the sign
    int degree = 0;
    bool orientation_reversing = false;  // some automorphism acts by -1
    std::size_t aut_size = 0;
};

struct EnumBounds {
    int max_internal = 7;
    std::size_t max_classes = 200000;
};

// Standard seating: externals ordered as numbered labels ascending, then the
// omega pair, then the eps legs. Canonical keys are only comparable between
// graphs seated this way, since numbered vertices are pinned by id.
inline DecoratedGraph reseat(const DecoratedGraph& g) {
    std::vector<std::size_t> order(g.external.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto rank = [&](std::size_t i) {
        int d = g.external[i];
        if (d > 0) return d;
        return d == kOmega ? 1000000 : 2000000;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rank(a) < rank(b); });
    std::vector<int> newid(g.vertex_count());
    for (int v = 0; v < g.internal_count; ++v) newid[v] = v;
    DecoratedGraph out;
    out.internal_count = g.internal_count;
    for (std::size_t slot = 0; slot < order.size(); ++slot) {
        newid[g.internal_count + static_cast<int>(order[slot])] =
            g.internal_count + static_cast<int>(slot);
        out.external.push_back(g.external[order[slot]]);
    }
    for (const auto& [a, b] : g.edges) out.add_edge(newid[a], newid[b]);
    out.normalize();
    return out;
}

namespace graph_detail {

// Attach or pair the externals of a partially built graph, recursing over
// positions; (omega,omega) and (eps,omega) edges are rejected for the
// weight-two complex.
template <class Sink>
void assign_externals(DecoratedGraph& g, std::size_t pos, int pairs_left, int attach_left,
                      bool forbid_omega_pairs, const Sink& sink) {
    std::size_t n_ext = g.external.size();
    while (pos < n_ext && g.valence(g.internal_count + static_cast<int>(pos)) > 0) ++pos;
    if (pos == n_ext) {
        if (pairs_left == 0 && attach_left == 0) sink(g);
        return;
    }
    int v = g.internal_count + static_cast<int>(pos);
    if (attach_left > 0) {
        for (int i = 0; i < g.internal_count; ++i) {
            g.add_edge(i, v);
            assign_externals(g, pos + 1, pairs_left, attach_left - 1, forbid_omega_pairs, sink);
            g.edges.pop_back();
        }
    }
    if (pairs_left > 0) {
        for (std::size_t j = pos + 1; j < n_ext; ++j) {
            int u = g.internal_count + static_cast<int>(j);
            if (g.valence(u) > 0) continue;
            if (forbid_omega_pairs) {
                int da = g.external[pos], db = g.external[j];
                bool omega_involved = (da == kOmega || db == kOmega);
                bool other_numbered = (da > 0 || db > 0);
                if (omega_involved && !other_numbered) continue;  // (w,w) or (e,w) edge
            }
            g.add_edge(v, u);
            assign_externals(g, pos + 1, pairs_left - 1, attach_left, forbid_omega_pairs, sink);
            g.edges.pop_back();
        }
    }
}

// All multigraphs without loops on `v` internal vertices with `e` edges,
// reported as multiplicity assignments on vertex pairs.
template <class Sink>
void internal_multigraphs(int v, int e, bool allow_parallel, const Sink& sink) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b) pairs.push_back({a, b});
    std::vector<int> mult(pairs.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rest) {
        if (rest == 0) {
            std::vector<std::pair<int, int>> edges;
            for (std::size_t k = 0; k < pairs.size(); ++k)
                for (int m = 0; m < mult[k]; ++m) edges.push_back(pairs[k]);
            sink(edges);
            return;
        }
        if (i == pairs.size()) return;
        int hi = allow_parallel ? rest : 1;
        for (int m = 0; m <= hi; ++m) {
            mult[i] = m;
            rec(i + 1, rest - m);
            mult[i] = 0;
        }
    };
    if (v == 0 || pairs.empty()) {
        if (e == 0) sink({});
        return;
    }
    rec(0, e);
}

inline bool every_component_decorated(const DecoratedGraph& g,
                                      const std::function<bool(int)>& is_anchor) {
    auto comp = g.component_of();
    std::set<int> all, anchored;
    for (int v = 0; v < g.vertex_count(); ++v) {
        all.insert(comp[v]);
        if (!g.is_internal(v) && is_anchor(g.decoration(v))) anchored.insert(comp[v]);
    }
    return all == anchored;
}

}  // namespace graph_detail

// Complete duplicate-free list of generators of the weight-two complex for
// (g, n): simple graphs, internal valence >= 3, externals decorated by
// {1..n, eps, omega x2}, every component holding an eps- or omega-leg, no
// (eps,omega)/(omega,omega) edge components, genus of the joined graph = g.
// Classes with an orientation-reversing automorphism represent zero; they are
// kept only when keep_zero_classes is set (the completeness audit wants them).
inline std::vector<GraphClass> enumerate_x_classes(int g, int n, const EnumBounds& bounds = {},
                                                   bool keep_zero_classes = false) {
    if (g < 0 || n < 0) throw usage_error("enumerate_x_generators needs g, n >= 0");
    int v_int_hi = 2 * g + n - 2;
    if (v_int_hi > bounds.max_internal)
        throw usage_error("enumeration needs " + std::to_string(v_int_hi) +
                          " internal vertices, above the configured bound");
    using ClassKey = std::tuple<int, std::vector<int>, std::vector<std::pair<int, int>>>;
    std::map<ClassKey, GraphClass> classes;

    auto consider = [&](const DecoratedGraph& graph) {
        for (int v = 0; v < graph.internal_count; ++v)
            if (graph.valence(v) < 3) return;
        if (!graph_detail::every_component_decorated(
                graph, [](int d) { return d == kEps || d == kOmega; }))
            return;
        DecoratedGraph norm = graph;
        norm.normalize();
        CanonicalForm cf = canonical_form(norm);
        ClassKey key{norm.internal_count, norm.external, cf.key};
        if (classes.count(key)) return;
        if (classes.size() >= bounds.max_classes)
            throw usage_error("class count exceeded the configured bound");
        GraphClass cls;
        cls.rep = norm;
        cls.canon = cf;
        for (const auto& e : norm.edges)
            if (norm.is_structural(e)) cls.oriented.push_back(e);
        std::sort(cls.oriented.begin(), cls.oriented.end());
        cls.degree = static_cast<int>(cls.oriented.size()) + 1;
        cls.aut_size = cf.automorphisms.size();
        for (const auto& a : cf.automorphisms)
            if (graph_detail::edge_perm_sign(cls.oriented, a) < 0) {
                cls.orientation_reversing = true;
                break;
            }
        classes.emplace(std::move(key), std::move(cls));
    };

    for (int v_int = 0; v_int <= v_int_hi; ++v_int) {
        int e_total = g + v_int + n;
        for (int k = 0; k + v_int <= v_int_hi; ++k) {
            int n_ext = n + 2 + k;
            // Half-edge budget: attachments a and pairings m obey
            // a + 2m = n_ext and e_int + a + m = e_total.
            for (int m = 0; 2 * m <= n_ext; ++m) {
                int a = n_ext - 2 * m;
                int e_int = e_total - a - m;
                if (e_int < 0) continue;
                DecoratedGraph base;
                base.internal_count = v_int;
                for (int j = 1; j <= n; ++j) base.external.push_back(j);
                base.external.push_back(kOmega);
                base.external.push_back(kOmega);
                for (int j = 0; j < k; ++j) base.external.push_back(kEps);
                graph_detail::internal_multigraphs(
                    v_int, e_int, /*allow_parallel=*/false,
                    [&](const std::vector<std::pair<int, int>>& internal_edges) {
                        DecoratedGraph gbuild = base;
                        gbuild.edges = internal_edges;
                        graph_detail::assign_externals(gbuild, 0, m, a,
                                                       /*forbid_omega_pairs=*/true, consider);
                    });
            }
        }
    }

    std::vector<GraphClass> out;
    for (auto& [key, cls] : classes)
        if (keep_zero_classes || !cls.orientation_reversing) out.push_back(std::move(cls));
    return out;
}

inline std::vector<GraphClass> enumerate_x_generators(int g, int n,
                                                      const EnumBounds& bounds = {}) {
    return enumerate_x_classes(g, n, bounds, false);
}

namespace graph_detail {

// Trace of the label permutation sigma on the span of the surviving classes:
// sigma fixes a class up to isomorphism, and the isomorphism's action on the
// oriented edges contributes its sign. The relabeled graph is re-seated so
// that canonical keys are comparable, and the full vertex map
//   h = canon(rep)^{-1} o canon(seated) o seating
// carries the rep's edges onto themselves.
inline SymPoly equivariant_trace(const std::vector<GraphClass>& classes, int n, int weight_cap) {
    SymPoly chi(weight_cap);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<std::vector<int>> label_perms;
    do {
        label_perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    Rat nfac = Rat(factorial(static_cast<unsigned long>(n)));
    for (const auto& sigma : label_perms) {
        Int str = 0;
        for (const auto& cls : classes) {
            DecoratedGraph moved = cls.rep;
            for (auto& d : moved.external)
                if (d > 0) d = sigma[d - 1] + 1;
            // Seat the relabeled graph: label j returns to slot j.
            std::vector<int> seat(moved.vertex_count());
            for (int v = 0; v < moved.internal_count; ++v) seat[v] = v;
            for (std::size_t i = 0; i < moved.external.size(); ++i) {
                int v = moved.internal_count + static_cast<int>(i);
                int d = moved.external[i];
                seat[v] = d > 0 ? moved.internal_count + d - 1 : v;
            }
            DecoratedGraph seated = moved;
            for (std::size_t i = 0; i < moved.external.size(); ++i)
                seated.external[seat[moved.internal_count + static_cast<int>(i)] -
                                moved.internal_count] = moved.external[i];
            seated.edges.clear();
            for (const auto& [x, y] : moved.edges) seated.add_edge(seat[x], seat[y]);
            seated.normalize();
            if (seated.external != cls.rep.external) continue;
            CanonicalForm cf = canonical_form(seated);
            if (cf.key != cls.canon.key) continue;
            std::vector<int> inv(cls.rep.vertex_count());
            for (int v = 0; v < cls.rep.vertex_count(); ++v) inv[cls.canon.to_canonical[v]] = v;
            std::vector<int> h(cls.rep.vertex_count());
            for (int v = 0; v < cls.rep.vertex_count(); ++v) h[v] = inv[cf.to_canonical[seat[v]]];
            int sign = edge_perm_sign(cls.oriented, h);
            str += (cls.degree % 2 == 0 ? 1 : -1) * sign;
        }
        if (str != 0) {
            std::vector<int> sp(sigma);
            chi.add_term(cycle_type_of(sp).monomial(), Rat(str) / nfac);
        }
    }
    return chi;
}

}  // namespace graph_detail

// Direct equivariant Euler characteristic of the weight-two complex at (g, n).
inline SymPoly equivariant_euler_x(int g, int n, const EnumBounds& bounds = {}) {
    auto classes = enumerate_x_generators(g, n, bounds);
    return graph_detail::equivariant_trace(classes, n, n);
}

// Generators of the disconnected leg-labeled complex at a given complexity:
// graphs of complexity C = e - v_int with r numbered legs, no loops, no
// valence-2 vertices, every component holding a leg. Parallel edges are
// enumerated but their classes carry an odd automorphism (swapping the
// bundle) and represent zero.
inline std::vector<GraphClass> enumerate_fg(int complexity, int r,
                                            const EnumBounds& bounds = {}) {
    if (complexity < 0 || r < 0) throw usage_error("enumerate_fg needs C, r >= 0");
    int v_int_hi = std::max(0, 2 * complexity - r);
    if (v_int_hi > bounds.max_internal)
        throw usage_error("enumeration needs " + std::to_string(v_int_hi) +
                          " internal vertices, above the configured bound");
    using ClassKey = std::tuple<int, std::vector<int>, std::vector<std::pair<int, int>>>;
    std::map<ClassKey, GraphClass> classes;

    auto consider = [&](const DecoratedGraph& graph) {
        for (int v = 0; v < graph.internal_count; ++v)
            if (graph.valence(v) < 3) return;
        if (graph.vertex_count() > 0 &&
            !graph_detail::every_component_decorated(graph, [](int d) { return d > 0; }))
            return;
        DecoratedGraph norm = graph;
        norm.normalize();
        CanonicalForm cf = canonical_form(norm);
        ClassKey key{norm.internal_count, norm.external, cf.key};
        if (classes.count(key)) return;
        GraphClass cls;
        cls.rep = norm;
        cls.canon = cf;
        cls.oriented = norm.edges;  // all edges carry the orientation
        cls.degree = static_cast<int>(norm.edges.size());
        cls.aut_size = cf.automorphisms.size();
        if (norm.has_parallel_edges()) {
            cls.orientation_reversing = true;  // swapping a parallel pair is odd
        } else {
            for (const auto& aperm : cf.automorphisms)
                if (graph_detail::edge_perm_sign(cls.oriented, aperm) < 0) {
                    cls.orientation_reversing = true;
                    break;
                }
        }
        classes.emplace(std::move(key), std::move(cls));
    };

    for (int v_int = 0; v_int <= v_int_hi; ++v_int) {
        int e_total = complexity + v_int;
        for (int m = 0; 2 * m <= r; ++m) {
            int a = r - 2 * m;
            int e_int = e_total - a - m;
            if (e_int < 0) continue;
            DecoratedGraph base;
            base.internal_count = v_int;
            for (int j = 1; j <= r; ++j) base.external.push_back(j);
            graph_detail::internal_multigraphs(
                v_int, e_int, /*allow_parallel=*/true,
                [&](const std::vector<std::pair<int, int>>& internal_edges) {
                    DecoratedGraph gbuild = base;
                    gbuild.edges = internal_edges;
                    graph_detail::assign_externals(gbuild, 0, m, a,
                                                   /*forbid_omega_pairs=*/false, consider);
                });
        }
    }

    std::vector<GraphClass> out;
    for (auto& [key, cls] : classes)
        if (!cls.orientation_reversing) out.push_back(std::move(cls));
    return out;
}

// Equivariant Euler characteristic of the complexity-C, r-leg part of the
// disconnected complex; must equal the u^C, weight-r slice of the product of
// gamma-ratio factors.
inline SymPoly equivariant_euler_fg(int complexity, int r, const EnumBounds& bounds = {}) {
    auto classes = enumerate_fg(complexity, r, bounds);
    return graph_detail::equivariant_trace(classes, r, r);
}

// ---------------------------------------------------------------------------
// Cores and their automorphism-weighted Laurent monomials.

// Invariant skeleton of a generator: numbered legs removed, dangling internal
// trees pruned, bivalent internal vertices smoothed. eps/omega externals are
// never removed; an omega-rooted tree collapses to an isolated omega vertex.
inline DecoratedGraph core_of(const DecoratedGraph& input) {
    // Work on a vertex-keep list to keep ids stable during the fixpoint.
    DecoratedGraph g = input;
    bool changed = true;
    auto remove_vertex = [&](int v) {
        std::vector<std::pair<int, int>> kept;
        for (const auto& e : g.edges)
            if (e.first != v && e.second != v) kept.push_back(e);
        g.edges = kept;
        // Reindex: drop vertex v.
        DecoratedGraph h;
        h.internal_count = g.internal_count - (v < g.internal_count ? 1 : 0);
        for (std::size_t i = 0; i < g.external.size(); ++i)
            if (g.internal_count + static_cast<int>(i) != v) h.external.push_back(g.external[i]);
        auto newid = [&](int x) { return x > v ? x - 1 : x; };
        for (const auto& e : g.edges) h.add_edge(newid(e.first), newid(e.second));
        g = h;
    };

    // Numbered legs go first.
    for (int v = g.vertex_count() - 1; v >= g.internal_count; --v)
        if (g.decoration(v) > 0) remove_vertex(v);

    while (changed) {
        changed = false;
        for (int v = 0; v < g.internal_count; ++v) {
            int val = g.valence(v);
            if (val == 0 || val == 1) {
                remove_vertex(v);
                changed = true;
                break;
            }
            if (val == 2) {
                // Merge the two adjacent edges; may create a loop or a
                // parallel edge.
                std::vector<int> nbr;
                for (const auto& [a, b] : g.edges) {
                    if (a == v && b == v) continue;  // loop-only vertices stay
                    if (a == v) nbr.push_back(b);
                    else if (b == v) nbr.push_back(a);
                }
                if (nbr.size() != 2) continue;  // valence 2 via a loop: leave
                std::vector<std::pair<int, int>> kept;
                for (const auto& e : g.edges)
                    if (e.first != v && e.second != v) kept.push_back(e);
                g.edges = kept;
                g.add_edge(nbr[0], nbr[1]);
                remove_vertex(v);
                changed = true;
                break;
            }
        }
    }
    g.normalize();
    return g;
}

// Automorphisms of a core multigraph (loops allowed) as explicit permutations
// of vertices, edges, and half-edges. Half-edges of edge i are 2i and 2i+1.
struct CoreAutomorphism {
    std::vector<int> vertex_perm;
    std::vector<int> edge_perm;
    std::vector<int> half_edge_perm;
};

inline std::vector<CoreAutomorphism> core_automorphisms(const DecoratedGraph& g) {
    std::vector<std::vector<int>> vperms;
    graph_detail::permutations_of_classes(graph_detail::color_classes(g), g.vertex_count(),
                                          vperms);
    std::size_t ne = g.edges.size();
    std::vector<CoreAutomorphism> out;
    for (const auto& vp : vperms) {
        // Group edges into bundles by endpoint pair and match bundles.
        std::map<std::pair<int, int>, std::vector<int>> bundles;
        for (std::size_t i = 0; i < ne; ++i) bundles[g.edges[i]].push_back(static_cast<int>(i));
        bool ok = true;
        for (const auto& [pair, ids] : bundles) {
            int x = vp[pair.first], y = vp[pair.second];
            if (x > y) std::swap(x, y);
            auto it = bundles.find({x, y});
            if (it == bundles.end() || it->second.size() != ids.size()) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        // Enumerate per-bundle bijections and per-loop half-edge flips.
        std::vector<std::pair<std::vector<int>, std::vector<int>>> bundle_list;
        for (const auto& [pair, ids] : bundles) {
            int x = vp[pair.first], y = vp[pair.second];
            if (x > y) std::swap(x, y);
            bundle_list.push_back({ids, bundles.at({x, y})});
        }
        std::vector<int> eperm(ne, -1);
        std::function<void(std::size_t)> rec_bundles = [&](std::size_t bi) {
            if (bi == bundle_list.size()) {
                // Loops also choose a half-edge orientation each.
                std::vector<int> loop_edges;
                for (std::size_t i = 0; i < ne; ++i)
                    if (g.edges[i].first == g.edges[i].second) loop_edges.push_back(static_cast<int>(i));
                std::size_t flips = loop_edges.size();
                for (std::size_t mask = 0; mask < (std::size_t{1} << flips); ++mask) {
                    CoreAutomorphism aut;
                    aut.vertex_perm = vp;
                    aut.edge_perm = eperm;
                    aut.half_edge_perm.assign(2 * ne, -1);
                    bool valid = true;
                    for (std::size_t i = 0; i < ne && valid; ++i) {
                        int j = eperm[i];
                        auto [a, b] = g.edges[i];
                        auto [c, d] = g.edges[j];
                        if (a == b) {
                            // Loop to loop; flip per mask bit.
                            std::size_t li = std::lower_bound(loop_edges.begin(), loop_edges.end(),
                                                              static_cast<int>(i)) -
                                             loop_edges.begin();
                            bool flip = (mask >> li) & 1;
                            aut.half_edge_perm[2 * i] = flip ? 2 * j + 1 : 2 * j;
                            aut.half_edge_perm[2 * i + 1] = flip ? 2 * j : 2 * j + 1;
                        } else {
                            // Half-edge 2i sits at a, 2i+1 at b.
                            if (vp[a] == c && vp[b] == d) {
                                aut.half_edge_perm[2 * i] = 2 * j;
                                aut.half_edge_perm[2 * i + 1] = 2 * j + 1;
                            } else if (vp[a] == d && vp[b] == c) {
                                aut.half_edge_perm[2 * i] = 2 * j + 1;
                                aut.half_edge_perm[2 * i + 1] = 2 * j;
                            } else {
                                valid = false;
                            }
                        }
                    }
                    if (valid) out.push_back(aut);
                }
                return;
            }
            auto [src, dst0] = bundle_list[bi];
            std::vector<int> dst = dst0;
            std::sort(dst.begin(), dst.end());
            do {
                for (std::size_t i = 0; i < src.size(); ++i) eperm[src[i]] = dst[i];
                rec_bundles(bi + 1);
            } while (std::next_permutation(dst.begin(), dst.end()));
        };
        rec_bundles(0);
    }
    return out;
}

enum class CoreNormalization { raw_sum, aut_average };

// sum over automorphisms of P^{cycle type on vertices} P^{cycle type on
// edges} / P^{cycle type on half-edges}, optionally averaged by |Aut|.
inline PLaurent core_contribution(const DecoratedGraph& core,
                                  CoreNormalization norm = CoreNormalization::raw_sum) {
    auto auts = core_automorphisms(core);
    PLaurent acc;
    for (const auto& aut : auts) {
        LMono mono;
        auto add_cycles = [&mono](const std::vector<int>& perm, int sign) {
            CycleType ct = cycle_type_of(perm);
            for (std::size_t k = 0; k < ct.counts.size(); ++k)
                if (ct.counts[k])
                    mono.set(static_cast<int>(k + 1),
                             mono.exponent(static_cast<int>(k + 1)) + sign * ct.counts[k]);
        };
        add_cycles(aut.vertex_perm, +1);
        add_cycles(aut.edge_perm, +1);
        add_cycles(aut.half_edge_perm, -1);
        acc.add_term(mono, 1);
    }
    if (norm == CoreNormalization::aut_average && !auts.empty())
        acc *= Rat(1) / Rat(static_cast<long>(auts.size()));
    return acc;
}

}  // namespace w2
