#pragma once

// Degree-3 reduction: every vertex becomes a depth-r rooted tree (root
// m(v), 3*2^{r-1} leaves), every edge becomes a length-l path joining two
// leaves, with leaves at a vertex used at most once.  The exact distance
// sandwich  l*dG(u,v) <= dM(m(u),m(v)) <= (l+2r)*dG(u,v)  is certified by
// exhaustive BFS, never assumed.

#include "bilip/families.hpp"
#include "bilip/metric.hpp"

#include <map>
#include <string>
#include <vector>

namespace bilip {

struct GadgetParams {
    int r = 1;          // tree depth
    int l = 1;          // path length
    Rational epsilon;   // target stretch bound, (l+2r)/l < 1+epsilon
    int delta_g = 1;    // max degree of the input the params were chosen for
};

inline void validate_params(const GadgetParams& p) {
    if (p.r < 1 || p.l < 1) throw Error("gadget params: r and l must be positive");
    if (p.epsilon <= 0) throw Error("gadget params: epsilon must be positive");
    if (3 * (std::int64_t(1) << (p.r - 1)) < p.delta_g)
        throw Error("gadget params: 3*2^{r-1} < max degree");
    if (Rational(p.l + 2 * p.r, p.l) >= 1 + p.epsilon)
        throw Error("gadget params: (l+2r)/l >= 1+epsilon");
}

/// Minimal r with 3*2^{r-1} >= delta_g, minimal l with (l+2r)/l < 1+epsilon,
/// then l raised to at least 4r.
inline GadgetParams choose_params(int delta_g, const Rational& epsilon) {
    if (delta_g < 1) throw Error("choose_params: max degree must be >= 1");
    if (epsilon <= 0) throw Error("choose_params: epsilon must be positive");
    GadgetParams p;
    p.delta_g = delta_g;
    p.epsilon = epsilon;
    p.r = 1;
    while (3 * (std::int64_t(1) << (p.r - 1)) < delta_g) p.r++;
    // (l+2r)/l < 1+eps  <=>  l > 2r/eps
    Rational bound = Rational(2 * p.r) / epsilon;
    BigInt l = rat_num(bound) / rat_den(bound) + 1;  // floor + 1: least integer > bound
    BigInt floor4r = BigInt(4) * p.r;
    if (l < floor4r) l = floor4r;
    p.l = l.convert_to<int>();
    validate_params(p);
    return p;
}

struct GadgetResult {
    Graph m;
    VertexMap f;  // v -> m(v)
    GadgetParams params;
    // (vertex, neighbor) -> global leaf ID carrying the path end for that edge
    std::map<std::pair<int, int>, int> leaf_assignment;
    int tree_size = 0;  // vertices per rooted tree block
};

/// Applies the transform to an unweighted simple graph (unit must be 1).
inline GadgetResult transform(const Graph& g, const GadgetParams& params,
                              std::int64_t cap = kDefaultVertexCap) {
    validate_params(params);
    if (g.unit != 1)
        throw Error("transform: input must have unit edge length (got " +
                    rational_to_string(g.unit) + ")");
    if (!g.loops.empty()) throw Error("transform: input must be loop-free");
    auto deg = g.degrees();
    std::int64_t leaf_budget = 3 * (std::int64_t(1) << (params.r - 1));
    for (int v = 0; v < g.n; ++v)
        if (deg[v] > leaf_budget)
            throw Error("transform: vertex " + std::to_string(v) + " has degree " +
                        std::to_string(deg[v]) + " > 3*2^{r-1} = " +
                        std::to_string(leaf_budget));

    RootedTree tmpl = tree3(params.r);
    int ts = tmpl.graph.n;
    check_vertex_cap(static_cast<std::int64_t>(g.n) * ts +
                         static_cast<std::int64_t>(g.edge_count()) * (params.l - 1),
                     cap);

    GadgetResult res;
    res.params = params;
    res.tree_size = ts;
    Graph m;
    m.n = g.n * ts;
    for (int v = 0; v < g.n; ++v) {
        int base = v * ts;
        for (auto [a, b] : tmpl.graph.edges) m.add_edge(base + a, base + b);
        res.f.pairs[v] = base;
    }

    // leaves in ID order per block; incident edges sorted by neighbor ID
    int first_leaf = ts - static_cast<int>(tmpl.leaves.size());
    std::vector<int> used(g.n, 0);
    auto adj = g.adjacency();
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    for (int v = 0; v < g.n; ++v)
        for (int w : adj[v])
            res.leaf_assignment[{v, w}] = v * ts + first_leaf + used[v]++;

    for (auto [u, v] : g.edges) {
        int from = res.leaf_assignment.at({u, v});
        int to = res.leaf_assignment.at({v, u});
        int prev = from;
        for (int k = 1; k < params.l; ++k) {
            int mid = m.n++;
            m.add_edge(prev, mid);
            prev = mid;
        }
        m.add_edge(prev, to);
    }
    m.canonicalize();
    res.m = std::move(m);
    return res;
}

struct SandwichReport {
    bool ok = false;
    bool epsilon_ok = false;        // (l+2r)/l < 1+epsilon
    Rational worst_lower;           // min over pairs of dM/dG
    Rational worst_upper;           // max over pairs of dM/dG
    std::pair<int, int> lower_pair{-1, -1};
    std::pair<int, int> upper_pair{-1, -1};
    std::string violation;
};

/// Exhaustively verifies l*dG(u,v) <= dM(m(u),m(v)) <= (l+2r)*dG(u,v).
inline SandwichReport certify_sandwich(const Graph& g, const GadgetResult& res) {
    SandwichReport rep;
    ScaledMetric dg = apsp(g);
    ScaledMetric dm = apsp(res.m);
    const int l = res.params.l, r = res.params.r;
    rep.epsilon_ok = Rational(l + 2 * r, l) < 1 + res.params.epsilon;
    rep.ok = rep.epsilon_ok;
    if (!rep.epsilon_ok) rep.violation = "(l+2r)/l >= 1+epsilon";
    bool first = true;
    for (int u = 0; u < g.n; ++u) {
        int mu = res.f.at(u);
        for (int v = u + 1; v < g.n; ++v) {
            int mv = res.f.at(v);
            std::int64_t dguv = dg.at(u, v);
            std::int64_t dmuv = dm.at(mu, mv);
            if (dmuv < l * dguv || dmuv > (l + 2 * r) * dguv) {
                rep.ok = false;
                if (rep.violation.empty())
                    rep.violation = "pair (" + std::to_string(u) + "," + std::to_string(v) +
                                    "): dG=" + std::to_string(dguv) +
                                    " dM=" + std::to_string(dmuv);
            }
            Rational ratio(dmuv, dguv);
            if (first || ratio < rep.worst_lower) {
                rep.worst_lower = ratio;
                rep.lower_pair = {u, v};
            }
            if (first || ratio > rep.worst_upper) {
                rep.worst_upper = ratio;
                rep.upper_pair = {u, v};
            }
            first = false;
        }
    }
    return rep;
}

}  // namespace bilip
