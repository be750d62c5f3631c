#pragma once

// Undirected graphs with a single exact edge length shared by all edges.
// Self-loops are kept in a separate multiset; they never enter shortest
// paths and each loop adds exactly 1 to its vertex degree (the convention
// the expander regularization relies on).

#include "bilip/rational.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

namespace bilip {

struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // (a, b) with a < b, sorted, unique
    std::vector<int> loops;                  // vertices with self-loops, repeats allowed
    Rational unit = 1;

    void add_edge(int a, int b) {
        if (a == b) {
            loops.push_back(a);
            return;
        }
        if (a > b) std::swap(a, b);
        edges.emplace_back(a, b);
    }

    void canonicalize() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        std::sort(loops.begin(), loops.end());
    }

    int edge_count() const { return static_cast<int>(edges.size()); }

    int loop_count(int v) const {
        return static_cast<int>(std::count(loops.begin(), loops.end(), v));
    }

    std::vector<int> degrees() const {
        std::vector<int> deg(n, 0);
        for (auto [a, b] : edges) {
            deg[a]++;
            deg[b]++;
        }
        for (int v : loops) deg[v]++;
        return deg;
    }

    int max_degree() const {
        int best = 0;
        for (int d : degrees()) best = std::max(best, d);
        return best;
    }

    /// Loop-free adjacency lists (shortest paths ignore self-loops).
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(n);
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        return adj;
    }

    bool has_edge(int a, int b) const {
        if (a > b) std::swap(a, b);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
    }
};

inline void validate_graph(const Graph& g) {
    if (g.n < 0) throw Error("graph: negative vertex count");
    if (g.unit <= 0) throw Error("graph: unit must be positive");
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : g.edges) {
        if (a < 0 || b < 0 || a >= g.n || b >= g.n)
            throw Error("graph: edge endpoint out of range");
        if (a == b) throw Error("graph: self-loop stored in edge list");
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
            throw Error("graph: duplicate edge");
    }
    for (int v : g.loops)
        if (v < 0 || v >= g.n) throw Error("graph: loop vertex out of range");
}

inline Graph complete_graph(int n) {
    Graph g;
    g.n = n;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    g.canonicalize();
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g;
    g.n = n;
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    g.canonicalize();
    return g;
}

inline Graph path_graph(int n) {
    Graph g;
    g.n = n;
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    g.canonicalize();
    return g;
}

}  // namespace bilip
