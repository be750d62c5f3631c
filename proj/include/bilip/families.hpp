#pragma once

// Deterministic generators for the recursive graph families.  Edge
// replacement processes the previous level's edge list in sorted order and
// appends new vertices, so vertices of level n-1 keep their IDs inside
// level n and the level inclusion map is the identity on old IDs.

#include "bilip/distortion.hpp"
#include "bilip/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bilip {

constexpr std::int64_t kDefaultVertexCap = 10'000'000;

// One diamond replacement: edge (u,v) of the previous level became the
// quadrilateral u,a,v,b.  a is created before b.
struct DiamondStep {
    int u, v, a, b;
};

// One Laakso replacement: edge (u,v) became the 6-vertex gadget
// u,t1,t2,o1,o2,v with edges ut1, t1o1, t1o2, o1t2, o2t2, t2v.
// t1 attaches to u (the smaller endpoint), t2 to v.
struct LaaksoStep {
    int u, v, t1, t2, o1, o2;
};

struct DiamondBuild {
    int level = 0;
    Graph graph;
    std::vector<int> vertices_at_level;          // |V(D_j)| for j = 0..level
    std::vector<std::vector<DiamondStep>> rounds;  // rounds[j], j = 1..level
};

struct LaaksoBuild {
    int level = 0;
    Graph graph;
    std::vector<int> vertices_at_level;
    std::vector<std::vector<LaaksoStep>> rounds;
};

inline void check_vertex_cap(std::int64_t next, std::int64_t cap) {
    if (next > cap)
        throw Error("generator: vertex count " + std::to_string(next) +
                    " exceeds cap " + std::to_string(cap));
}

/// Diamond graph D_n: unit 2^{-n}, each round replaces every edge by a
/// quadrilateral.
inline DiamondBuild diamond(int n, std::int64_t cap = kDefaultVertexCap) {
    if (n < 0) throw Error("diamond: level must be >= 0");
    DiamondBuild b;
    b.level = n;
    Graph g;
    g.n = 2;
    g.add_edge(0, 1);
    g.canonicalize();
    b.vertices_at_level.push_back(2);
    b.rounds.emplace_back();  // round 0 unused
    for (int i = 1; i <= n; ++i) {
        check_vertex_cap(static_cast<std::int64_t>(g.n) + 2ll * g.edge_count(), cap);
        Graph next;
        next.n = g.n;
        std::vector<DiamondStep> steps;
        for (auto [u, v] : g.edges) {
            int a = next.n++;
            int bb = next.n++;
            next.add_edge(u, a);
            next.add_edge(a, v);
            next.add_edge(u, bb);
            next.add_edge(bb, v);
            steps.push_back({u, v, a, bb});
        }
        next.canonicalize();
        g = std::move(next);
        b.rounds.push_back(std::move(steps));
        b.vertices_at_level.push_back(g.n);
    }
    g.unit = pow2(-n);
    b.graph = std::move(g);
    return b;
}

/// Laakso graph L_n: unit 4^{-n}, each round replaces every edge by the
/// 6-vertex gadget.
inline LaaksoBuild laakso(int n, std::int64_t cap = kDefaultVertexCap) {
    if (n < 0) throw Error("laakso: level must be >= 0");
    LaaksoBuild b;
    b.level = n;
    Graph g;
    g.n = 2;
    g.add_edge(0, 1);
    g.canonicalize();
    b.vertices_at_level.push_back(2);
    b.rounds.emplace_back();
    for (int i = 1; i <= n; ++i) {
        check_vertex_cap(static_cast<std::int64_t>(g.n) + 4ll * g.edge_count(), cap);
        Graph next;
        next.n = g.n;
        std::vector<LaaksoStep> steps;
        for (auto [u, v] : g.edges) {
            int t1 = next.n++;
            int t2 = next.n++;
            int o1 = next.n++;
            int o2 = next.n++;
            next.add_edge(u, t1);
            next.add_edge(t1, o1);
            next.add_edge(t1, o2);
            next.add_edge(o1, t2);
            next.add_edge(o2, t2);
            next.add_edge(t2, v);
            steps.push_back({u, v, t1, t2, o1, o2});
        }
        next.canonicalize();
        g = std::move(next);
        b.rounds.push_back(std::move(steps));
        b.vertices_at_level.push_back(g.n);
    }
    g.unit = Rational(1, ipow(4, n));
    b.graph = std::move(g);
    return b;
}

/// Hamming cube H_n on 0/1 strings of length n; vertex ID is the binary
/// value, adjacency is one-coordinate difference, unit 1.
inline Graph hamming(int n, std::int64_t cap = kDefaultVertexCap) {
    if (n < 1) throw Error("hamming: n must be >= 1");
    if (n > 40 || (std::int64_t(1) << n) > cap) throw Error("hamming: cube too large");
    Graph g;
    g.n = 1 << n;
    for (int v = 0; v < g.n; ++v)
        for (int k = 0; k < n; ++k)
            if (!(v & (1 << k))) g.add_edge(v, v | (1 << k));
    g.canonicalize();
    return g;
}

/// Lattice graph on {0..m}^n with edges between tuples at linf-distance 1.
/// Vertex ID is the base-(m+1) value with coordinate 0 least significant.
inline Graph lattice(int m, int n, std::int64_t cap = kDefaultVertexCap) {
    if (m < 1 || n < 1) throw Error("lattice: need m >= 1 and n >= 1");
    std::int64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= (m + 1);
        if (total > cap) throw Error("lattice: (m+1)^n exceeds vertex cap");
    }
    Graph g;
    g.n = static_cast<int>(total);
    std::vector<int> coord(n);
    for (int v = 0; v < g.n; ++v) {
        int x = v;
        for (int i = 0; i < n; ++i) {
            coord[i] = x % (m + 1);
            x /= (m + 1);
        }
        // enumerate neighbors with every coordinate offset in {-1,0,1}
        std::vector<int> off(n, -1);
        while (true) {
            bool all_zero = true, valid = true;
            int w = 0, mult = 1;
            for (int i = 0; i < n; ++i) {
                int c = coord[i] + off[i];
                if (c < 0 || c > m) {
                    valid = false;
                    break;
                }
                if (off[i] != 0) all_zero = false;
                w += c * mult;
                mult *= (m + 1);
            }
            if (valid && !all_zero && v < w) g.add_edge(v, w);
            int i = 0;
            while (i < n && off[i] == 1) off[i++] = -1;
            if (i == n) break;
            off[i]++;
        }
    }
    g.canonicalize();
    return g;
}

struct RootedTree {
    Graph graph;
    int root = 0;
    std::vector<int> leaves;
    std::vector<int> parent;  // parent[root] = -1
    std::vector<int> depth;
};

/// Rooted tree of depth r whose root has 3 children and every other
/// internal vertex has 2; max degree 3, 3*2^{r-1} leaves.  IDs in BFS
/// order (leaves are the last 3*2^{r-1} IDs).
inline RootedTree tree3(int r) {
    if (r < 1) throw Error("tree3: depth must be >= 1");
    if (r > 24) throw Error("tree3: depth too large");
    RootedTree t;
    Graph g;
    g.n = 1;
    t.parent = {-1};
    t.depth = {0};
    std::vector<int> frontier = {0};
    for (int d = 1; d <= r; ++d) {
        std::vector<int> next;
        for (int v : frontier) {
            int kids = (v == 0) ? 3 : 2;
            for (int c = 0; c < kids; ++c) {
                int w = g.n++;
                t.parent.push_back(v);
                t.depth.push_back(d);
                g.add_edge(v, w);
                next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    g.canonicalize();
    t.graph = std::move(g);
    t.root = 0;
    t.leaves = std::move(frontier);
    return t;
}

/// Complete binary tree of depth r in heap order (children of i are 2i+1
/// and 2i+2); max degree 3, unit 1.
inline Graph binary_tree(int r) {
    if (r < 0) throw Error("binary_tree: depth must be >= 0");
    if (r > 24) throw Error("binary_tree: depth too large");
    Graph g;
    g.n = (1 << (r + 1)) - 1;
    for (int v = 0; 2 * v + 2 < g.n; ++v) {
        g.add_edge(v, 2 * v + 1);
        g.add_edge(v, 2 * v + 2);
    }
    g.canonicalize();
    return g;
}

enum class FamilyKind { Diamond, Laakso, Hamming, Lattice, Tree3, BinaryTree };

inline FamilyKind parse_family(const std::string& s) {
    if (s == "diamond") return FamilyKind::Diamond;
    if (s == "laakso") return FamilyKind::Laakso;
    if (s == "hamming") return FamilyKind::Hamming;
    if (s == "lattice") return FamilyKind::Lattice;
    if (s == "tree3") return FamilyKind::Tree3;
    if (s == "binary_tree") return FamilyKind::BinaryTree;
    throw Error("unknown family '" + s + "'");
}

/// Identity map embedding level n into level n+1 (diamond or laakso);
/// isometric by construction, certified separately.
inline VertexMap level_inclusion(FamilyKind kind, int n, std::int64_t cap = kDefaultVertexCap) {
    int old_count;
    switch (kind) {
        case FamilyKind::Diamond:
            old_count = diamond(n, cap).graph.n;
            break;
        case FamilyKind::Laakso:
            old_count = laakso(n, cap).graph.n;
            break;
        default:
            throw Error("level_inclusion: only diamond and laakso levels nest");
    }
    return identity_map(old_count);
}

}  // namespace bilip
