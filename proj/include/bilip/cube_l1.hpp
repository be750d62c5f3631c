#pragma once

// Explicit integer-coordinate model of the gadgetized Hamming cube S_n in
// l1^{m+n}: one depth-r tree per cube vertex placed at T_r + l*v, one
// axis-parallel path of length l per cube edge, every graph edge a unit
// l1 segment.  Certifies ||x-y||_1 <= d_S(x,y) <= 4*||x-y||_1 exhaustively.

#include "bilip/gadget.hpp"
#include "bilip/pointset.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace bilip {

/// Isometric embedding of tree3(r) into l1^m, m = 3(2^r - 1): the root maps
/// to 0, any other vertex to the 0/1 indicator of its root path (the edge
/// above vertex w is coordinate w-1).
inline std::vector<std::vector<int>> tree_l1_coords(const RootedTree& t) {
    int m = t.graph.n - 1;
    std::vector<std::vector<int>> coords(t.graph.n, std::vector<int>(m, 0));
    for (int v = 1; v < t.graph.n; ++v) {
        coords[v] = coords[t.parent[v]];
        coords[v][v - 1] = 1;
    }
    return coords;
}

struct CubeL1Model {
    int n = 0;       // cube dimension
    int r = 0, l = 0;
    int m = 0;       // tree coordinate count, 3(2^r - 1)
    Graph s;         // the gadgetized cube, unit 1
    std::vector<std::vector<std::int64_t>> coords;  // integer points in l1^{m+n}
    std::vector<int> roots;  // roots[c] = vertex realizing m(c) for cube vertex c
    int tree_size = 0;

    PointSet point_set() const {
        PointSet p;
        p.dim = m + n;
        p.norm = Norm::L1;
        for (int v = 0; v < s.n; ++v) {
            Vec row(coords[v].size());
            for (size_t k = 0; k < row.size(); ++k) row[k] = Rational(coords[v][k]);
            p.points[v] = std::move(row);
        }
        return p;
    }
};

/// Builds S_n with r minimal for n <= 3*2^{r-1} and l from choose_params
/// (so 4r <= l).  Cube vertex c occupies block c*tree_size; the leaf used
/// for direction j is the j-th leaf in ID order at both path ends.
inline CubeL1Model build_model(int n, const Rational& epsilon,
                               std::int64_t cap = kDefaultVertexCap) {
    if (n < 1) throw Error("build_model: n must be >= 1");
    GadgetParams params = choose_params(n, epsilon);
    if (4 * params.r > params.l) throw Error("build_model: need 4r <= l");
    CubeL1Model md;
    md.n = n;
    md.r = params.r;
    md.l = params.l;

    RootedTree tmpl = tree3(params.r);
    md.tree_size = tmpl.graph.n;
    md.m = tmpl.graph.n - 1;
    auto tcoords = tree_l1_coords(tmpl);
    int cube_count = 1 << n;
    check_vertex_cap(static_cast<std::int64_t>(cube_count) * md.tree_size +
                         static_cast<std::int64_t>(cube_count) * n / 2 * (params.l - 1),
                     cap);

    Graph s;
    s.n = cube_count * md.tree_size;
    md.coords.assign(s.n, {});
    auto point_of = [&](int tree_vertex, int cube_vertex, int dir, int step) {
        std::vector<std::int64_t> pt(md.m + n, 0);
        for (int k = 0; k < md.m; ++k) pt[k] = tcoords[tree_vertex][k];
        for (int j = 0; j < n; ++j)
            if (cube_vertex & (1 << j)) pt[md.m + j] = params.l;
        if (dir >= 0) pt[md.m + dir] += step;
        return pt;
    };

    for (int c = 0; c < cube_count; ++c) {
        int base = c * md.tree_size;
        md.roots.push_back(base);
        for (auto [a, b] : tmpl.graph.edges) s.add_edge(base + a, base + b);
        for (int t = 0; t < md.tree_size; ++t) md.coords[base + t] = point_of(t, c, -1, 0);
    }

    // cube edges (c, c + 2^j), enumerated in sorted pair order
    for (int c = 0; c < cube_count; ++c) {
        for (int j = 0; j < n; ++j) {
            if (c & (1 << j)) continue;
            int c2 = c | (1 << j);
            int leaf = tmpl.leaves[j];
            int from = c * md.tree_size + leaf;
            int to = c2 * md.tree_size + leaf;
            int prev = from;
            for (int k = 1; k < params.l; ++k) {
                int mid = s.n++;
                md.coords.push_back(point_of(leaf, c, j, k));
                s.add_edge(prev, mid);
                prev = mid;
            }
            s.add_edge(prev, to);
        }
    }
    s.canonicalize();
    md.s = std::move(s);
    return md;
}

inline std::int64_t l1_dist(const std::vector<std::int64_t>& a,
                            const std::vector<std::int64_t>& b) {
    std::int64_t acc = 0;
    for (size_t k = 0; k < a.size(); ++k) acc += std::llabs(a[k] - b[k]);
    return acc;
}

struct CubeCertificate {
    bool ok = false;
    bool edges_unit_length = false;
    Rational max_ratio;  // max over pairs of d_S / ||x-y||_1
    std::pair<int, int> worst_pair{-1, -1};
    std::int64_t pairs_checked = 0;
    bool exhaustive = true;
    std::string violation;
};

/// Verifies ||x-y||_1 <= d_S(x,y) <= 4*||x-y||_1.  Exhaustive for n <= 3;
/// beyond that a fixed-seed sample of pairs is used.
inline CubeCertificate certify_4_bilipschitz(const CubeL1Model& md,
                                             std::int64_t sample_pairs = 200000) {
    CubeCertificate cert;
    cert.edges_unit_length = true;
    for (auto [a, b] : md.s.edges)
        if (l1_dist(md.coords[a], md.coords[b]) != 1) {
            cert.edges_unit_length = false;
            cert.violation = "edge (" + std::to_string(a) + "," + std::to_string(b) +
                             ") is not a unit segment";
        }
    ScaledMetric ds = apsp(md.s);
    cert.ok = cert.edges_unit_length;
    bool first = true;
    auto feed = [&](int a, int b) {
        std::int64_t l1 = l1_dist(md.coords[a], md.coords[b]);
        std::int64_t d = ds.at(a, b);
        if (d < l1 || d > 4 * l1) {
            cert.ok = false;
            if (cert.violation.empty())
                cert.violation = "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                 "): l1=" + std::to_string(l1) + " d=" + std::to_string(d);
        }
        Rational ratio(d, l1);
        if (first || ratio > cert.max_ratio) {
            cert.max_ratio = ratio;
            cert.worst_pair = {a, b};
            first = false;
        }
        cert.pairs_checked++;
    };
    if (md.n <= 3) {
        for (int a = 0; a < md.s.n; ++a)
            for (int b = a + 1; b < md.s.n; ++b) feed(a, b);
    } else {
        cert.exhaustive = false;
        std::mt19937_64 rng(0x5eedu + md.n);
        for (std::int64_t k = 0; k < sample_pairs; ++k) {
            int a = static_cast<int>(rng() % md.s.n);
            int b = static_cast<int>(rng() % md.s.n);
            if (a != b) feed(std::min(a, b), std::max(a, b));
        }
    }
    return cert;
}

struct CubeEmbeddingReport {
    DistortionReport raw;        // v -> m(v), d_H source, d_S target (both unit 1)
    Rational bilipschitz_c;      // C with l*dH <= dS <= C*l*dH, scale pinned at l
    bool sandwich_ok = false;    // lower >= l and upper <= l+2r
    bool epsilon_ok = false;     // C < 1+epsilon, i.e. (l+2r)/l < 1+epsilon when tight
};

/// Distortion report for the natural embedding H_n -> S_n.  The scale is
/// pinned at l (the lemma's sandwich), so bilipschitz_c = upper/l.
inline CubeEmbeddingReport certify_cube_embedding(const CubeL1Model& md,
                                                  const Rational& epsilon) {
    Graph h = hamming(md.n);
    ScaledMetric dh = apsp(h);
    ScaledMetric ds = apsp(md.s);
    VertexMap f;
    for (int c = 0; c < h.n; ++c) f.pairs[c] = md.roots[c];
    CubeEmbeddingReport rep;
    rep.raw = distortion(f, dh, ds);
    rep.bilipschitz_c = rep.raw.upper / md.l;
    rep.sandwich_ok = rep.raw.lower >= md.l && rep.raw.upper <= md.l + 2 * md.r;
    rep.epsilon_ok = rep.bilipschitz_c < 1 + epsilon;
    return rep;
}

}  // namespace bilip
