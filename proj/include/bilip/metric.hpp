#pragma once

// Exact shortest-path metrics.  Distances are stored as non-negative
// integer multiples of a per-metric rational unit; all edges of an input
// graph share one length, so plain BFS per source is exact.

#include "bilip/graph.hpp"
#include "bilip/rational.hpp"

#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace bilip {

struct ScaledMetric {
    int n = 0;
    std::vector<std::int64_t> dist;  // row-major n*n, in units
    Rational unit = 1;

    std::int64_t at(int i, int j) const { return dist[static_cast<size_t>(i) * n + j]; }
    std::int64_t& at(int i, int j) { return dist[static_cast<size_t>(i) * n + j]; }

    /// Distance as an exact rational (units folded in).
    Rational value(int i, int j) const { return Rational(at(i, j)) * unit; }

    std::int64_t diameter_units() const {
        std::int64_t d = 0;
        for (auto x : dist) d = std::max(d, x);
        return d;
    }
};

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

/// Hop counts from one source; unreachable vertices get kUnreached.
inline std::vector<std::int64_t> bfs_from(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<std::int64_t> d(adj.size(), kUnreached);
    std::queue<int> q;
    d[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v]) {
            if (d[w] == kUnreached) {
                d[w] = d[v] + 1;
                q.push(w);
            }
        }
    }
    return d;
}

/// All-pairs shortest paths in edge units.  Errors on disconnected input,
/// naming two unreachable vertices.
inline ScaledMetric apsp(const Graph& g) {
    if (g.n <= 0) throw Error("apsp: empty graph");
    if (static_cast<std::uint64_t>(g.n) * g.n > 400000000ull)
        throw Error("apsp: graph too large for a dense distance matrix");
    ScaledMetric m;
    m.n = g.n;
    m.unit = g.unit;
    m.dist.assign(static_cast<size_t>(g.n) * g.n, 0);
    auto adj = g.adjacency();
    for (int s = 0; s < g.n; ++s) {
        auto row = bfs_from(adj, s);
        for (int t = 0; t < g.n; ++t) {
            if (row[t] == kUnreached)
                throw Error("apsp: graph is disconnected, vertex " + std::to_string(t) +
                            " is unreachable from vertex " + std::to_string(s));
            m.at(s, t) = row[t];
        }
    }
    return m;
}

/// Metric induced on a vertex subset (BFS per subset vertex; no dense
/// all-pairs table is built).  Point i of the result is subset[i].
inline ScaledMetric restricted_metric(const Graph& g, const std::vector<int>& subset) {
    ScaledMetric m;
    m.n = static_cast<int>(subset.size());
    m.unit = g.unit;
    m.dist.assign(static_cast<size_t>(m.n) * m.n, 0);
    auto adj = g.adjacency();
    for (int i = 0; i < m.n; ++i) {
        auto row = bfs_from(adj, subset[i]);
        for (int j = 0; j < m.n; ++j) {
            if (row[subset[j]] == kUnreached)
                throw Error("restricted_metric: vertex " + std::to_string(subset[j]) +
                            " is unreachable from vertex " + std::to_string(subset[i]));
            m.at(i, j) = row[subset[j]];
        }
    }
    return m;
}

struct MetricViolation {
    std::string what;
    int i = -1, j = -1, k = -1;
};

/// Checks symmetry, zero diagonal, definiteness and the triangle
/// inequality.  O(n^3); meant for tests and `verify`.
inline std::optional<MetricViolation> validate_metric(const ScaledMetric& m) {
    for (int i = 0; i < m.n; ++i) {
        if (m.at(i, i) != 0) return MetricViolation{"nonzero diagonal", i, i, -1};
        for (int j = 0; j < m.n; ++j) {
            if (m.at(i, j) < 0) return MetricViolation{"negative distance", i, j, -1};
            if (m.at(i, j) != m.at(j, i)) return MetricViolation{"asymmetric", i, j, -1};
            if (i != j && m.at(i, j) == 0) return MetricViolation{"zero distance off diagonal", i, j, -1};
        }
    }
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            for (int k = 0; k < m.n; ++k)
                if (m.at(i, j) > m.at(i, k) + m.at(k, j))
                    return MetricViolation{"triangle inequality", i, j, k};
    return std::nullopt;
}

/// Same point set, unit multiplied by a positive rational.
inline ScaledMetric scale_unit(ScaledMetric m, const Rational& factor) {
    if (factor <= 0) throw Error("scale_unit: factor must be positive");
    m.unit *= factor;
    return m;
}

}  // namespace bilip
