#pragma once

// Corollary machinery: generate random d-regular bases (pairing model),
// find a D-separated set greedily, overlay a max-degree-3 graph M on it,
// and pad with self-loops (+1 degree each) to exact (d+3)-regularity.
// Isometry of the planted copy is certified against BFS, not assumed.

#include "bilip/distortion.hpp"
#include "bilip/graph.hpp"
#include "bilip/metric.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace bilip {

namespace detail {

// Rejection-sampled bounded draw; keeps artifacts reproducible independent
// of the standard library's distribution implementations.
inline std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

inline void shuffle_ints(std::vector<int>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[next_below(rng, i)]);
}

}  // namespace detail

/// Simple d-regular graph via the pairing model with rejection of loops
/// and multi-edges; deterministic for a given seed.
inline Graph random_regular(int n, int d, std::uint64_t seed, int max_attempts = 1000) {
    if (n <= 0 || d <= 0) throw Error("random_regular: need n > 0 and d > 0");
    if ((static_cast<std::int64_t>(n) * d) % 2 != 0)
        throw Error("random_regular: n*d must be even");
    if (d >= n) throw Error("random_regular: need d < n");
    std::mt19937_64 rng(seed);
    std::vector<int> stubs;
    stubs.reserve(static_cast<size_t>(n) * d);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        stubs.clear();
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < d; ++k) stubs.push_back(v);
        detail::shuffle_ints(stubs, rng);
        Graph g;
        g.n = n;
        bool ok = true;
        std::set<std::pair<int, int>> seen;
        for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int a = stubs[i], b = stubs[i + 1];
            if (a == b) {
                ok = false;
                break;
            }
            auto key = std::minmax(a, b);
            if (!seen.insert({key.first, key.second}).second) {
                ok = false;
                break;
            }
            g.add_edge(a, b);
        }
        if (ok) {
            g.canonicalize();
            return g;
        }
    }
    throw Error("random_regular: no simple pairing found after " +
                std::to_string(max_attempts) + " attempts, try another seed");
}

struct SeparatedSet {
    bool ok = false;
    std::vector<int> vertices;  // achieved set even on failure
};

/// Greedy D-separated set: repeatedly take the smallest-ID vertex at base
/// distance >= D from everything chosen so far.
inline SeparatedSet greedy_separated_set(const Graph& g, std::int64_t min_dist, int count) {
    if (min_dist < 1) throw Error("greedy_separated_set: separation must be >= 1");
    SeparatedSet out;
    auto adj = g.adjacency();
    std::vector<std::int64_t> nearest(g.n, kUnreached);
    for (int pick = 0; pick < count; ++pick) {
        int chosen = -1;
        for (int v = 0; v < g.n; ++v)
            if (nearest[v] >= min_dist) {
                chosen = v;
                break;
            }
        if (chosen < 0) return out;
        out.vertices.push_back(chosen);
        auto row = bfs_from(adj, chosen);
        for (int v = 0; v < g.n; ++v)
            if (row[v] < nearest[v]) nearest[v] = row[v];
    }
    out.ok = true;
    return out;
}

struct PlantResult {
    Graph k;
    VertexMap copy_map;  // V(M) -> base vertices
    int overlay_edges_added = 0;
    int loops_added = 0;
    int regular_degree = 0;  // degree of every vertex after loop padding (0 if none added)
};

/// Overlays M's edges on the given base sites (no loop padding, any M).
inline PlantResult plant_at(const Graph& base, const Graph& m, const std::vector<int>& sites) {
    if (static_cast<int>(sites.size()) != m.n)
        throw Error("plant_at: need exactly |V(M)| sites");
    PlantResult res;
    res.k = base;
    for (int v = 0; v < m.n; ++v) res.copy_map.pairs[v] = sites[v];
    for (auto [a, b] : m.edges) {
        int x = sites[a], y = sites[b];
        if (res.k.has_edge(x, y)) continue;  // already present in the base
        res.k.add_edge(x, y);
        res.overlay_edges_added++;
    }
    res.k.canonicalize();
    return res;
}

/// Full Corollary step: find a diam(M)-separated set, overlay M, then make
/// the graph exactly (d+3)-regular with self-loops (one loop = +1 degree).
inline PlantResult augment(const Graph& base, const Graph& m) {
    if (base.unit != 1 || m.unit != 1) throw Error("augment: base and target must have unit 1");
    if (!base.loops.empty()) throw Error("augment: base must be loop-free");
    auto bdeg = base.degrees();
    int d = bdeg.empty() ? 0 : bdeg[0];
    for (int v = 0; v < base.n; ++v)
        if (bdeg[v] != d) throw Error("augment: base is not regular");
    if (m.max_degree() > 3) throw Error("augment: target max degree exceeds 3");
    std::int64_t diam = apsp(m).diameter_units();
    SeparatedSet sep = greedy_separated_set(base, std::max<std::int64_t>(diam, 1), m.n);
    if (!sep.ok)
        throw Error("augment: only " + std::to_string(sep.vertices.size()) + " of " +
                    std::to_string(m.n) + " separated vertices found; use a larger base");
    PlantResult res = plant_at(base, m, sep.vertices);
    int target = d + 3;
    auto deg = res.k.degrees();
    for (int v = 0; v < res.k.n; ++v) {
        if (deg[v] > target) throw Error("augment: degree overflow at vertex " + std::to_string(v));
        for (int k = deg[v]; k < target; ++k) {
            res.k.loops.push_back(v);
            res.loops_added++;
        }
    }
    res.k.canonicalize();
    res.regular_degree = target;
    return res;
}

/// The planted copy is isometric iff the base metric restricted to the
/// sites equals d_M exactly.
inline IsometryCheck certify_isometric_copy(const Graph& k, const VertexMap& copy_map,
                                            const Graph& m) {
    std::vector<int> sites;
    for (int v = 0; v < m.n; ++v) sites.push_back(copy_map.at(v));
    ScaledMetric dm = apsp(m);
    ScaledMetric dk = restricted_metric(k, sites);
    return is_isometric(identity_map(m.n), dm, dk);
}

struct SpectralReport {
    double lambda2 = 0.0;  // second-largest eigenvalue of D^{-1/2} A D^{-1/2}
    std::string method;    // "dense" or "power"
    std::optional<Rational> cheeger_exact;  // only for n <= 14
    std::map<int, int> degree_histogram;
};

namespace detail {

inline Eigen::MatrixXd normalized_adjacency(const Graph& g) {
    auto deg = g.degrees();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
    for (auto [x, y] : g.edges) {
        a(x, y) += 1.0;
        a(y, x) += 1.0;
    }
    for (int v : g.loops) a(v, v) += 1.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (a(i, j) != 0.0) a(i, j) /= std::sqrt(double(deg[i]) * double(deg[j]));
    return a;
}

// lambda2 by power iteration on (N + I)/2 with the known top eigenvector
// D^{1/2}*1 projected out; avoids a dense solve on large graphs.
inline double lambda2_power(const Graph& g) {
    auto deg = g.degrees();
    int n = g.n;
    Eigen::VectorXd top(n);
    for (int i = 0; i < n; ++i) top[i] = std::sqrt(double(deg[i]));
    top.normalize();
    std::vector<double> invsq(n);
    for (int i = 0; i < n; ++i) invsq[i] = 1.0 / std::sqrt(double(deg[i]));
    auto matvec = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
        for (auto [a, b] : g.edges) {
            y[a] += invsq[a] * invsq[b] * x[b];
            y[b] += invsq[a] * invsq[b] * x[a];
        }
        for (int v : g.loops) y[v] += invsq[v] * invsq[v] * x[v];
        return y;
    };
    std::mt19937_64 rng(12345);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = double(rng() % 1000) / 1000.0 - 0.5;
    x -= top * top.dot(x);
    x.normalize();
    double mu = 0.0;
    for (int iter = 0; iter < 20000; ++iter) {
        Eigen::VectorXd y = 0.5 * (matvec(x) + x);
        y -= top * top.dot(y);
        double norm = y.norm();
        if (norm < 1e-300) return -1.0;  // lambda2 = 2*0 - 1
        y /= norm;
        double mu_next = norm;
        bool settled = std::abs(mu_next - mu) < 1e-13;
        mu = mu_next;
        x = y;
        if (settled && iter > 50) break;
    }
    return 2.0 * mu - 1.0;
}

}  // namespace detail

constexpr int kCheegerExactMax = 14;

/// Exact edge-expansion constant: min over subsets S with 1 <= |S| <= n/2
/// of |boundary(S)| / |S|.  Exponential; callers keep n <= 14.
inline Rational cheeger_exact(const Graph& g) {
    if (g.n > kCheegerExactMax) throw Error("cheeger_exact: graph too large");
    if (g.n < 2) throw Error("cheeger_exact: need at least 2 vertices");
    std::optional<Rational> best;
    std::uint32_t full = 1u << g.n;
    for (std::uint32_t s = 1; s < full - 1; ++s) {
        int size = __builtin_popcount(s);
        if (size > g.n / 2) continue;
        int boundary = 0;
        for (auto [a, b] : g.edges) {
            bool ina = s & (1u << a), inb = s & (1u << b);
            if (ina != inb) boundary++;
        }
        Rational ratio(boundary, size);
        if (!best || ratio < *best) best = ratio;
    }
    return *best;
}

inline SpectralReport expansion_report(const Graph& g, int dense_limit = 1500) {
    SpectralReport rep;
    apsp(g);  // connectivity check
    for (int d : g.degrees()) rep.degree_histogram[d]++;
    if (g.n <= dense_limit) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(detail::normalized_adjacency(g));
        const auto& ev = solver.eigenvalues();
        rep.lambda2 = ev[g.n - 2];
        rep.method = "dense";
    } else {
        rep.lambda2 = detail::lambda2_power(g);
        rep.method = "power";
    }
    if (g.n <= kCheegerExactMax) rep.cheeger_exact = cheeger_exact(g);
    return rep;
}

/// Doubling search realizing the Corollary's "without loss of generality"
/// step: grow the base until a separated set exists, then augment.
struct AugmentSearchResult {
    PlantResult plant;
    Graph base;
    int base_n = 0;
    std::uint64_t base_seed = 0;
};

inline AugmentSearchResult find_base_and_augment(const Graph& m, int d, int start_n,
                                                 std::uint64_t seed, int max_doublings = 16) {
    std::mt19937_64 master(seed);
    int n = std::max(start_n, m.n + 1);
    if ((static_cast<std::int64_t>(n) * d) % 2 != 0) n++;
    std::string last;
    for (int round = 0; round <= max_doublings; ++round) {
        std::uint64_t sub_seed = master();
        try {
            Graph base = random_regular(n, d, sub_seed);
            PlantResult plant = augment(base, m);
            return {std::move(plant), std::move(base), n, sub_seed};
        } catch (const Error& e) {
            last = e.what();
            n *= 2;
        }
    }
    throw Error("find_base_and_augment: gave up after doubling to n=" + std::to_string(n) +
                " (" + last + ")");
}

}  // namespace bilip
