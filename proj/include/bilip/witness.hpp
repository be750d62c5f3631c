#pragma once

// Witness structures extracted from embeddings of diamonds and Laakso
// graphs: delta-trees (exact dyadic midpoints, child separation >= delta),
// delta-semitrees (four-child averages, pair-sum separation >= delta) and
// the quaternary martingale built from a semitree, with an exact
// divergence certificate.
//
// Conventions, fixed once: the root is x1 = f(v0) - f(u0) and every edge
// is oriented from its lower-ID endpoint's side toward the other, so all
// telescoping identities hold as exact algebra.  Branch selection takes
// the candidate of maximal norm, ties toward the earlier-created vertex.

#include "bilip/distortion.hpp"
#include "bilip/families.hpp"
#include "bilip/pointset.hpp"

#include <map>
#include <string>
#include <vector>

namespace bilip {

struct EmbeddingCertificate {
    Rational delta;  // lower constant after normalization (delta = lower/upper)
    Rational lip;    // upper constant after normalization (1 when rescaled)
    bool squared = false;  // set under l2: delta and lip are squared values
};

/// Kuratowski embedding: point i maps to its distance vector
/// (d(i,0), ..., d(i,n-1)); isometric under linf.
inline PointSet kuratowski_embed(const ScaledMetric& m) {
    PointSet p;
    p.dim = m.n;
    p.norm = Norm::Linf;
    for (int i = 0; i < m.n; ++i) {
        Vec row(m.n);
        for (int j = 0; j < m.n; ++j) row[j] = m.value(i, j);
        p.points[i] = std::move(row);
    }
    return p;
}

/// Rescales so that ||f(x)-f(y)|| <= d(x,y) with equality somewhere;
/// delta = lower/upper.  Under l2 the rescale must be exactly
/// representable (upper^2 a perfect rational square), else an error:
/// comparisons stay in the squared domain throughout.
inline std::pair<PointSet, EmbeddingCertificate> normalize_embedding(const PointSet& p,
                                                                     const ScaledMetric& m) {
    DistortionReport rep = distortion(p, m);
    if (rep.lower == 0) throw Error("normalize_embedding: degenerate embedding");
    EmbeddingCertificate cert;
    cert.squared = rep.squared;
    cert.delta = rep.lower / rep.upper;
    cert.lip = 1;
    if (!rep.squared) return {scale_points(p, 1 / rep.upper), cert};
    auto root = exact_sqrt(rep.upper);
    if (!root)
        throw Error("normalize_embedding: l2 upper constant is not a perfect square; "
                    "exact rescaling is impossible");
    return {scale_points(p, 1 / *root), cert};
}

struct WitnessTree {
    int depth = 0;  // N: nodes 1..2^{N+1}-1
    Norm norm = Norm::Linf;
    Rational delta;  // squared when norm == l2
    std::vector<Vec> nodes;  // slot 0 unused

    int node_count() const { return static_cast<int>(nodes.size()) - 1; }
};

struct WitnessSemitree {
    int depth = 0;  // N: nodes 1..(4^{N+1}-1)/3
    Norm norm = Norm::Linf;
    Rational delta;  // squared when norm == l2
    std::vector<Vec> nodes;  // slot 0 unused

    int node_count() const { return static_cast<int>(nodes.size()) - 1; }
};

namespace detail {

// norm comparison helper: thresholds arrive squared when the norm is l2
inline bool norm_at_least(const Vec& v, Norm norm, const Rational& threshold) {
    return norm_value(v, norm) >= threshold;
}

inline bool norm_at_most(const Vec& v, Norm norm, const Rational& threshold) {
    return norm_value(v, norm) <= threshold;
}

}  // namespace detail

/// Extracts a delta-tree from an embedding of D_N, normalized per the
/// certificate.  Node i at level j holds 2^j*(f(head)-f(tail)) for an
/// oriented edge of D_j; children refine through the level-(j+1)
/// quadrilateral, keeping the candidate of larger norm.
inline WitnessTree extract_delta_tree(const PointSet& f, const EmbeddingCertificate& cert,
                                      const DiamondBuild& build) {
    int levels = build.level;
    WitnessTree tree;
    tree.depth = levels;
    tree.norm = f.norm;
    tree.delta = cert.delta;
    tree.nodes.assign(size_t(1) << (levels + 1), Vec{});

    // replacement lookup per round
    std::vector<std::map<std::pair<int, int>, const DiamondStep*>> lookup(levels + 1);
    for (int j = 1; j <= levels; ++j)
        for (const auto& st : build.rounds[j]) lookup[j][{st.u, st.v}] = &st;

    struct Todo {
        int index;
        int tail, head;
        int level;
    };
    std::vector<Todo> stack;
    tree.nodes[1] = vec_sub(f.at(1), f.at(0));  // x1 = f(v0) - f(u0)
    stack.push_back({1, 0, 1, 0});
    while (!stack.empty()) {
        Todo t = stack.back();
        stack.pop_back();
        if (t.level >= levels) continue;
        auto key = std::minmax(t.tail, t.head);
        const DiamondStep* st = lookup[t.level + 1].at({key.first, key.second});
        const Vec& ft = f.at(t.tail);
        const Vec& fh = f.at(t.head);
        // candidate for w: (f(head)-f(w)) - (f(w)-f(tail)) = f(head)+f(tail)-2f(w)
        Vec base = vec_add(fh, ft);
        Vec cand_a = vec_sub(base, vec_scale(f.at(st->a), 2));
        Vec cand_b = vec_sub(base, vec_scale(f.at(st->b), 2));
        int w = norm_value(cand_b, f.norm) > norm_value(cand_a, f.norm) ? st->b : st->a;
        Rational s = pow2(t.level + 1);
        tree.nodes[2 * t.index] = vec_scale(vec_sub(fh, f.at(w)), s);
        tree.nodes[2 * t.index + 1] = vec_scale(vec_sub(f.at(w), ft), s);
        stack.push_back({2 * t.index, w, t.head, t.level + 1});
        stack.push_back({2 * t.index + 1, t.tail, w, t.level + 1});
    }
    return tree;
}

/// Extracts a delta-semitree from an embedding of L_N.  Node i at level j
/// holds 4^j*(f(head)-f(tail)); the refining gadget contributes four
/// children through the middle vertex o of larger candidate norm, and the
/// pair-sum separation comes out >= 2*delta.
inline WitnessSemitree extract_semitree(const PointSet& f, const EmbeddingCertificate& cert,
                                        const LaaksoBuild& build) {
    int levels = build.level;
    WitnessSemitree st_out;
    st_out.depth = levels;
    st_out.norm = f.norm;
    st_out.delta = cert.delta;
    BigInt count = (ipow(4, levels + 1) - 1) / 3;
    st_out.nodes.assign(count.convert_to<size_t>() + 1, Vec{});

    std::vector<std::map<std::pair<int, int>, const LaaksoStep*>> lookup(levels + 1);
    for (int j = 1; j <= levels; ++j)
        for (const auto& step : build.rounds[j]) lookup[j][{step.u, step.v}] = &step;

    struct Todo {
        std::int64_t index;
        int tail, head;
        int level;
    };
    std::vector<Todo> stack;
    st_out.nodes[1] = vec_sub(f.at(1), f.at(0));
    stack.push_back({1, 0, 1, 0});
    std::vector<Rational> pow4(levels + 2);
    pow4[0] = 1;
    for (int j = 1; j <= levels + 1; ++j) pow4[j] = pow4[j - 1] * 4;
    while (!stack.empty()) {
        Todo t = stack.back();
        stack.pop_back();
        if (t.level >= levels) continue;
        auto key = std::minmax(t.tail, t.head);
        const LaaksoStep* step = lookup[t.level + 1].at({key.first, key.second});
        // t1 attaches to the smaller endpoint (step->u), t2 to step->v
        int side_t = (t.tail == step->u) ? step->t1 : step->t2;
        int side_h = (t.head == step->u) ? step->t1 : step->t2;
        const Vec& ft = f.at(t.tail);
        const Vec& fh = f.at(t.head);
        Vec base = vec_add(fh, ft);
        Vec cand_1 = vec_sub(base, vec_scale(f.at(step->o1), 2));
        Vec cand_2 = vec_sub(base, vec_scale(f.at(step->o2), 2));
        int o = norm_value(cand_2, f.norm) > norm_value(cand_1, f.norm) ? step->o2 : step->o1;
        const Rational& s = pow4[t.level + 1];
        std::int64_t ci = 4 * t.index - 2;
        st_out.nodes[ci + 0] = vec_scale(vec_sub(fh, f.at(side_h)), s);
        st_out.nodes[ci + 1] = vec_scale(vec_sub(f.at(side_h), f.at(o)), s);
        st_out.nodes[ci + 2] = vec_scale(vec_sub(f.at(o), f.at(side_t)), s);
        st_out.nodes[ci + 3] = vec_scale(vec_sub(f.at(side_t), ft), s);
        stack.push_back({ci + 0, side_h, t.head, t.level + 1});
        stack.push_back({ci + 1, o, side_h, t.level + 1});
        stack.push_back({ci + 2, side_t, o, t.level + 1});
        stack.push_back({ci + 3, t.tail, side_t, t.level + 1});
    }
    return st_out;
}

struct WitnessCheck {
    bool ok = true;
    std::int64_t first_violation = -1;
    std::string what;
};

/// Verifies the delta-tree identities exactly: x_i = (x_{2i}+x_{2i+1})/2,
/// ||x_{2i} - x_i|| >= delta, ||x_i|| <= 1.  The sibling separation
/// ||x_{2i+1} - x_i|| equals ||x_{2i} - x_i|| by the midpoint identity.
inline WitnessCheck check_witness(const WitnessTree& t, const Rational& delta) {
    WitnessCheck res;
    Rational one = 1;
    auto fail = [&](std::int64_t i, const std::string& what) {
        res.ok = false;
        res.first_violation = i;
        res.what = what;
    };
    int count = t.node_count();
    for (int i = 1; i <= count; ++i) {
        if (!detail::norm_at_most(t.nodes[i], t.norm, one)) return fail(i, "node norm > 1"), res;
        if (2 * i + 1 <= count) {
            Vec mid = vec_scale(vec_add(t.nodes[2 * i], t.nodes[2 * i + 1]), Rational(1, 2));
            if (mid != t.nodes[i]) return fail(i, "midpoint identity broken"), res;
            Vec dev = vec_sub(t.nodes[2 * i], t.nodes[i]);
            if (!detail::norm_at_least(dev, t.norm, delta))
                return fail(i, "child separation below delta"), res;
        }
    }
    return res;
}

/// Verifies the delta-semitree identities exactly:
/// x_i = (x_{4i-2}+x_{4i-1}+x_{4i}+x_{4i+1})/4,
/// ||(x_{4i-2}+x_{4i-1}) - (x_{4i}+x_{4i+1})|| >= delta, ||x_i|| <= 1.
inline WitnessCheck check_witness(const WitnessSemitree& t, const Rational& delta) {
    WitnessCheck res;
    Rational one = 1;
    auto fail = [&](std::int64_t i, const std::string& what) {
        res.ok = false;
        res.first_violation = i;
        res.what = what;
    };
    std::int64_t count = t.node_count();
    for (std::int64_t i = 1; i <= count; ++i) {
        if (!detail::norm_at_most(t.nodes[i], t.norm, one)) return fail(i, "node norm > 1"), res;
        if (4 * i + 1 <= count) {
            Vec sum = vec_add(vec_add(t.nodes[4 * i - 2], t.nodes[4 * i - 1]),
                              vec_add(t.nodes[4 * i], t.nodes[4 * i + 1]));
            if (vec_scale(sum, Rational(1, 4)) != t.nodes[i])
                return fail(i, "four-child average identity broken"), res;
            Vec gap = vec_sub(vec_add(t.nodes[4 * i - 2], t.nodes[4 * i - 1]),
                              vec_add(t.nodes[4 * i], t.nodes[4 * i + 1]));
            if (!detail::norm_at_least(gap, t.norm, delta))
                return fail(i, "pair-sum separation below delta"), res;
        }
    }
    return res;
}

struct QuaternaryMartingale {
    Norm norm = Norm::Linf;
    // levels[j] has 4^j cell values; cell k covers [k/4^j, (k+1)/4^j)
    std::vector<std::vector<Vec>> levels;
};

/// Level j of the martingale is the 4^j level-j semitree nodes in index
/// order; the four-child average identity makes it a martingale.
inline QuaternaryMartingale build_martingale(const WitnessSemitree& st) {
    QuaternaryMartingale mg;
    mg.norm = st.norm;
    std::int64_t start = 1;
    for (int j = 0; j <= st.depth; ++j) {
        std::int64_t width = 1;
        for (int k = 0; k < j; ++k) width *= 4;
        std::vector<Vec> level;
        level.reserve(width);
        for (std::int64_t k = 0; k < width; ++k) level.push_back(st.nodes[start + k]);
        mg.levels.push_back(std::move(level));
        start += width;
    }
    return mg;
}

struct DivergenceLevel {
    int level = 0;                 // transition level -> level+1
    Rational gap_threshold;        // delta/4 (squared under l2)
    Rational measure_fraction;     // exact fraction of child cells with a big jump
    bool ok = false;               // measure_fraction >= 1/2
};

struct DivergenceReport {
    bool ok = true;
    bool uniformly_bounded = true;  // sup over cells of ||value|| <= 1
    std::vector<DivergenceLevel> levels;
};

/// The martingale diverges: between consecutive levels, the set where
/// ||f_{n+1} - f_n|| >= delta/4 has measure at least 1/2 (counted exactly
/// over the 4^{n+1} child cells).
inline DivergenceReport certify_divergence(const QuaternaryMartingale& mg,
                                           const Rational& delta) {
    DivergenceReport rep;
    Rational threshold = mg.norm == Norm::L2 ? Rational(delta / 16) : Rational(delta / 4);
    Rational one = 1;
    for (const auto& level : mg.levels)
        for (const auto& cell : level)
            if (!detail::norm_at_most(cell, mg.norm, one)) rep.uniformly_bounded = false;
    for (size_t j = 0; j + 1 < mg.levels.size(); ++j) {
        const auto& parent = mg.levels[j];
        const auto& child = mg.levels[j + 1];
        std::int64_t hits = 0;
        for (size_t k = 0; k < child.size(); ++k) {
            Vec jump = vec_sub(child[k], parent[k / 4]);
            if (detail::norm_at_least(jump, mg.norm, threshold)) hits++;
        }
        DivergenceLevel dl;
        dl.level = static_cast<int>(j);
        dl.gap_threshold = threshold;
        dl.measure_fraction = Rational(hits, static_cast<std::int64_t>(child.size()));
        dl.ok = dl.measure_fraction >= Rational(1, 2);
        if (!dl.ok) rep.ok = false;
        rep.levels.push_back(std::move(dl));
    }
    return rep;
}

}  // namespace bilip
