#pragma once

// Bilipschitz-constant computation between exact metrics: for a map F,
// lower = best r with r*dX <= dY(F,F), upper = least s with dY(F,F) <= s*dX,
// distortion = upper/lower.  Under l2 targets the ratios are exact squared
// values, flagged as such.

#include "bilip/metric.hpp"
#include "bilip/pointset.hpp"

#include <map>
#include <optional>
#include <utility>

namespace bilip {

struct VertexMap {
    std::map<int, int> pairs;  // source id -> target id

    int at(int src) const {
        auto it = pairs.find(src);
        if (it == pairs.end())
            throw Error("vertex map: no image for vertex " + std::to_string(src));
        return it->second;
    }
};

inline void validate_injective(const VertexMap& f) {
    std::map<int, int> seen;
    for (auto [s, t] : f.pairs) {
        auto [it, fresh] = seen.insert({t, s});
        if (!fresh)
            throw Error("vertex map: not injective, vertices " + std::to_string(it->second) +
                        " and " + std::to_string(s) + " both map to " + std::to_string(t));
    }
}

inline VertexMap compose(const VertexMap& f, const VertexMap& g) {
    VertexMap h;
    for (auto [s, t] : f.pairs) h.pairs[s] = g.at(t);
    return h;
}

inline VertexMap identity_map(int n) {
    VertexMap f;
    for (int i = 0; i < n; ++i) f.pairs[i] = i;
    return f;
}

struct DistortionReport {
    Rational lower;      // min over pairs of dY/dX
    Rational upper;      // max over pairs of dY/dX
    Rational distortion; // upper/lower
    bool squared = false;  // set for l2 targets: all three fields are squared
    std::pair<int, int> witness_pair_lower{-1, -1};
    std::pair<int, int> witness_pair_upper{-1, -1};
};

namespace detail {

struct RatioTracker {
    bool first = true;
    Rational lo, hi;
    std::pair<int, int> lo_pair{-1, -1}, hi_pair{-1, -1};

    void feed(const Rational& ratio, int i, int j) {
        if (first || ratio < lo) {
            lo = ratio;
            lo_pair = {i, j};
        }
        if (first || ratio > hi) {
            hi = ratio;
            hi_pair = {i, j};
        }
        first = false;
    }

    DistortionReport report(bool squared) const {
        if (first) throw Error("distortion: need at least 2 points");
        DistortionReport r;
        r.lower = lo;
        r.upper = hi;
        r.distortion = hi / lo;
        r.squared = squared;
        r.witness_pair_lower = lo_pair;
        r.witness_pair_upper = hi_pair;
        return r;
    }
};

inline void check_pair(const Rational& dx, const Rational& dy, int i, int j) {
    if (dx == 0 && dy != 0)
        throw Error("distortion: source distance 0 but image distance nonzero for pair (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
    if (dy == 0 && dx != 0)
        throw Error("distortion: images of vertices " + std::to_string(i) + " and " +
                    std::to_string(j) + " coincide (map not injective on metric points)");
}

}  // namespace detail

/// Distortion of a vertex map between two shortest-path metrics.
inline DistortionReport distortion(const VertexMap& f, const ScaledMetric& source,
                                   const ScaledMetric& target) {
    if (source.n < 2) throw Error("distortion: source needs at least 2 points");
    validate_injective(f);
    detail::RatioTracker tr;
    Rational unit_ratio = target.unit / source.unit;
    for (int i = 0; i < source.n; ++i) {
        int fi = f.at(i);
        for (int j = i + 1; j < source.n; ++j) {
            int fj = f.at(j);
            std::int64_t dx = source.at(i, j);
            std::int64_t dy = target.at(fi, fj);
            detail::check_pair(Rational(dx), Rational(dy), i, j);
            tr.feed(Rational(dy, dx) * unit_ratio, i, j);
        }
    }
    return tr.report(false);
}

/// Distortion of the identity-indexed point embedding of a metric: point i
/// realizes metric point i.  For l2 points the report carries squared
/// ratios (squared flag set).
inline DistortionReport distortion(const PointSet& p, const ScaledMetric& source) {
    if (source.n < 2) throw Error("distortion: source needs at least 2 points");
    for (int i = 0; i < source.n; ++i)
        if (!p.has(i)) throw Error("distortion: embedding missing vertex " + std::to_string(i));
    PackedPoints pk = pack_points(p);
    bool squared = norm_is_squared(p.norm);
    // index of metric point i inside pk.ids
    std::map<int, size_t> pos;
    for (size_t k = 0; k < pk.ids.size(); ++k) pos[pk.ids[k]] = k;
    BigInt den = squared ? BigInt(pk.den * pk.den) : pk.den;
    detail::RatioTracker tr;
    for (int i = 0; i < source.n; ++i)
        for (int j = i + 1; j < source.n; ++j) {
            BigInt num = packed_dist_num(pk, pos.at(i), pos.at(j));
            Rational dy = make_rational(num, den);
            Rational dx = source.value(i, j);
            if (squared) dx *= dx;
            detail::check_pair(dx, dy, i, j);
            tr.feed(dy / dx, i, j);
        }
    return tr.report(squared);
}

struct IsometryCheck {
    bool ok = true;
    std::pair<int, int> violating_pair{-1, -1};
    Rational expected, got;
};

/// Exact isometry test: d2(f(x),f(y)) == d1(x,y) after unit conversion.
inline IsometryCheck is_isometric(const VertexMap& f, const ScaledMetric& m1,
                                  const ScaledMetric& m2) {
    validate_injective(f);
    IsometryCheck res;
    for (int i = 0; i < m1.n; ++i) {
        int fi = f.at(i);
        for (int j = i + 1; j < m1.n; ++j) {
            int fj = f.at(j);
            Rational want = m1.value(i, j);
            Rational got = m2.value(fi, fj);
            if (want != got) {
                res.ok = false;
                res.violating_pair = {i, j};
                res.expected = want;
                res.got = got;
                return res;
            }
        }
    }
    return res;
}

}  // namespace bilip
