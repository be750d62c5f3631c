#pragma once

// Point sets in l1 / l2 / linf coordinate spaces over exact rationals.
// l1 and linf distances are exact rationals; l2 is handled through exact
// squared distances so every comparison stays decidable.

#include "bilip/rational.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bilip {

enum class Norm { L1, L2, Linf };

inline std::string norm_name(Norm n) {
    switch (n) {
        case Norm::L1: return "l1";
        case Norm::L2: return "l2";
        default: return "linf";
    }
}

inline Norm parse_norm(const std::string& s) {
    if (s == "l1") return Norm::L1;
    if (s == "l2") return Norm::L2;
    if (s == "linf") return Norm::Linf;
    throw Error("unknown norm '" + s + "' (expected l1, l2 or linf)");
}

using Vec = std::vector<Rational>;

inline Vec vec_sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("vector dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("vector dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vec_scale(const Vec& a, const Rational& s) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

/// ||v|| for l1/linf; ||v||^2 for l2.
inline Rational norm_value(const Vec& v, Norm norm) {
    Rational acc = 0;
    switch (norm) {
        case Norm::L1:
            for (const auto& x : v) acc += rat_abs(x);
            return acc;
        case Norm::L2:
            for (const auto& x : v) acc += x * x;
            return acc;
        default: {
            for (const auto& x : v) {
                Rational a = rat_abs(x);
                if (a > acc) acc = a;
            }
            return acc;
        }
    }
}

/// Whether the value norm_value() reports is squared.
inline bool norm_is_squared(Norm n) { return n == Norm::L2; }

struct PointSet {
    int dim = 0;
    Norm norm = Norm::L1;
    std::map<int, Vec> points;

    const Vec& at(int id) const {
        auto it = points.find(id);
        if (it == points.end())
            throw Error("point set: missing coordinates for vertex " + std::to_string(id));
        return it->second;
    }

    bool has(int id) const { return points.count(id) != 0; }
};

inline void validate_pointset(const PointSet& p) {
    if (p.dim < 0) throw Error("point set: negative dimension");
    for (const auto& [id, v] : p.points)
        if (static_cast<int>(v.size()) != p.dim)
            throw Error("point set: vertex " + std::to_string(id) + " has " +
                        std::to_string(v.size()) + " coordinates, expected " +
                        std::to_string(p.dim));
}

inline PointSet scale_points(const PointSet& p, const Rational& s) {
    PointSet r = p;
    for (auto& [id, v] : r.points) v = vec_scale(v, s);
    return r;
}

// ---------------------------------------------------------------------------
// Packed integer fast path.  All coordinates are brought over one common
// denominator; when the numerators fit comfortably in int64 the pairwise
// distance kernels run on machine integers (exactness is preserved, the
// common denominator is reattached afterwards).

struct PackedPoints {
    std::vector<int> ids;
    BigInt den = 1;
    bool small = false;                           // int64 kernels usable
    std::vector<std::vector<std::int64_t>> inum;  // when small
    std::vector<std::vector<BigInt>> bnum;        // otherwise
    int dim = 0;
    Norm norm = Norm::L1;
};

inline PackedPoints pack_points(const PointSet& p) {
    validate_pointset(p);
    PackedPoints pk;
    pk.dim = p.dim;
    pk.norm = p.norm;
    BigInt den = 1;
    for (const auto& [id, v] : p.points) {
        pk.ids.push_back(id);
        for (const auto& x : v) den = lcm(den, rat_den(x));
    }
    pk.den = den;
    BigInt maxabs = 0;
    std::vector<std::vector<BigInt>> rows;
    rows.reserve(pk.ids.size());
    for (int id : pk.ids) {
        const Vec& v = p.at(id);
        std::vector<BigInt> row(v.size());
        for (size_t k = 0; k < v.size(); ++k) {
            row[k] = rat_num(v[k]) * (den / rat_den(v[k]));
            BigInt a = abs(row[k]);
            if (a > maxabs) maxabs = a;
        }
        rows.push_back(std::move(row));
    }
    // int64 kernels need diffs, squares and dim-length sums to fit.
    BigInt budget = maxabs * maxabs * 4 * (p.dim > 0 ? p.dim : 1);
    if (maxabs < (BigInt(1) << 30) && budget < (BigInt(1) << 62)) {
        pk.small = true;
        pk.inum.reserve(rows.size());
        for (auto& row : rows) {
            std::vector<std::int64_t> irow(row.size());
            for (size_t k = 0; k < row.size(); ++k) irow[k] = row[k].convert_to<std::int64_t>();
            pk.inum.push_back(std::move(irow));
        }
    } else {
        pk.bnum = std::move(rows);
    }
    return pk;
}

/// Numerator of the pairwise distance over pk.den (l1/linf), or of the
/// squared distance over pk.den^2 (l2).
inline BigInt packed_dist_num(const PackedPoints& pk, size_t i, size_t j) {
    if (pk.small) {
        const auto& a = pk.inum[i];
        const auto& b = pk.inum[j];
        std::int64_t acc = 0;
        switch (pk.norm) {
            case Norm::L1:
                for (size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
                break;
            case Norm::L2:
                for (size_t k = 0; k < a.size(); ++k) {
                    std::int64_t d = a[k] - b[k];
                    acc += d * d;
                }
                break;
            default:
                for (size_t k = 0; k < a.size(); ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
        }
        return BigInt(acc);
    }
    const auto& a = pk.bnum[i];
    const auto& b = pk.bnum[j];
    BigInt acc = 0;
    switch (pk.norm) {
        case Norm::L1:
            for (size_t k = 0; k < a.size(); ++k) acc += abs(a[k] - b[k]);
            break;
        case Norm::L2:
            for (size_t k = 0; k < a.size(); ++k) {
                BigInt d = a[k] - b[k];
                acc += d * d;
            }
            break;
        default:
            for (size_t k = 0; k < a.size(); ++k) acc = std::max(acc, abs(a[k] - b[k]));
    }
    return acc;
}

/// Exact pairwise distance table.  `squared` is set for l2 (entries are
/// squared distances); l1/linf entries are plain distances.
struct PointDistanceTable {
    std::vector<int> ids;
    bool squared = false;
    std::vector<Rational> d;  // row-major over ids

    const Rational& at(size_t i, size_t j) const { return d[i * ids.size() + j]; }
};

inline PointDistanceTable point_metric(const PointSet& p) {
    PackedPoints pk = pack_points(p);
    PointDistanceTable t;
    t.ids = pk.ids;
    t.squared = norm_is_squared(pk.norm);
    size_t n = pk.ids.size();
    t.d.assign(n * n, Rational(0));
    BigInt den = t.squared ? BigInt(pk.den * pk.den) : pk.den;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Rational v = make_rational(packed_dist_num(pk, i, j), den);
            t.d[i * n + j] = v;
            t.d[j * n + i] = v;
        }
    return t;
}

}  // namespace bilip
