#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "tropimirror/core.hpp"

namespace tropimirror::lattice {

// ---------------------------------------------------------------------------
// Convex hull helpers (exact integer arithmetic throughout)
// ---------------------------------------------------------------------------

/// Counterclockwise convex hull, collinear boundary points dropped.
inline std::vector<IVec> convex_hull(std::vector<IVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto build = [&](auto begin, auto end) {
        std::vector<IVec> h;
        for (auto it = begin; it != end; ++it) {
            while (h.size() >= 2 && det(h.back() - h[h.size() - 2], *it - h.back()) <= 0)
                h.pop_back();
            h.push_back(*it);
        }
        return h;
    };
    std::vector<IVec> lower = build(pts.begin(), pts.end());
    std::vector<IVec> upper = build(pts.rbegin(), pts.rend());
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    return lower;
}

/// Twice the (positive) area of a ccw polygon.
inline Int polygon_double_area(const std::vector<IVec>& hull) {
    Int a = 0;
    for (size_t i = 0; i < hull.size(); ++i)
        a += det(hull[i], hull[(i + 1) % hull.size()]);
    return a;
}

/// -1 outside, 0 on boundary, +1 strictly inside a ccw convex polygon.
inline int hull_location(const std::vector<IVec>& hull, IVec p) {
    bool boundary = false;
    for (size_t i = 0; i < hull.size(); ++i) {
        Int d = det(hull[(i + 1) % hull.size()] - hull[i], p - hull[i]);
        if (d < 0) return -1;
        if (d == 0) boundary = true;
    }
    return boundary ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Triangulation
// ---------------------------------------------------------------------------

struct Violation {
    std::string code;     // e.g. "non-unimodular", "overlap", "convention"
    std::string message;  // human-readable detail, point indices reported 1-based
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
    std::string summary() const {
        std::ostringstream os;
        for (const auto& v : violations) os << "[" << v.code << "] " << v.message << "\n";
        return os.str();
    }
};

/// A finest (unimodular) triangulation of a lattice polygon. Points follow the
/// paper-facing convention b_1=(1,0), b_2=(0,1), b_3=(0,0); indices are 0-based
/// in code and in the file format, 1-based in report text.
struct Triangulation {
    std::vector<LatticePoint> points;
    std::vector<std::array<int, 3>> triangles;

    const std::vector<IVec>& hull() const {
        if (hull_.empty()) hull_ = convex_hull(points);
        return hull_;
    }

    bool has_edge(int i, int j) const {
        for (const auto& t : triangles)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    if (a != b && t[a] == i && t[b] == j) return true;
        return false;
    }

    int index_of(LatticePoint p) const {
        for (size_t i = 0; i < points.size(); ++i)
            if (points[i] == p) return static_cast<int>(i);
        return -1;
    }

    /// Sorted unique edges as index pairs (i < j).
    std::vector<std::pair<int, int>> edges() const {
        std::set<std::pair<int, int>> e;
        for (const auto& t : triangles)
            for (int a = 0; a < 3; ++a) {
                int i = t[a], j = t[(a + 1) % 3];
                e.insert({std::min(i, j), std::max(i, j)});
            }
        return {e.begin(), e.end()};
    }

  private:
    mutable std::vector<IVec> hull_;
};

namespace detail {

// Exact triangle/triangle interior-overlap test for triangles given by vertices.
// Sufficient for unimodular cells: interiors meet iff some vertex of one lies
// strictly inside the other, or two edges properly cross.
inline bool segments_cross(IVec a, IVec b, IVec c, IVec d) {
    Int d1 = det(b - a, c - a), d2 = det(b - a, d - a);
    Int d3 = det(d - c, a - c), d4 = det(d - c, b - c);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

inline bool point_in_triangle_strict(IVec p, IVec a, IVec b, IVec c) {
    if (det(b - a, c - a) < 0) std::swap(b, c);
    return det(b - a, p - a) > 0 && det(c - b, p - b) > 0 && det(a - c, p - c) > 0;
}

inline bool triangles_overlap(const std::array<IVec, 3>& s, const std::array<IVec, 3>& t) {
    for (auto p : s)
        if (point_in_triangle_strict(p, t[0], t[1], t[2])) return true;
    for (auto p : t)
        if (point_in_triangle_strict(p, s[0], s[1], s[2])) return true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (segments_cross(s[i], s[(i + 1) % 3], t[j], t[(j + 1) % 3])) return true;
    return false;
}

}  // namespace detail

/// All lattice points of the hull (boundary and interior), lexicographic order.
inline std::vector<LatticePoint> hull_lattice_points(const Triangulation& t) {
    const auto& h = t.hull();
    Int m0 = h[0].m, m1 = h[0].m, n0 = h[0].n, n1 = h[0].n;
    for (auto p : h) {
        m0 = std::min(m0, p.m);
        m1 = std::max(m1, p.m);
        n0 = std::min(n0, p.n);
        n1 = std::max(n1, p.n);
    }
    std::vector<LatticePoint> out;
    for (Int m = m0; m <= m1; ++m)
        for (Int n = n0; n <= n1; ++n)
            if (hull_location(h, {m, n}) >= 0) out.push_back({m, n});
    return out;
}

inline ValidationReport validate_triangulation(const Triangulation& t) {
    ValidationReport rep;
    auto add = [&](std::string code, std::string msg) {
        rep.violations.push_back({std::move(code), std::move(msg)});
    };

    const int n = static_cast<int>(t.points.size());
    if (n < 3) {
        add("structural", "fewer than 3 points");
        return rep;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (t.points[i] == t.points[j])
                add("structural", "points b_" + std::to_string(i + 1) + " and b_" +
                                      std::to_string(j + 1) + " coincide");

    if (t.points[0] != IVec{1, 0} || t.points[1] != IVec{0, 1} || t.points[2] != IVec{0, 0})
        add("convention", "b_1, b_2, b_3 must be (1,0), (0,1), (0,0)");

    bool structural_ok = true;
    for (size_t k = 0; k < t.triangles.size(); ++k) {
        for (int v : t.triangles[k])
            if (v < 0 || v >= n) {
                add("structural", "triangle " + std::to_string(k + 1) + " references point index " +
                                      std::to_string(v) + " out of range");
                structural_ok = false;
            }
        const auto& tr = t.triangles[k];
        if (structural_ok && (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2])) {
            add("structural", "triangle " + std::to_string(k + 1) + " has repeated vertices");
            structural_ok = false;
        }
    }
    if (!structural_ok || !rep.violations.empty()) {
        // Geometry checks below assume indices in range; convention errors are
        // reported but do not block them.
        for (const auto& v : rep.violations)
            if (v.code == "structural") return rep;
    }

    auto tri_pts = [&](size_t k) {
        return std::array<IVec, 3>{t.points[t.triangles[k][0]], t.points[t.triangles[k][1]],
                                   t.points[t.triangles[k][2]]};
    };

    Int area2_sum = 0;
    for (size_t k = 0; k < t.triangles.size(); ++k) {
        auto [a, b, c] = tri_pts(k);
        Int d = det(b - a, c - a);
        area2_sum += std::abs(d);
        if (std::abs(d) != 1)
            add("non-unimodular", "triangle " + std::to_string(k + 1) + " has lattice area " +
                                      std::to_string(std::abs(d)) + "/2");
    }
    for (size_t i = 0; i < t.triangles.size(); ++i)
        for (size_t j = i + 1; j < t.triangles.size(); ++j)
            if (detail::triangles_overlap(tri_pts(i), tri_pts(j)))
                add("overlap", "triangles " + std::to_string(i + 1) + " and " +
                                   std::to_string(j + 1) + " overlap");

    const auto& h = t.hull();
    if (h.size() >= 3) {
        for (int i = 0; i < n; ++i)
            if (hull_location(h, t.points[i]) < 0)
                add("structural", "point b_" + std::to_string(i + 1) + " outside its hull");
        Int hull_area2 = polygon_double_area(h);
        if (area2_sum != hull_area2)
            add("gap", "triangle areas sum to " + std::to_string(area2_sum) +
                           "/2 but hull area is " + std::to_string(hull_area2) + "/2");
    }

    std::vector<bool> used(n, false);
    for (const auto& tr : t.triangles)
        for (int v : tr) used[v] = true;
    for (int i = 0; i < n; ++i)
        if (!used[i]) add("unused-point", "point b_" + std::to_string(i + 1) + " is not a vertex of any triangle");

    for (auto p : hull_lattice_points(t))
        if (t.index_of(p) < 0)
            add("missing-lattice-point", "hull lattice point " + to_string(p) + " is not listed");

    return rep;
}

/// Lattice points strictly inside the hull; their count is the genus g.
inline std::vector<LatticePoint> interior_lattice_points(const Triangulation& t) {
    std::vector<LatticePoint> out;
    for (auto p : hull_lattice_points(t))
        if (hull_location(t.hull(), p) > 0) out.push_back(p);
    return out;
}

inline int genus(const Triangulation& t) {
    return static_cast<int>(interior_lattice_points(t).size());
}

// ---------------------------------------------------------------------------
// Polygon sides
// ---------------------------------------------------------------------------

/// One side of the hull, endpoints in ccw order (interior on the left of a->b).
struct Side {
    IVec a;
    IVec b;
    Int integer_length() const { return content(b - a); }
};

inline std::vector<Side> sides(const Triangulation& t) {
    const auto& h = t.hull();
    std::vector<Side> out;
    for (size_t i = 0; i < h.size(); ++i) out.push_back({h[i], h[(i + 1) % h.size()]});
    return out;
}

/// Integer length d of a hull side given by its endpoints (either orientation).
inline Int side_integer_length(const Triangulation& t, IVec a, IVec b) {
    for (const auto& s : sides(t))
        if ((s.a == a && s.b == b) || (s.a == b && s.b == a)) return s.integer_length();
    throw Error("side_integer_length: segment " + to_string(a) + "-" + to_string(b) +
                " is not a side of the hull");
}

// ---------------------------------------------------------------------------
// Flags
// ---------------------------------------------------------------------------

/// A triangle with a distinguished origin b_{i3}; (e1, e2) = (b_{i1}-b_{i3},
/// b_{i2}-b_{i3}) is a positively oriented Z-basis (det +1).
struct Flag {
    int origin;  // i3
    int first;   // i1
    int second;  // i2
    IVec e1;
    IVec e2;

    bool operator==(const Flag&) const = default;
};

inline Flag make_flag(const Triangulation& t, int i3, int i1, int i2) {
    IVec e1 = t.points[i1] - t.points[i3];
    IVec e2 = t.points[i2] - t.points[i3];
    if (det(e1, e2) != 1)
        throw Error("make_flag: basis (b_" + std::to_string(i1 + 1) + "-b_" +
                    std::to_string(i3 + 1) + ", b_" + std::to_string(i2 + 1) + "-b_" +
                    std::to_string(i3 + 1) + ") has determinant " + std::to_string(det(e1, e2)));
    return Flag{i3, i1, i2, e1, e2};
}

/// All flags: one per (triangle, distinguished origin), ccw orientation.
inline std::vector<Flag> enumerate_flags(const Triangulation& t) {
    std::vector<Flag> out;
    for (const auto& tr : t.triangles) {
        for (int k = 0; k < 3; ++k) {
            int i3 = tr[k], a = tr[(k + 1) % 3], b = tr[(k + 2) % 3];
            IVec ea = t.points[a] - t.points[i3];
            IVec eb = t.points[b] - t.points[i3];
            if (det(ea, eb) == 1)
                out.push_back(Flag{i3, a, b, ea, eb});
            else
                out.push_back(Flag{i3, b, a, eb, ea});
        }
    }
    return out;
}

/// Solve delta = m' e1 + n' e2 exactly for any unimodular basis (|det| = 1).
inline IVec flag_coordinates_basis(IVec e1, IVec e2, IVec delta) {
    Int d = det(e1, e2);
    if (d != 1 && d != -1) throw Error("flag_coordinates: basis not unimodular");
    // inverse of the column matrix [e1 e2]
    Int mp = (e2.n * delta.m - e2.m * delta.n) / d;
    Int np = (-e1.n * delta.m + e1.m * delta.n) / d;
    return {mp, np};
}

/// Coordinates (m', n') of b under the flag: b - b_{i3} = m' e1 + n' e2.
inline IVec flag_coordinates(const Flag& f, const Triangulation& t, LatticePoint b) {
    return flag_coordinates_basis(f.e1, f.e2, b - t.points[f.origin]);
}

/// D of Theorem 5.2.1: an upper bound on the norm of any flag coordinate.
/// Returned as max(sqrt(2), max over flags x points of |(m', n')|); the sqrt(2)
/// floor also covers the auxiliary (-1,-1) combination used in the proof.
struct CoordinateBound {
    Int max_norm_sq;  // exact max of m'^2 + n'^2, floored at 2
    double value() const { return std::sqrt(static_cast<double>(max_norm_sq)); }
};

inline CoordinateBound flag_coordinate_bound(const Triangulation& t) {
    Int best = 2;
    for (const auto& f : enumerate_flags(t))
        for (auto p : t.points) {
            IVec c = flag_coordinates(f, t, p);
            best = std::max(best, c.m * c.m + c.n * c.n);
        }
    return {best};
}

}  // namespace tropimirror::lattice
