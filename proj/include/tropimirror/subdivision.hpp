#pragma once

#include <map>
#include <optional>
#include <set>

#include "tropimirror/lattice.hpp"

namespace tropimirror::lattice {

// ---------------------------------------------------------------------------
// Exact 2D convex cones (through the origin), canonical forms
// ---------------------------------------------------------------------------

/// Canonical polyhedral cone in R^2 with integer generators.
struct Cone2 {
    enum class Kind { Zero, Ray, Wedge, Halfplane, Line, Plane };
    Kind kind = Kind::Zero;
    IVec a{0, 0};  // Ray: direction; Wedge: first extreme ray (ccw); Halfplane: inward normal; Line: direction
    IVec b{0, 0};  // Wedge: second extreme ray

    bool operator==(const Cone2&) const = default;

    static Cone2 zero() { return {}; }
    static Cone2 plane() { return {Kind::Plane, {}, {}}; }
    static Cone2 ray(IVec d) { return {Kind::Ray, primitive(d), {}}; }
    static Cone2 line(IVec d) {
        IVec p = primitive(d);
        if (p.m < 0 || (p.m == 0 && p.n < 0)) p = -p;  // canonical sign
        return {Kind::Line, p, {}};
    }
    static Cone2 halfplane_inward(IVec n) { return {Kind::Halfplane, primitive(n), {}}; }
    static Cone2 wedge(IVec u, IVec v) {
        u = primitive(u);
        v = primitive(v);
        if (det(u, v) <= 0) throw Error("Cone2::wedge: generators not ccw-ordered");
        return {Kind::Wedge, u, v};
    }

    /// Positive hull of a set of ray directions and line directions.
    static Cone2 hull(std::vector<IVec> rays, const std::vector<IVec>& lines = {}) {
        for (IVec l : lines) {
            rays.push_back(l);
            rays.push_back(-l);
        }
        std::vector<IVec> dirs;
        for (IVec r : rays) {
            if (r == IVec{0, 0}) continue;
            IVec p = primitive(r);
            if (std::find(dirs.begin(), dirs.end(), p) == dirs.end()) dirs.push_back(p);
        }
        if (dirs.empty()) return zero();
        if (dirs.size() == 1) return ray(dirs[0]);

        // sort by angle, exactly
        auto half = [](IVec v) { return (v.n < 0 || (v.n == 0 && v.m < 0)) ? 1 : 0; };
        std::sort(dirs.begin(), dirs.end(), [&](IVec u, IVec v) {
            if (half(u) != half(v)) return half(u) < half(v);
            return det(u, v) > 0;
        });

        bool has_opposite = false;
        for (IVec d : dirs)
            if (std::find(dirs.begin(), dirs.end(), -d) != dirs.end()) { has_opposite = true; break; }

        if (has_opposite) {
            // lineality present: find a line L = span(d); classify the rest
            for (IVec d : dirs) {
                if (std::find(dirs.begin(), dirs.end(), -d) == dirs.end()) continue;
                bool pos = false, neg = false;
                for (IVec o : dirs) {
                    Int s = det(d, o);
                    pos |= s > 0;
                    neg |= s < 0;
                }
                if (pos && neg) return plane();
                if (!pos && !neg) return line(d);
                return halfplane_inward(pos ? rot90(d) : -rot90(d));
            }
        }

        // pointed case: at most one cyclic gap between consecutive directions
        // can exceed pi; the cone is the wedge complementary to that gap
        size_t k = dirs.size();
        for (size_t i = 0; i < k; ++i) {
            IVec u = dirs[i], v = dirs[(i + 1) % k];
            if (det(u, v) < 0) return wedge(v, u);
        }
        return plane();
    }

    Cone2 dual() const {
        switch (kind) {
            case Kind::Zero: return plane();
            case Kind::Plane: return zero();
            case Kind::Ray: return halfplane_inward(-a);
            case Kind::Halfplane: return ray(-a);
            case Kind::Line: return line(rot90(a));
            case Kind::Wedge: return wedge(rot90(b), -rot90(a));
        }
        throw Error("Cone2::dual: bad kind");
    }

    std::string str() const {
        switch (kind) {
            case Kind::Zero: return "{0}";
            case Kind::Plane: return "R^2";
            case Kind::Ray: return "ray" + to_string(a);
            case Kind::Halfplane: return "halfplane(n=" + to_string(a) + ")";
            case Kind::Line: return "line" + to_string(a);
            case Kind::Wedge: return "wedge(" + to_string(a) + "," + to_string(b) + ")";
        }
        return "?";
    }
};

// ---------------------------------------------------------------------------
// Subdivision: a finite polyhedral cell complex with exact local cone data
// ---------------------------------------------------------------------------

/// Cells carry only combinatorics plus the exact cones cone(tau, sigma) of
/// covering incidences; unbounded cells are handled through their recession
/// directions, which is all the Definition 2.1.2 test needs.
class Subdivision {
  public:
    struct Cell {
        int dim;
        Vec2d anchor;       // representative coordinates (for reports/rendering)
        std::string label;  // human-readable id
        std::vector<int> faces;  // covering faces (dimension dim-1 cells)
    };

    int add_cell(int dim, Vec2d anchor, std::string label) {
        cells_.push_back({dim, anchor, std::move(label), {}});
        return static_cast<int>(cells_.size()) - 1;
    }

    /// Record tau as a codim-1 face of sigma together with cone(tau, sigma).
    void set_covering(int tau, int sigma, Cone2 local) {
        cells_[sigma].faces.push_back(tau);
        cones_[{tau, sigma}] = local;
    }

    /// Cone of a cell in itself: its linear span.
    void set_span(int c, Cone2 span) { cones_[{c, c}] = span; }

    size_t size() const { return cells_.size(); }
    const Cell& cell(int i) const { return cells_[i]; }

    /// Reflexive-transitive closure of the face relation (tau <= sigma).
    bool incident(int tau, int sigma) const { return closure_.count({tau, sigma}) > 0; }

    const std::map<std::pair<int, int>, Cone2>& cones() const { return cones_; }

    Cone2 cone(int tau, int sigma) const {
        auto it = cones_.find({tau, sigma});
        if (it == cones_.end())
            throw Error("Subdivision: no cone for (" + cells_[tau].label + ", " +
                        cells_[sigma].label + ")");
        return it->second;
    }

    /// Build incidence closure, default spans, and composite cones for
    /// non-covering incidences (e.g. vertex inside a 2-cell).
    void finalize() {
        size_t n = cells_.size();
        for (size_t i = 0; i < n; ++i) closure_.insert({int(i), int(i)});
        // transitive closure over covering pairs
        bool changed = true;
        std::set<std::pair<int, int>> cov;
        for (size_t s = 0; s < n; ++s)
            for (int f : cells_[s].faces) cov.insert({f, int(s)});
        for (auto [f, s] : cov) closure_.insert({f, s});
        while (changed) {
            changed = false;
            for (auto [a, b] : std::set<std::pair<int, int>>(closure_))
                for (auto [c, d] : cov)
                    if (c == b && !closure_.count({a, d})) {
                        closure_.insert({a, d});
                        changed = true;
                    }
        }
        // spans where not provided
        for (size_t i = 0; i < n; ++i) {
            if (cones_.count({int(i), int(i)})) continue;
            if (cells_[i].dim == 0) set_span(int(i), Cone2::zero());
            else if (cells_[i].dim == 2) set_span(int(i), Cone2::plane());
            else throw Error("Subdivision: span for 1-cell " + cells_[i].label + " must be set");
        }
        // composite cones: cone(tau, sigma) for a non-covering incidence is the
        // positive hull of cone(tau, rho) over covering steps tau < rho <= sigma
        for (auto [a, b] : closure_) {
            if (cones_.count({a, b})) continue;
            std::vector<IVec> rays, lines;
            auto absorb = [&](const Cone2& c) {
                switch (c.kind) {
                    case Cone2::Kind::Zero: break;
                    case Cone2::Kind::Ray: rays.push_back(c.a); break;
                    case Cone2::Kind::Wedge: rays.push_back(c.a); rays.push_back(c.b); break;
                    case Cone2::Kind::Line: lines.push_back(c.a); break;
                    case Cone2::Kind::Halfplane:
                        lines.push_back(rot90(c.a));
                        rays.push_back(c.a);
                        break;
                    case Cone2::Kind::Plane:
                        lines.push_back({1, 0});
                        lines.push_back({0, 1});
                        break;
                }
            };
            for (auto [f, s] : cov)
                if (f == a && incident(s, b)) absorb(cones_.at({f, s}));
            cones_[{a, b}] = Cone2::hull(rays, lines);
        }
    }

  private:
    std::vector<Cell> cells_;
    std::map<std::pair<int, int>, Cone2> cones_;
    std::set<std::pair<int, int>> closure_;
};

// ---------------------------------------------------------------------------
// Duality check (Definition 2.1.2)
// ---------------------------------------------------------------------------

struct DualityWitness {
    bool ok = true;
    std::string message;  // empty when ok
};

/// corr maps cell ids of s to cell ids of t. Checks: bijectivity,
/// inclusion reversal, dim sigma + dim sigma* = 2, and that cone(tau, sigma)
/// is the dual cone of cone(sigma*, tau*) for every incident pair.
inline DualityWitness check_dual_subdivision(const Subdivision& s, const Subdivision& t,
                                             const std::vector<int>& corr) {
    if (corr.size() != s.size()) throw Error("check_dual_subdivision: corr size mismatch");
    std::vector<int> seen(t.size(), 0);
    for (int c : corr) {
        if (c < 0 || c >= static_cast<int>(t.size()))
            throw Error("check_dual_subdivision: corr target out of range");
        if (seen[c]++) throw Error("check_dual_subdivision: corr is not injective");
    }
    for (int c : seen)
        if (!c) throw Error("check_dual_subdivision: corr is not surjective");

    auto fail = [](std::string m) { return DualityWitness{false, std::move(m)}; };

    for (size_t i = 0; i < s.size(); ++i)
        if (s.cell(i).dim + t.cell(corr[i]).dim != 2)
            return fail("dimension condition fails at " + s.cell(i).label + " <-> " +
                        t.cell(corr[i]).label);

    for (size_t a = 0; a < s.size(); ++a)
        for (size_t b = 0; b < s.size(); ++b) {
            bool inc_s = s.incident(int(a), int(b));
            bool inc_t = t.incident(corr[b], corr[a]);
            if (inc_s != inc_t)
                return fail("inclusion reversal fails for (" + s.cell(a).label + " <= " +
                            s.cell(b).label + ") vs (" + t.cell(corr[b]).label + " <= " +
                            t.cell(corr[a]).label + ")");
        }

    for (size_t a = 0; a < s.size(); ++a)
        for (size_t b = 0; b < s.size(); ++b) {
            if (!s.incident(int(a), int(b))) continue;
            Cone2 cs = s.cone(int(a), int(b));
            Cone2 ct = t.cone(corr[b], corr[a]);
            if (cs.dual() != ct)
                return fail("cone duality fails for (" + s.cell(a).label + " <= " +
                            s.cell(b).label + "): cone " + cs.str() + " has dual " +
                            cs.dual().str() + " but the partner cone is " + ct.str());
        }
    return {};
}

// ---------------------------------------------------------------------------
// The triangulation as a subdivision of its polygon
// ---------------------------------------------------------------------------

struct TriangulationSubdivision {
    Subdivision sub;
    std::map<int, int> vertex_cell;                  // point index -> cell id
    std::map<std::pair<int, int>, int> edge_cell;    // (i<j) -> cell id
    std::vector<int> triangle_cell;                  // triangle index -> cell id
};

inline TriangulationSubdivision triangulation_subdivision(const Triangulation& t) {
    TriangulationSubdivision out;
    auto& sub = out.sub;
    for (size_t i = 0; i < t.points.size(); ++i) {
        IVec p = t.points[i];
        out.vertex_cell[int(i)] = sub.add_cell(
            0, {double(p.m), double(p.n)}, "b_" + std::to_string(i + 1));
    }
    for (auto [i, j] : t.edges()) {
        IVec pi = t.points[i], pj = t.points[j];
        int c = sub.add_cell(1, {0.5 * double(pi.m + pj.m), 0.5 * double(pi.n + pj.n)},
                             "edge{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}");
        out.edge_cell[{i, j}] = c;
        sub.set_covering(out.vertex_cell[i], c, Cone2::ray(pj - pi));
        sub.set_covering(out.vertex_cell[j], c, Cone2::ray(pi - pj));
        sub.set_span(c, Cone2::line(pj - pi));
    }
    for (size_t k = 0; k < t.triangles.size(); ++k) {
        auto tr = t.triangles[k];
        IVec a = t.points[tr[0]], b = t.points[tr[1]], c = t.points[tr[2]];
        int cc = sub.add_cell(2,
                              {double(a.m + b.m + c.m) / 3.0, double(a.n + b.n + c.n) / 3.0},
                              "tri" + std::to_string(k + 1));
        out.triangle_cell.push_back(cc);
        for (int e = 0; e < 3; ++e) {
            int i = tr[e], j = tr[(e + 1) % 3], k3 = tr[(e + 2) % 3];
            auto key = std::make_pair(std::min(i, j), std::max(i, j));
            IVec dir = t.points[j] - t.points[i];
            IVec inward = rot90(dir);
            if (dot(inward, t.points[k3] - t.points[i]) < 0) inward = -inward;
            sub.set_covering(out.edge_cell[key], cc, Cone2::halfplane_inward(inward));
        }
    }
    sub.finalize();
    return out;
}

}  // namespace tropimirror::lattice
