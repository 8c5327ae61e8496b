#pragma once

#include <random>

#include "tropimirror/tropical.hpp"

namespace tropimirror::realcurve {

using mirror::MirrorPolynomial;
using mirror::QValue;

inline double ipow_real(double x, Int k) {
    if (k < 0) return 1.0 / ipow_real(x, -k);
    double r = 1.0, b = x;
    for (Int e = k; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Quadrants and domain components (Theorem 5.2.1, Lemma 5.2.2)
// ---------------------------------------------------------------------------

/// Signs of (x, y) on the component; {-1,+1} each.
struct Quadrant {
    int sx = 1;
    int sy = 1;
    bool operator==(const Quadrant&) const = default;
};

inline std::string to_string(Quadrant s) {
    return std::string("(") + (s.sx > 0 ? "+" : "-") + "," + (s.sy > 0 ? "+" : "-") + ")";
}

/// Lemma 5.2.2 parity table. b must be an interior lattice point.
inline Quadrant quadrant_of_domain_component(const lattice::Triangulation& t, LatticePoint b) {
    if (lattice::hull_location(t.hull(), b) <= 0)
        throw Error("quadrant_of_domain_component: " + to_string(b) + " is not interior");
    auto odd = [](Int k) { return (k % 2 + 2) % 2 == 1; };
    bool om = odd(b.m), on = odd(b.n);
    if (!om && !on) return {-1, -1};
    if (om && on) return {+1, +1};
    if (!om && on) return {+1, -1};
    return {-1, +1};
}

/// The largest slack constant the Theorem 5.2.1 test may use: (1+c)^{2D} < 4/3.
inline double default_dominance_slack(const lattice::Triangulation& t) {
    double D = lattice::flag_coordinate_bound(t).value();
    return 0.5 * (std::pow(4.0 / 3.0, 1.0 / (2.0 * D)) - 1.0);
}

/// (1+c) |a_i x^{m_i} y^{n_i}| > |a_j x^{m_j} y^{n_j}| for all j != i at z.
inline bool domain_component_test(const MirrorPolynomial& H, const QValue& q,
                                  std::pair<double, double> z, int i, double c) {
    double D = lattice::flag_coordinate_bound(H.tri).value();
    if (!(c > 0) || !(std::pow(1.0 + c, 2.0 * D) < 4.0 / 3.0))
        throw Error("domain_component_test: slack constant violates (1+c)^{2D} < 4/3");
    auto coeffs = mirror::coefficient_values(H, q);
    IVec b = H.tri.points[i];
    double lead = 0.0;
    for (auto& [pt, cf] : coeffs)
        if (pt == b) lead = std::abs(cf) * std::abs(ipow_real(z.first, pt.m)) *
                            std::abs(ipow_real(z.second, pt.n));
    for (auto& [pt, cf] : coeffs) {
        if (pt == b) continue;
        double other = std::abs(cf) * std::abs(ipow_real(z.first, pt.m)) *
                       std::abs(ipow_real(z.second, pt.n));
        if (!((1.0 + c) * lead > other)) return false;
    }
    return true;
}

struct DomainComponentEntry {
    IVec point;
    std::pair<double, double> sample;  // H > 0 here (times the chart prefactor sign)
    std::pair<double, double> outer;   // sign already flipped: IVT bracket
    Quadrant quadrant;
};

/// One certified sample per interior lattice point: the image of (-1/3, -1/3)
/// under the inverse change of a flag at that point, with a dominance check, a
/// sign-change bracket toward the component boundary, and the parity quadrant.
inline std::map<IVec, DomainComponentEntry> find_domain_components(const MirrorPolynomial& H,
                                                                   const QValue& q) {
    std::map<IVec, DomainComponentEntry> out;
    double c = default_dominance_slack(H.tri);
    auto coeffs = mirror::coefficient_values(H, q);
    auto flags = lattice::enumerate_flags(H.tri);
    for (IVec b : lattice::interior_lattice_points(H.tri)) {
        int bi = H.tri.index_of(b);
        const lattice::Flag* flag = nullptr;
        for (const auto& f : flags)
            if (f.origin == bi) {
                flag = &f;
                break;
            }
        if (!flag) throw Error("find_domain_components: no flag at " + to_string(b));
        auto [Hp, cc] = mirror::change_flag(H, *flag);

        auto chart_point = [&](double s) {
            return mirror::inverse_change_real(cc, q, -s / 3.0, -s / 3.0);
        };
        auto eval_at = [&](std::pair<double, double> z) {
            double v = 0.0;
            for (auto& [pt, cf] : coeffs)
                v += cf * ipow_real(z.first, pt.m) * ipow_real(z.second, pt.n);
            return v;
        };

        DomainComponentEntry e;
        e.point = b;
        e.sample = chart_point(1.0);
        if (!domain_component_test(H, q, e.sample, bi, c))
            throw RegimeError("find_domain_components: dominance fails at the sample for " +
                              to_string(b));
        double inner = eval_at(e.sample);
        bool bracketed = false;
        for (double s = 1.0; s <= 4.0; s += 0.05) {
            auto z = chart_point(s);
            if (eval_at(z) * inner < 0) {
                e.outer = z;
                bracketed = true;
                break;
            }
        }
        if (!bracketed)
            throw RegimeError("find_domain_components: no sign change toward the boundary for " +
                              to_string(b));
        e.quadrant = {e.sample.first > 0 ? 1 : -1, e.sample.second > 0 ? 1 : -1};
        if (!(e.quadrant == quadrant_of_domain_component(H.tri, b)))
            throw Error("find_domain_components: sample quadrant " + to_string(e.quadrant) +
                        " contradicts the parity rule for " + to_string(b));
        out[b] = e;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Marching squares census (Corollary 5.2.3)
// ---------------------------------------------------------------------------

namespace detail {

struct UnionFind {
    std::vector<int> up;
    int find(int a) {
        while (up[a] != a) a = up[a] = up[up[a]];
        return a;
    }
    void unite(int a, int b) { up[find(a)] = find(b); }
    int add() {
        up.push_back(int(up.size()));
        return int(up.size()) - 1;
    }
};

struct Segment {
    Vec2d a, b;
    int comp = -1;
};

/// Marching-squares extraction of {f = 0} on a (G+1)^2 node grid.
struct Marching {
    int G = 0;
    double u0, u1, v0, v1;
    std::vector<Segment> segments;
    int n_components = 0;
    std::vector<bool> component_open;
    bool had_zero_node = false;

    template <class F>
    void run(F&& f, int grid, double a0, double a1, double b0, double b1) {
        G = grid;
        u0 = a0;
        u1 = a1;
        v0 = b0;
        v1 = b1;
        const double du = (u1 - u0) / G, dv = (v1 - v0) / G;
        std::vector<double> val(size_t(G + 1) * (G + 1));
        for (int j = 0; j <= G; ++j)
            for (int i = 0; i <= G; ++i) {
                double x = f(u0 + i * du, v0 + j * dv);
                if (std::abs(x) < 1e-12) had_zero_node = true;
                val[size_t(j) * (G + 1) + i] = x;
            }
        auto node = [&](int i, int j) { return val[size_t(j) * (G + 1) + i]; };

        // crossing-edge ids: horizontal (i,j)-(i+1,j) and vertical (i,j)-(i,j+1)
        std::map<long long, int> edge_id;
        UnionFind uf;
        std::vector<Vec2d> edge_pt;
        std::vector<bool> edge_boundary;
        auto edge = [&](bool horiz, int i, int j) {
            long long key = ((long long)(horiz ? 0 : 1) << 62) | ((long long)j << 31) | i;
            auto it = edge_id.find(key);
            if (it != edge_id.end()) return it->second;
            double fa = node(i, j);
            double fb = horiz ? node(i + 1, j) : node(i, j + 1);
            double t = fa / (fa - fb);
            Vec2d p = horiz ? Vec2d{u0 + (i + t) * du, v0 + j * dv}
                            : Vec2d{u0 + i * du, v0 + (j + t) * dv};
            int id = uf.add();
            edge_id[key] = id;
            edge_pt.push_back(p);
            edge_boundary.push_back(horiz ? (j == 0 || j == G) : (i == 0 || i == G));
            return id;
        };

        for (int j = 0; j < G; ++j)
            for (int i = 0; i < G; ++i) {
                bool bl = node(i, j) > 0, br = node(i + 1, j) > 0;
                bool tl = node(i, j + 1) > 0, tr = node(i + 1, j + 1) > 0;
                int code = bl + 2 * br + 4 * tr + 8 * tl;
                if (code == 0 || code == 15) continue;
                int eb = -1, et = -1, el = -1, er = -1;
                if (bl != br) eb = edge(true, i, j);
                if (tl != tr) et = edge(true, i, j + 1);
                if (bl != tl) el = edge(false, i, j);
                if (br != tr) er = edge(false, i + 1, j);
                auto link = [&](int a, int b2) {
                    uf.unite(a, b2);
                    segments.push_back({edge_pt[a], edge_pt[b2], -1});
                };
                if (code == 5 || code == 10) {  // saddle: disambiguate by the center
                    double fc = f(u0 + (i + 0.5) * du, v0 + (j + 0.5) * dv);
                    bool center = fc > 0;
                    if ((code == 5) == center) {
                        link(el, eb);
                        link(et, er);
                    } else {
                        link(el, et);
                        link(eb, er);
                    }
                } else {
                    std::vector<int> es;
                    for (int e : {eb, er, et, el})
                        if (e >= 0) es.push_back(e);
                    if (es.size() == 2) link(es[0], es[1]);
                }
            }

        std::map<int, int> root_to_comp;
        std::vector<bool> open_flag;
        for (size_t e = 0; e < edge_pt.size(); ++e) {
            int r = uf.find(int(e));
            if (!root_to_comp.count(r)) {
                root_to_comp[r] = n_components++;
                open_flag.push_back(false);
            }
            if (edge_boundary[e]) open_flag[root_to_comp[r]] = true;
        }
        component_open = open_flag;
        for (auto& s : segments) {
            // recover from either endpoint: find nearest edge point
            // (endpoints are exactly edge points, so match by equality)
            ;
        }
        // assign components by re-walking cells (store comp on creation instead)
        // simpler: recompute segment comp from its first endpoint's edge id
        size_t si = 0;
        (void)si;
        // rebuild: map from position to edge idx is fragile; instead remember
        // during link: segments were pushed in the same order as links, so we
        // re-run the assignment using uf roots of the endpoints we stored.
        // We stored positions only; do a nearest lookup over edge points.
        for (auto& s : segments) {
            int best = -1;
            double bd = 1e300;
            for (size_t e = 0; e < edge_pt.size(); ++e) {
                double d = std::abs(edge_pt[e].x - s.a.x) + std::abs(edge_pt[e].y - s.a.y);
                if (d < bd) {
                    bd = d;
                    best = int(e);
                }
            }
            s.comp = root_to_comp[uf.find(best)];
        }
    }

    /// even-odd containment test against one component's segments
    bool contains(int comp, Vec2d p) const {
        int crossings = 0;
        for (const auto& s : segments) {
            if (s.comp != comp) continue;
            double y0 = s.a.y, y1 = s.b.y;
            if ((y0 > p.y) == (y1 > p.y)) continue;
            double t = (p.y - y0) / (y1 - y0);
            double x = s.a.x + t * (s.b.x - s.a.x);
            if (x > p.x) ++crossings;
        }
        return crossings % 2 == 1;
    }
};

}  // namespace detail

struct QuadrantComponent {
    Quadrant quadrant;
    bool closed = true;
    std::optional<IVec> domain_point;  // matched interior lattice point
    Vec2d sample_log;                  // a point inside (log coordinates), when matched
};

struct ComponentReport {
    int genus = 0;
    int closed_components = 0;
    bool unbounded_present = false;
    int total_compactified = 0;
    bool m_curve = false;
    bool uncertain = false;
    std::string note;
    std::vector<QuadrantComponent> bounded;
    // raw marching data for rendering, one per quadrant (++, +-, -+, --)
    std::vector<std::pair<Quadrant, detail::Marching>> marching;
};

/// Bounding box for real-curve scans: spine bounding box padded by 5 units,
/// with a log|a_i| fallback when the series certificates are unavailable.
inline std::array<double, 4> census_box(const MirrorPolynomial& H, const QValue& q) {
    std::vector<tropical::AffineTerm> ts;
    auto coeffs = mirror::coefficient_values(H, q);
    try {
        auto sc = tropical::spine_coefficients(H, q, 1e-3);
        for (size_t i = 0; i < H.tri.points.size(); ++i)
            ts.push_back({sc.gamma[i], H.tri.points[i]});
    } catch (const Error&) {
        for (auto& [pt, c] : coeffs) ts.push_back({std::log(std::abs(c)), pt});
    }
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    try {
        auto curve = tropical::tropical_hypersurface(tropical::TropicalPolynomial::of(ts));
        if (!curve.vertices.empty()) {
            x0 = x1 = curve.vertices[0].pos.x;
            y0 = y1 = curve.vertices[0].pos.y;
            for (const auto& v : curve.vertices) {
                x0 = std::min(x0, v.pos.x);
                x1 = std::max(x1, v.pos.x);
                y0 = std::min(y0, v.pos.y);
                y1 = std::max(y1, v.pos.y);
            }
        }
    } catch (const Error&) {
    }
    return {x0 - 5.0, x1 + 5.0, y0 - 5.0, y1 + 5.0};
}

inline ComponentReport count_real_components(const MirrorPolynomial& H, const QValue& q,
                                             int grid_res = 512) {
    if (grid_res < 256) throw Error("count_real_components: grid_res must be >= 256");
    ComponentReport rep;
    rep.genus = lattice::genus(H.tri);
    auto box = census_box(H, q);
    auto coeffs = mirror::coefficient_values(H, q);

    std::map<IVec, DomainComponentEntry> domains;
    bool matched_available = true;
    try {
        domains = find_domain_components(H, q);
    } catch (const Error& e) {
        matched_available = false;
        rep.note = std::string("domain-component certificates unavailable: ") + e.what();
    }

    for (Quadrant quad : {Quadrant{1, 1}, Quadrant{1, -1}, Quadrant{-1, 1}, Quadrant{-1, -1}}) {
        detail::Marching m;
        auto f = [&](double u, double v) {
            return mirror::evaluate_real(coeffs, quad.sx, quad.sy, u, v);
        };
        m.run(f, grid_res, box[0], box[1], box[2], box[3]);
        if (m.had_zero_node) {
            // widen once: shift the window by a fraction of a cell
            double eps = 0.37 * (box[1] - box[0]) / grid_res;
            detail::Marching m2;
            m2.run(f, grid_res, box[0] - eps, box[1] + eps, box[2] - eps, box[3] + eps);
            if (m2.had_zero_node) rep.uncertain = true;
            m = std::move(m2);
        }
        for (int comp = 0; comp < m.n_components; ++comp) {
            if (m.component_open[comp]) {
                rep.unbounded_present = true;
                continue;
            }
            QuadrantComponent qc;
            qc.quadrant = quad;
            qc.closed = true;
            if (matched_available) {
                for (auto& [b, entry] : domains) {
                    if (!(entry.quadrant == quad)) continue;
                    Vec2d lp{std::log(std::abs(entry.sample.first)),
                             std::log(std::abs(entry.sample.second))};
                    if (m.contains(comp, lp)) {
                        qc.domain_point = b;
                        qc.sample_log = lp;
                    }
                }
            }
            rep.bounded.push_back(qc);
            ++rep.closed_components;
        }
        rep.marching.push_back({quad, std::move(m)});
    }
    rep.total_compactified = rep.closed_components + (rep.unbounded_present ? 1 : 0);
    rep.m_curve = rep.total_compactified == rep.genus + 1;
    return rep;
}

}  // namespace tropimirror::realcurve
