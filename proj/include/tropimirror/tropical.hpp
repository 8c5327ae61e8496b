#pragma once

#include <map>
#include <optional>

#include "tropimirror/amoeba.hpp"
#include "tropimirror/subdivision.hpp"

namespace tropimirror::tropical {

using lattice::Subdivision;
using mirror::MirrorPolynomial;
using mirror::QValue;

// ---------------------------------------------------------------------------
// Tropical polynomials
// ---------------------------------------------------------------------------

struct AffineTerm {
    double gamma = 0.0;
    IVec slope;
};

struct TropicalPolynomial {
    std::vector<AffineTerm> terms;

    static TropicalPolynomial of(std::vector<AffineTerm> ts) {
        TropicalPolynomial p{std::move(ts)};
        for (size_t i = 0; i < p.terms.size(); ++i)
            for (size_t j = i + 1; j < p.terms.size(); ++j)
                if (p.terms[i].slope == p.terms[j].slope)
                    throw Error("TropicalPolynomial: slopes must be distinct");
        return p;
    }
    double operator()(Vec2d w) const {
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& t : terms)
            best = std::max(best, t.gamma + t.slope.m * w.x + t.slope.n * w.y);
        return best;
    }
};

// ---------------------------------------------------------------------------
// Spine coefficients: gamma_i via the dominance series
// ---------------------------------------------------------------------------

struct TruncationEntry {
    IVec point;
    int k_max = 0;
    double tail_bound = 0.0;
    double witness_ratio = 0.0;
    double gamma = 0.0;
};

struct SpineCoefficients {
    std::vector<double> gamma;              // indexed like H.tri.points
    std::vector<TruncationEntry> report;
};

namespace detail {

inline double ipow(double x, Int k) {
    double r = 1.0, b = x;
    for (Int e = k; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

// sum over multisets {n_j} of the other lattice points with sum n_j = k and
// sum n_j b_j = k b_i of multinomial(k; n) * prod c_j^{n_j}
struct SeriesEnumerator {
    std::vector<IVec> pts;     // the other points
    std::vector<double> cs;    // their coefficients
    std::vector<Int> min_m, max_m, min_n, max_n;  // suffix reach per slot
    Int target_m = 0, target_n = 0;

    explicit SeriesEnumerator(const std::vector<std::pair<IVec, double>>& coeffs, IVec center) {
        for (const auto& [pt, c] : coeffs)
            if (pt != center) {
                pts.push_back(pt);
                cs.push_back(c);
            }
        size_t n = pts.size();
        min_m.assign(n + 1, 0);
        max_m.assign(n + 1, 0);
        min_n.assign(n + 1, 0);
        max_n.assign(n + 1, 0);
        for (size_t i = n; i-- > 0;) {
            min_m[i] = std::min(min_m[i + 1], pts[i].m);
            max_m[i] = std::max(max_m[i + 1], pts[i].m);
            min_n[i] = std::min(min_n[i + 1], pts[i].n);
            max_n[i] = std::max(max_n[i + 1], pts[i].n);
        }
    }

    double sum_k(int k) const {
        double total = 0.0;
        rec(0, k, 0, 0, std::lgamma(double(k + 1)), 1.0, total);
        return total;
    }

  private:
    void rec(size_t idx, int rem, Int sm, Int sn, double logmulti, double prodc,
             double& total) const {
        if (idx == pts.size()) {
            if (rem == 0 && sm == target_m && sn == target_n) total += std::exp(logmulti) * prodc;
            return;
        }
        Int lo_m = sm + rem * min_m[idx], hi_m = sm + rem * max_m[idx];
        Int lo_n = sn + rem * min_n[idx], hi_n = sn + rem * max_n[idx];
        if (target_m < lo_m || target_m > hi_m || target_n < lo_n || target_n > hi_n) return;
        double pc = prodc, lg = logmulti;
        for (int cnt = 0; cnt <= rem; ++cnt) {
            rec(idx + 1, rem - cnt, sm + cnt * pts[idx].m, sn + cnt * pts[idx].n, lg, pc, total);
            pc *= cs[idx];
            lg -= std::log(double(cnt + 1));
        }
    }
};

}  // namespace detail

/// gamma_i = log|a_i(q)| + Re sum_k (-1)^{k+1}/k sum over ordered tuples of
/// other lattice points summing to k b_i of prod a_{sigma_j}(q) / a_i(q)^k.
/// Truncated at the smallest k_max with 4 (3/4)^{k_max} < tol (hard cap 60);
/// requires a dominance witness with ratio <= 3/4 for every term.
inline SpineCoefficients spine_coefficients(const MirrorPolynomial& H, const QValue& q,
                                            double tol = 1e-6) {
    int k_max = 1;
    while (4.0 * std::pow(0.75, k_max) >= tol && k_max <= 60) ++k_max;
    if (k_max > 60)
        throw Error("spine_coefficients: tolerance unreachable within the k <= 60 cap");

    auto coeffs = mirror::coefficient_values(H, q);
    SpineCoefficients out;
    out.gamma.resize(H.tri.points.size());
    for (size_t i = 0; i < H.tri.points.size(); ++i) {
        IVec b = H.tri.points[i];
        auto cert = amoeba::dominance_certificate(H, q, b);
        if (!cert.found || cert.ratio > 0.75)
            throw RegimeError("spine_coefficients: not in the large-radius regime; term " +
                              to_string(b) + " has no dominance witness with ratio <= 3/4 (best " +
                              std::to_string(cert.ratio) + ")");
        double ci = 0.0;
        for (const auto& [pt, c] : coeffs)
            if (pt == b) ci = c;
        detail::SeriesEnumerator en(coeffs, b);
        en.target_m = Int(0);
        double gamma = std::log(std::abs(ci));
        for (int k = 1; k <= k_max; ++k) {
            en.target_m = Int(k) * b.m;
            en.target_n = Int(k) * b.n;
            double Sk = en.sum_k(k);
            if (Sk != 0.0) {
                double sign = (k % 2 == 1) ? 1.0 : -1.0;
                gamma += sign * Sk / (double(k) * detail::ipow(ci, k));
            }
        }
        out.gamma[i] = gamma;
        out.report.push_back({b, k_max, 4.0 * std::pow(0.75, k_max), cert.ratio, gamma});
    }
    return out;
}

inline TropicalPolynomial tropical_polynomial(const MirrorPolynomial& H,
                                              const SpineCoefficients& sc) {
    std::vector<AffineTerm> ts;
    for (size_t i = 0; i < H.tri.points.size(); ++i)
        ts.push_back({sc.gamma[i], H.tri.points[i]});
    return TropicalPolynomial::of(std::move(ts));
}

// ---------------------------------------------------------------------------
// Corner locus
// ---------------------------------------------------------------------------

struct SpineVertex {
    Vec2d pos;
    std::vector<int> terms;  // indices of tied terms, sorted
};

struct SpineEdge {
    int i, j;    // tied term indices, i < j
    int v0, v1;  // endpoint vertex ids
};

struct SpineRay {
    int i, j;
    int v0;
    IVec dir;  // primitive integer direction
};

struct SpineLine {
    int i, j;
    Vec2d point;
    IVec dir;
};

struct TropicalCurve {
    std::vector<AffineTerm> terms;
    std::vector<SpineVertex> vertices;
    std::vector<SpineEdge> edges;
    std::vector<SpineRay> rays;
    std::vector<SpineLine> lines;
};

/// Complete corner locus of max of the affine terms. Vertices within 1e-9
/// (relative) are merged; ray directions are exact primitive integers.
inline TropicalCurve tropical_hypersurface(const TropicalPolynomial& T) {
    const auto& ts = T.terms;
    const int n = static_cast<int>(ts.size());
    if (n < 2) throw Error("tropical_hypersurface: need at least two terms");
    {
        bool all_same = true;
        for (int i = 1; i < n; ++i) all_same &= ts[i].slope == ts[0].slope;
        if (all_same) throw Error("tropical_hypersurface: degenerate, all slopes equal");
    }

    TropicalCurve c;
    c.terms = ts;
    const double INF = std::numeric_limits<double>::infinity();
    double scale = 1.0;
    for (const auto& t : ts) scale = std::max(scale, std::abs(t.gamma));
    const double eps = 1e-9 * scale;

    struct RawPiece {
        int i, j;
        bool lo_open, hi_open;
        Vec2d plo, phi;  // finite endpoints when the side is closed
        IVec dir;        // integer direction of increasing parameter
    };
    std::vector<RawPiece> pieces;

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            IVec d = ts[j].slope - ts[i].slope;
            if (d == IVec{0, 0}) throw Error("tropical_hypersurface: duplicate slopes");
            // base point p0 on the tie line, direction u = rot90(d)
            double dn = double(d.m) * d.m + double(d.n) * d.n;
            Vec2d p0{(ts[i].gamma - ts[j].gamma) * d.m / dn,
                     (ts[i].gamma - ts[j].gamma) * d.n / dn};
            IVec u = rot90(d);
            double lo = -INF, hi = INF;
            bool empty = false;
            for (int l = 0; l < n && !empty; ++l) {
                if (l == i || l == j) continue;
                // (gamma_i + b_i . (p0 + t u)) - (gamma_l + b_l . (p0 + t u)) >= 0
                IVec bd = ts[i].slope - ts[l].slope;
                double c0 = ts[i].gamma - ts[l].gamma + bd.m * p0.x + bd.n * p0.y;
                double c1 = double(bd.m) * u.m + double(bd.n) * u.n;
                if (std::abs(c1) < 1e-15 * scale) {
                    if (c0 < -eps) empty = true;
                } else if (c1 > 0) {
                    lo = std::max(lo, -c0 / c1);
                } else {
                    hi = std::min(hi, -c0 / c1);
                }
            }
            if (empty || lo > hi - 1e-12) continue;
            RawPiece rp;
            rp.i = i;
            rp.j = j;
            rp.dir = primitive(u);
            double ulen = std::hypot(double(u.m), double(u.n));
            rp.lo_open = !(lo > -INF);
            rp.hi_open = !(hi < INF);
            if (!rp.lo_open) rp.plo = {p0.x + lo * u.m, p0.y + lo * u.n};
            if (!rp.hi_open) rp.phi = {p0.x + hi * u.m, p0.y + hi * u.n};
            (void)ulen;
            pieces.push_back(rp);
        }

    // merge endpoints into vertices
    auto find_vertex = [&](Vec2d p) {
        for (size_t k = 0; k < c.vertices.size(); ++k) {
            Vec2d q = c.vertices[k].pos;
            if (std::abs(q.x - p.x) <= 1e-9 * (1.0 + std::abs(p.x)) &&
                std::abs(q.y - p.y) <= 1e-9 * (1.0 + std::abs(p.y)))
                return int(k);
        }
        c.vertices.push_back({p, {}});
        return int(c.vertices.size()) - 1;
    };
    auto mark_terms = [&](int v, int i, int j) {
        auto& t = c.vertices[v].terms;
        for (int x : {i, j})
            if (std::find(t.begin(), t.end(), x) == t.end()) t.push_back(x);
        std::sort(t.begin(), t.end());
    };

    for (const auto& rp : pieces) {
        if (rp.lo_open && rp.hi_open) {
            c.lines.push_back({rp.i, rp.j, {}, rp.dir});
        } else if (rp.lo_open) {
            int v = find_vertex(rp.phi);
            mark_terms(v, rp.i, rp.j);
            c.rays.push_back({rp.i, rp.j, v, -rp.dir});
        } else if (rp.hi_open) {
            int v = find_vertex(rp.plo);
            mark_terms(v, rp.i, rp.j);
            c.rays.push_back({rp.i, rp.j, v, rp.dir});
        } else {
            int v0 = find_vertex(rp.plo);
            int v1 = find_vertex(rp.phi);
            mark_terms(v0, rp.i, rp.j);
            mark_terms(v1, rp.i, rp.j);
            if (v0 != v1) c.edges.push_back({rp.i, rp.j, v0, v1});
        }
    }
    return c;
}

/// Convenience: spine of a mirror curve at a numeric q.
struct Spine {
    SpineCoefficients coeffs;
    TropicalCurve curve;
};

inline Spine spine(const MirrorPolynomial& H, const QValue& q, double tol = 1e-6) {
    Spine s;
    s.coeffs = spine_coefficients(H, q, tol);
    s.curve = tropical_hypersurface(tropical_polynomial(H, s.coeffs));
    return s;
}

// ---------------------------------------------------------------------------
// Balancing
// ---------------------------------------------------------------------------

/// At every vertex the primitive edge directions weighted by the lattice
/// length of the dual edge sum to zero (exact integer arithmetic).
inline bool balancing_check(const TropicalCurve& c) {
    for (size_t v = 0; v < c.vertices.size(); ++v) {
        IVec sum{0, 0};
        auto weight = [&](int i, int j) { return content(c.terms[i].slope - c.terms[j].slope); };
        for (const auto& e : c.edges) {
            if (size_t(e.v0) != v && size_t(e.v1) != v) continue;
            Vec2d from = c.vertices[e.v0].pos, to = c.vertices[e.v1].pos;
            if (size_t(e.v1) == v) std::swap(from, to);
            IVec d = primitive(rot90(c.terms[e.j].slope - c.terms[e.i].slope));
            if (d.m * (to.x - from.x) + d.n * (to.y - from.y) < 0) d = -d;
            sum = sum + weight(e.i, e.j) * d;
        }
        for (const auto& r : c.rays)
            if (size_t(r.v0) == v) sum = sum + weight(r.i, r.j) * r.dir;
        if (sum != IVec{0, 0}) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Induced subdivision of R^2
// ---------------------------------------------------------------------------

struct SpineSubdivision {
    Subdivision sub;
    std::vector<int> vertex_cell;                 // spine vertex -> cell id
    std::map<std::pair<int, int>, int> pair_cell; // tie pair {i<j} -> 1-cell id
    std::map<int, int> term_cell;                 // term index -> 2-cell id
};

inline SpineSubdivision subdivision_of(const TropicalCurve& c) {
    SpineSubdivision out;
    auto& sub = out.sub;
    for (size_t v = 0; v < c.vertices.size(); ++v)
        out.vertex_cell.push_back(sub.add_cell(0, c.vertices[v].pos, "v" + std::to_string(v)));

    auto pair_label = [&](int i, int j) {
        return "sigma*{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
    };
    std::set<int> active_terms;
    std::map<std::pair<int, int>, std::vector<int>> pair_one_cells;  // may hold several segments

    for (const auto& e : c.edges) {
        Vec2d a = c.vertices[e.v0].pos, b = c.vertices[e.v1].pos;
        int cell = sub.add_cell(1, {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, pair_label(e.i, e.j));
        IVec d = primitive(rot90(c.terms[e.j].slope - c.terms[e.i].slope));
        if (d.m * (b.x - a.x) + d.n * (b.y - a.y) < 0) d = -d;
        sub.set_covering(out.vertex_cell[e.v0], cell, lattice::Cone2::ray(d));
        sub.set_covering(out.vertex_cell[e.v1], cell, lattice::Cone2::ray(-d));
        sub.set_span(cell, lattice::Cone2::line(d));
        pair_one_cells[{e.i, e.j}].push_back(cell);
        active_terms.insert(e.i);
        active_terms.insert(e.j);
    }
    for (const auto& r : c.rays) {
        Vec2d a = c.vertices[r.v0].pos;
        int cell = sub.add_cell(1, {a.x + r.dir.m, a.y + r.dir.n}, pair_label(r.i, r.j));
        sub.set_covering(out.vertex_cell[r.v0], cell, lattice::Cone2::ray(r.dir));
        sub.set_span(cell, lattice::Cone2::line(r.dir));
        pair_one_cells[{r.i, r.j}].push_back(cell);
        active_terms.insert(r.i);
        active_terms.insert(r.j);
    }
    for (const auto& l : c.lines) {
        int cell = sub.add_cell(1, l.point, pair_label(l.i, l.j));
        sub.set_span(cell, lattice::Cone2::line(l.dir));
        pair_one_cells[{l.i, l.j}].push_back(cell);
        active_terms.insert(l.i);
        active_terms.insert(l.j);
    }

    for (int i : active_terms) {
        int cell = sub.add_cell(2, {}, "cell b_" + std::to_string(i + 1));
        out.term_cell[i] = cell;
        for (const auto& [pr, cs] : pair_one_cells) {
            if (pr.first != i && pr.second != i) continue;
            int other = pr.first == i ? pr.second : pr.first;
            IVec inward = primitive(c.terms[i].slope - c.terms[other].slope);
            for (int oc : cs) sub.set_covering(oc, cell, lattice::Cone2::halfplane_inward(inward));
        }
    }
    for (const auto& [pr, cs] : pair_one_cells)
        if (cs.size() == 1) out.pair_cell[pr] = cs[0];
        else out.pair_cell[pr] = cs[0];  // several collinear segments for one pair is degenerate
    sub.finalize();
    return out;
}

// ---------------------------------------------------------------------------
// Theorem 3.4: spine subdivision is dual to the triangulation
// ---------------------------------------------------------------------------

struct DualityCertificate {
    bool pass = false;
    std::string message;       // first failure, empty on PASS
    int dual_one_cell_pairs = 0;
    Spine spine;
};

inline DualityCertificate dual_check(const MirrorPolynomial& H, const QValue& q,
                                     double tol = 1e-6) {
    DualityCertificate cert;
    cert.spine = spine(H, q, tol);
    const auto& curve = cert.spine.curve;
    auto ss = subdivision_of(curve);
    auto ts = lattice::triangulation_subdivision(H.tri);

    auto fail = [&](std::string m) {
        cert.message = std::move(m);
        return cert;
    };

    // candidate bijection
    auto tri_edges = H.tri.edges();
    std::set<std::pair<int, int>> spine_pairs;
    for (const auto& [pr, cell] : ss.pair_cell) spine_pairs.insert(pr);
    for (auto e : tri_edges)
        if (!spine_pairs.count(e))
            return fail("missing dual 1-cell sigma*{" + std::to_string(e.first + 1) + "," +
                        std::to_string(e.second + 1) + "} for a triangulation edge");
    for (auto pr : spine_pairs)
        if (std::find(tri_edges.begin(), tri_edges.end(), pr) == tri_edges.end())
            return fail("extra spine 1-cell sigma*{" + std::to_string(pr.first + 1) + "," +
                        std::to_string(pr.second + 1) + "}: not a triangulation edge");
    cert.dual_one_cell_pairs = static_cast<int>(spine_pairs.size());

    std::map<std::vector<int>, int> triangle_by_verts;
    for (size_t k = 0; k < H.tri.triangles.size(); ++k) {
        std::vector<int> v(H.tri.triangles[k].begin(), H.tri.triangles[k].end());
        std::sort(v.begin(), v.end());
        triangle_by_verts[v] = ts.triangle_cell[k];
    }
    if (curve.vertices.size() != H.tri.triangles.size())
        return fail("spine has " + std::to_string(curve.vertices.size()) +
                    " vertices but the triangulation has " +
                    std::to_string(H.tri.triangles.size()) + " triangles");
    if (ss.term_cell.size() != H.tri.points.size())
        return fail("spine has " + std::to_string(ss.term_cell.size()) +
                    " two-cells but the polygon has " + std::to_string(H.tri.points.size()) +
                    " lattice points");

    std::vector<int> corr(ss.sub.size(), -1);
    for (size_t v = 0; v < curve.vertices.size(); ++v) {
        auto terms = curve.vertices[v].terms;
        if (terms.size() != 3)
            return fail("spine vertex v" + std::to_string(v) + " has " +
                        std::to_string(terms.size()) + " tied terms (not trivalent)");
        auto it = triangle_by_verts.find(terms);
        if (it == triangle_by_verts.end())
            return fail("spine vertex v" + std::to_string(v) + " is tied on a non-triangle");
        corr[ss.vertex_cell[v]] = it->second;
    }
    for (const auto& [pr, cell] : ss.pair_cell) corr[cell] = ts.edge_cell.at(pr);
    for (const auto& [term, cell] : ss.term_cell) corr[cell] = ts.vertex_cell.at(term);

    for (int c : corr)
        if (c < 0) return fail("internal: incomplete correspondence");

    lattice::DualityWitness w;
    try {
        w = lattice::check_dual_subdivision(ss.sub, ts.sub, corr);
    } catch (const Error& e) {
        return fail(e.what());
    }
    if (!w.ok) return fail(w.message);
    cert.pass = true;
    return cert;
}

}  // namespace tropimirror::tropical
