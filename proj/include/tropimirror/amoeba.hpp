#pragma once

#include <optional>

#include "tropimirror/mirror.hpp"
#include "tropimirror/roots.hpp"

namespace tropimirror::amoeba {

using mirror::MirrorPolynomial;
using mirror::QValue;

// ---------------------------------------------------------------------------
// Fiber solving
// ---------------------------------------------------------------------------

/// Coefficients in y of H(x0, y) with poles cleared: H(x0, y) = y^{n_min} *
/// sum_k coeff[k] y^k.
struct FiberPoly {
    Int n_min = 0;
    std::vector<Complex> coeff;
};

inline FiberPoly fiber_poly_y(const std::vector<std::pair<IVec, double>>& coeffs, Complex x0) {
    Int nmin = coeffs.front().first.n, nmax = nmin;
    for (const auto& [pt, c] : coeffs) {
        nmin = std::min(nmin, pt.n);
        nmax = std::max(nmax, pt.n);
    }
    FiberPoly f;
    f.n_min = nmin;
    f.coeff.assign(size_t(nmax - nmin + 1), 0.0);
    for (const auto& [pt, c] : coeffs) f.coeff[size_t(pt.n - nmin)] += c * mirror::cpow(x0, pt.m);
    return f;
}

enum class Membership { Inside, Outside, Uncertain };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::Inside: return "Inside";
        case Membership::Outside: return "Outside";
        case Membership::Uncertain: return "Uncertain";
    }
    return "?";
}

/// Fiber-sampling membership test: solves the y-slice over sampled arguments
/// of x. Inside when a root sits within tol of the |y| = e^{w.y} circle or
/// when the count of roots above the circle changes between samples (a branch
/// must have crossed); Outside needs a constant count and a 3 tol margin.
inline Membership amoeba_membership(const std::vector<std::pair<IVec, double>>& coeffs,
                                    Vec2d w, int fiber_samples = 64, double tol = 1e-3) {
    if (fiber_samples < 64) throw Error("amoeba_membership: fiber_samples must be >= 64");
    double ex = std::exp(w.x);
    double best = std::numeric_limits<double>::infinity();
    bool any_unconverged = false, counts_stable = true;
    int above0 = -1, total0 = -1;
    for (int s = 0; s < fiber_samples; ++s) {
        double th = 2.0 * M_PI * s / fiber_samples;
        auto f = fiber_poly_y(coeffs, ex * Complex(std::cos(th), std::sin(th)));
        auto rr = roots::aberth(f.coeff);
        any_unconverged |= !rr.converged;
        int above = 0, total = 0;
        for (Complex y : rr.roots) {
            double ay = std::abs(y);
            if (ay < 1e-14) continue;  // cleared pole
            ++total;
            double d = std::log(ay) - w.y;
            above += d > 0;
            best = std::min(best, std::abs(d));
            if (std::abs(d) < tol) return Membership::Inside;
        }
        if (s == 0) {
            above0 = above;
            total0 = total;
        } else if (total != total0) {
            counts_stable = false;  // a root escaped or appeared; inconclusive
        } else if (above != above0) {
            return Membership::Inside;
        }
    }
    if (any_unconverged || !counts_stable) return Membership::Uncertain;
    return best > 3.0 * tol ? Membership::Outside : Membership::Uncertain;
}

inline Membership amoeba_membership(const MirrorPolynomial& H, const QValue& q, Vec2d w,
                                    int fiber_samples = 64, double tol = 1e-3) {
    return amoeba_membership(mirror::coefficient_values(H, q), w, fiber_samples, tol);
}

// ---------------------------------------------------------------------------
// Order map (component degree) via winding numbers
// ---------------------------------------------------------------------------

struct OrderMapResult {
    IVec degree;
    double residue1 = 0.0;  // |winding - nearest integer| per coordinate
    double residue2 = 0.0;
    bool in_newton_polytope = true;
};

namespace detail {

inline double winding(const std::vector<std::pair<IVec, double>>& coeffs, Vec2d w, int axis,
                      int samples) {
    double ex = std::exp(w.x), ey = std::exp(w.y);
    double total = 0.0, prev_arg = 0.0;
    for (int s = 0; s <= samples; ++s) {
        double th = 2.0 * M_PI * s / samples;
        Complex x = axis == 0 ? ex * Complex(std::cos(th), std::sin(th)) : Complex(ex);
        Complex y = axis == 1 ? ey * Complex(std::cos(th), std::sin(th)) : Complex(ey);
        Complex h = 0.0;
        for (const auto& [pt, c] : coeffs) h += c * mirror::cpow(x, pt.m) * mirror::cpow(y, pt.n);
        double a = std::arg(h);
        if (s > 0) {
            double d = a - prev_arg;
            while (d > M_PI) d -= 2.0 * M_PI;
            while (d < -M_PI) d += 2.0 * M_PI;
            total += d;
        }
        prev_arg = a;
    }
    return total / (2.0 * M_PI);
}

}  // namespace detail

/// Degree vector of the amoeba-complement component containing w, by argument
/// accumulation with adaptive refinement. Fails rather than round when the
/// winding sits more than 0.25 from an integer.
inline OrderMapResult component_degree(const std::vector<std::pair<IVec, double>>& coeffs,
                                       Vec2d w) {
    OrderMapResult out;
    double v[2], res[2];
    for (int axis = 0; axis < 2; ++axis) {
        int samples = 1024;
        double wind = detail::winding(coeffs, w, axis, samples);
        for (; samples <= 1 << 16; samples *= 2) {
            double next = detail::winding(coeffs, w, axis, samples * 2);
            if (std::abs(next - wind) < 1e-9) {
                wind = next;
                break;
            }
            wind = next;
        }
        v[axis] = wind;
        res[axis] = std::abs(wind - std::round(wind));
        if (res[axis] >= 0.25)
            throw RegimeError("component_degree: winding " + std::to_string(wind) +
                              " is too far from an integer (point too close to the amoeba)");
    }
    out.degree = {Int(std::llround(v[0])), Int(std::llround(v[1]))};
    out.residue1 = res[0];
    out.residue2 = res[1];
    std::vector<IVec> pts;
    for (const auto& [pt, c] : coeffs) pts.push_back(pt);
    auto hull = lattice::convex_hull(pts);
    out.in_newton_polytope =
        hull.size() >= 3 ? lattice::hull_location(hull, out.degree) >= 0
                         : std::find(pts.begin(), pts.end(), out.degree) != pts.end();
    return out;
}

inline OrderMapResult component_degree(const MirrorPolynomial& H, const QValue& q, Vec2d w) {
    return component_degree(mirror::coefficient_values(H, q), w);
}

// ---------------------------------------------------------------------------
// Ronkin function
// ---------------------------------------------------------------------------

struct RonkinValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Tensor-product trapezoid (periodic, so plain averaging) of
/// log|H(e^{x1+i t1}, e^{x2+i t2})| on a grid x grid torus mesh. Samples with
/// |H| < 1e-13 are re-taken half a step away (the singularity is integrable).
inline RonkinValue ronkin_value(const std::vector<std::pair<IVec, double>>& coeffs, Vec2d x,
                                int grid = 256) {
    if (grid < 64 || (grid & (grid - 1)) != 0)
        throw Error("ronkin_value: grid must be a power of two >= 64");
    std::vector<Complex> base;  // c * e^{<pt, x>}
    std::vector<IVec> pts;
    for (const auto& [pt, c] : coeffs) {
        base.push_back(c * std::exp(double(pt.m) * x.x + double(pt.n) * x.y));
        pts.push_back(pt);
    }
    auto sample = [&](double t1, double t2) {
        Complex h = 0.0;
        for (size_t k = 0; k < pts.size(); ++k)
            h += base[k] * std::polar(1.0, double(pts[k].m) * t1 + double(pts[k].n) * t2);
        double a = std::abs(h);
        if (a < 1e-13) {
            double d = M_PI / grid;
            h = 0.0;
            for (size_t k = 0; k < pts.size(); ++k)
                h += base[k] * std::polar(1.0, double(pts[k].m) * (t1 + d) + double(pts[k].n) * (t2 + d));
            a = std::abs(h);
        }
        return std::log(a);
    };
    double sum_full = 0.0, sum_half = 0.0;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            double v = sample(2.0 * M_PI * i / grid, 2.0 * M_PI * j / grid);
            sum_full += v;
            if (i % 2 == 0 && j % 2 == 0) sum_half += v;
        }
    RonkinValue out;
    out.value = sum_full / (double(grid) * grid);
    double coarse = sum_half / (double(grid / 2) * (grid / 2));
    out.error_estimate = std::abs(out.value - coarse);
    return out;
}

inline RonkinValue ronkin_value(const MirrorPolynomial& H, const QValue& q, Vec2d x,
                                int grid = 256) {
    return ronkin_value(mirror::coefficient_values(H, q), x, grid);
}

// ---------------------------------------------------------------------------
// Dominance certificates (Lemma 3.2 witnesses)
// ---------------------------------------------------------------------------

struct DominanceCertificate {
    bool found = false;
    Vec2d w;            // witness point in log coordinates
    double ratio = 0.0; // sum of the other monomial norms over the dominating one
};

namespace detail {

inline double dominance_ratio(const std::vector<std::pair<IVec, double>>& coeffs, IVec b,
                              Vec2d w) {
    double lead = 0.0, rest = 0.0;
    for (const auto& [pt, c] : coeffs) {
        double v = std::abs(c) * std::exp(double(pt.m) * w.x + double(pt.n) * w.y);
        if (pt == b) lead = v;
        else rest += v;
    }
    return rest / lead;
}

}  // namespace detail

/// Tries the image of (log 1/3, log 1/3) under every flag at b_i, then greedy
/// descent on the log of the dominance ratio.
inline DominanceCertificate dominance_certificate(const MirrorPolynomial& H, const QValue& q,
                                                  IVec b) {
    int bi = H.tri.index_of(b);
    if (bi < 0) throw Error("dominance_certificate: " + to_string(b) + " is not a lattice point of H");
    auto coeffs = mirror::coefficient_values(H, q);
    const Vec2d chart_w{std::log(1.0 / 3.0), std::log(1.0 / 3.0)};

    DominanceCertificate best;
    best.ratio = std::numeric_limits<double>::infinity();
    auto consider = [&](Vec2d w) {
        double r = detail::dominance_ratio(coeffs, b, w);
        if (r < best.ratio) {
            best.ratio = r;
            best.w = w;
        }
    };
    for (const auto& f : lattice::enumerate_flags(H.tri)) {
        if (f.origin != bi) continue;
        auto [Hp, cc] = mirror::change_flag(H, f);
        consider(mirror::inverse_change_log(cc, q, chart_w));
    }
    if (!std::isfinite(best.ratio)) throw Error("dominance_certificate: no flag at " + to_string(b));

    // greedy descent on log(rest/lead); the objective is smooth and convex-ish
    Vec2d w = best.w;
    double step = 0.5;
    double cur = detail::dominance_ratio(coeffs, b, w);
    for (int it = 0; it < 400 && step > 1e-6; ++it) {
        const double h = 1e-4;
        double gx = std::log(detail::dominance_ratio(coeffs, b, {w.x + h, w.y})) -
                    std::log(detail::dominance_ratio(coeffs, b, {w.x - h, w.y}));
        double gy = std::log(detail::dominance_ratio(coeffs, b, {w.x, w.y + h})) -
                    std::log(detail::dominance_ratio(coeffs, b, {w.x, w.y - h}));
        double gn = std::hypot(gx, gy);
        if (gn < 1e-14) break;
        Vec2d cand{w.x - step * gx / gn, w.y - step * gy / gn};
        double cr = detail::dominance_ratio(coeffs, b, cand);
        if (cr < cur) {
            w = cand;
            cur = cr;
        } else {
            step *= 0.5;
        }
    }
    consider(w);
    best.found = best.ratio < 1.0;
    return best;
}

// ---------------------------------------------------------------------------
// Theorem 3.3 surjectivity report
// ---------------------------------------------------------------------------

struct SurjectivityEntry {
    IVec point;
    bool pass = false;
    DominanceCertificate cert;
    std::optional<OrderMapResult> degree;
    std::string note;
};

struct SurjectivityReport {
    bool pass = true;
    std::vector<SurjectivityEntry> entries;
};

inline SurjectivityReport order_map_surjectivity(const MirrorPolynomial& H, const QValue& q) {
    SurjectivityReport rep;
    auto coeffs = mirror::coefficient_values(H, q);
    for (const auto& [pt, mono] : H.terms) {
        SurjectivityEntry e;
        e.point = pt;
        e.cert = dominance_certificate(H, q, pt);
        if (!e.cert.found) {
            e.note = "no dominance certificate";
        } else {
            try {
                e.degree = component_degree(coeffs, e.cert.w);
                if (e.degree->degree == pt) e.pass = true;
                else e.note = "winding degree " + to_string(e.degree->degree) + " != " + to_string(pt);
            } catch (const Error& err) {
                e.note = err.what();
            }
        }
        rep.pass &= e.pass;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Raster
// ---------------------------------------------------------------------------

struct AmoebaRaster {
    double x0, x1, y0, y1;
    int res = 0;
    std::vector<Membership> cells;   // row-major, res x res, cell centers
    std::vector<int> component;      // outside-component id, -1 elsewhere
    std::vector<IVec> degrees;       // per component
    std::vector<bool> degree_valid;  // winding succeeded for the component

    Membership at(int i, int j) const { return cells[size_t(j) * res + i]; }
    Vec2d center(int i, int j) const {
        return {x0 + (i + 0.5) * (x1 - x0) / res, y0 + (j + 0.5) * (y1 - y0) / res};
    }
};

inline AmoebaRaster raster_amoeba(const MirrorPolynomial& H, const QValue& q, double x0,
                                  double x1, double y0, double y1, int res,
                                  int fiber_samples = 64, double tol = 1e-2) {
    if (res < 1 || res > 4096) throw Error("raster_amoeba: res out of range");
    AmoebaRaster r;
    r.x0 = x0;
    r.x1 = x1;
    r.y0 = y0;
    r.y1 = y1;
    r.res = res;
    r.cells.assign(size_t(res) * res, Membership::Uncertain);
    auto coeffs = mirror::coefficient_values(H, q);
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i)
            r.cells[size_t(j) * res + i] = amoeba_membership(coeffs, r.center(i, j), fiber_samples, tol);

    // erosion depth: multi-source BFS from every non-Outside cell
    std::vector<int> depth(r.cells.size(), -1);
    std::vector<std::pair<int, int>> frontier, next;
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i)
            if (r.at(i, j) != Membership::Outside) {
                depth[size_t(j) * res + i] = 0;
                frontier.push_back({i, j});
            }
    const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
    for (int level = 1; !frontier.empty(); ++level) {
        next.clear();
        for (auto [a, b] : frontier)
            for (int d = 0; d < 4; ++d) {
                int na = a + dx[d], nb = b + dy[d];
                if (na < 0 || nb < 0 || na >= res || nb >= res) continue;
                size_t idx = size_t(nb) * res + na;
                if (depth[idx] < 0) {
                    depth[idx] = level;
                    next.push_back({na, nb});
                }
            }
        frontier.swap(next);
    }

    // connected Outside components, then one winding evaluation per component at
    // its deepest cell (constancy of the degree on components)
    r.component.assign(r.cells.size(), -1);
    int ncomp = 0;
    std::vector<std::pair<int, int>> stack;
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i) {
            if (r.at(i, j) != Membership::Outside || r.component[size_t(j) * res + i] >= 0) continue;
            int id = ncomp++;
            stack.push_back({i, j});
            r.component[size_t(j) * res + i] = id;
            std::pair<int, int> deep{i, j};
            int best_depth = -1;
            while (!stack.empty()) {
                auto [a, b] = stack.back();
                stack.pop_back();
                size_t here = size_t(b) * res + a;
                if (depth[here] > best_depth) {
                    best_depth = depth[here];
                    deep = {a, b};
                }
                for (int d = 0; d < 4; ++d) {
                    int na = a + dx[d], nb = b + dy[d];
                    if (na < 0 || nb < 0 || na >= res || nb >= res) continue;
                    size_t idx = size_t(nb) * res + na;
                    if (r.cells[idx] == Membership::Outside && r.component[idx] < 0) {
                        r.component[idx] = id;
                        stack.push_back({na, nb});
                    }
                }
            }
            try {
                auto deg = component_degree(coeffs, r.center(deep.first, deep.second));
                r.degrees.push_back(deg.degree);
                r.degree_valid.push_back(true);
            } catch (const Error&) {
                r.degrees.push_back({0, 0});
                r.degree_valid.push_back(false);
            }
        }
    return r;
}

}  // namespace tropimirror::amoeba
