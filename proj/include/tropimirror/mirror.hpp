#pragma once

#include <map>
#include <optional>

#include "tropimirror/exactlp.hpp"
#include "tropimirror/lattice.hpp"

namespace tropimirror::mirror {

using lattice::Flag;
using lattice::Triangulation;

// ---------------------------------------------------------------------------
// Signed monomials in the parameters q_1 .. q_p
// ---------------------------------------------------------------------------

/// sign * prod_j q_j^exps[j]. Exponents are exact rationals; coefficient
/// monomials of a mirror polynomial keep them non-negative, intermediate
/// ratios may not.
struct QMonomial {
    int sign = +1;
    std::vector<Rational> exps;

    bool is_constant() const {
        for (const auto& e : exps)
            if (e != 0) return false;
        return true;
    }
    bool nonnegative() const {
        for (const auto& e : exps)
            if (e < 0) return false;
        return true;
    }
    static QMonomial one(int p) { return {+1, std::vector<Rational>(p, 0)}; }

    QMonomial operator*(const QMonomial& o) const {
        QMonomial r{sign * o.sign, exps};
        for (size_t j = 0; j < exps.size(); ++j) r.exps[j] += o.exps[j];
        return r;
    }
    QMonomial operator/(const QMonomial& o) const {
        QMonomial r{sign * o.sign, exps};
        for (size_t j = 0; j < exps.size(); ++j) r.exps[j] -= o.exps[j];
        return r;
    }
    QMonomial pow(Int k) const {
        QMonomial r{(k % 2 == 0) ? +1 : sign, exps};
        for (auto& e : r.exps) e *= k;
        return r;
    }
    bool operator==(const QMonomial&) const = default;
};

/// Positive numeric specialization of q.
struct QValue {
    std::vector<double> values;

    QValue() = default;
    explicit QValue(std::vector<double> v) : values(std::move(v)) {
        for (double q : values)
            if (!(q > 0)) throw Error("QValue: parameters must be positive");
    }
    static QValue uniform(int p, double q) { return QValue(std::vector<double>(p, q)); }
    size_t size() const { return values.size(); }
};

inline double value(const QMonomial& mono, const QValue& q) {
    if (mono.exps.size() != q.size()) throw Error("QMonomial/QValue parameter count mismatch");
    double v = mono.sign;
    for (size_t j = 0; j < q.size(); ++j)
        if (mono.exps[j] != 0) v *= std::pow(q.values[j], to_double(mono.exps[j]));
    return v;
}

/// Sign rule of the coefficient convention: -1 iff both coordinates odd.
inline int parity_sign(IVec p) {
    auto odd = [](Int k) { return (k % 2 + 2) % 2 == 1; };
    return (odd(p.m) && odd(p.n)) ? -1 : +1;
}

// ---------------------------------------------------------------------------
// Heights: regular-subdivision certificate for the auto coefficient mode
// ---------------------------------------------------------------------------

/// True iff h (one entry per point, h_1..h_3 = 0) lifts the triangulation to a
/// strictly convex lower hull: on every triangle the affine extension of h lies
/// strictly below h at every point outside the triangle.
inline bool check_height_certificate(const Triangulation& t, const std::vector<Rational>& h) {
    if (h.size() != t.points.size()) return false;
    if (h[0] != 0 || h[1] != 0 || h[2] != 0) return false;
    for (size_t i = 3; i < h.size(); ++i)
        if (h[i] <= 0) return false;
    for (const auto& tr : t.triangles) {
        IVec u = t.points[tr[0]], v = t.points[tr[1]], w = t.points[tr[2]];
        Int d = det(u - w, v - w);
        for (size_t j = 0; j < t.points.size(); ++j) {
            if (int(j) == tr[0] || int(j) == tr[1] || int(j) == tr[2]) continue;
            IVec b = t.points[j];
            Rational alpha(det(b - w, v - w), d);
            Rational beta(det(u - w, b - w), d);
            Rational lift = alpha * h[tr[0]] + beta * h[tr[1]] + (1 - alpha - beta) * h[tr[2]];
            if (!(lift < h[j])) return false;
        }
    }
    return true;
}

/// Heights certifying t as a regular subdivision, h_1=h_2=h_3=0, h_i >= 1,
/// scaled to integers. Throws with a Farkas-style witness when no such
/// certificate exists (non-regular data or base triangle absent).
inline std::vector<Rational> assign_heights(const Triangulation& t) {
    const int n = static_cast<int>(t.points.size());
    const int p = n - 3;
    std::vector<Rational> h(n, 0);
    if (p == 0) {
        if (!check_height_certificate(t, h)) throw Error("assign_heights: degenerate input");
        return h;
    }
    std::vector<lp::Row> rows;
    std::vector<std::string> names;
    for (size_t k = 0; k < t.triangles.size(); ++k) {
        const auto& tr = t.triangles[k];
        IVec u = t.points[tr[0]], v = t.points[tr[1]], w = t.points[tr[2]];
        Int d = det(u - w, v - w);
        for (int j = 0; j < n; ++j) {
            if (j == tr[0] || j == tr[1] || j == tr[2]) continue;
            IVec b = t.points[j];
            Rational alpha(det(b - w, v - w), d);
            Rational beta(det(u - w, b - w), d);
            Rational gamma = 1 - alpha - beta;
            // alpha h_u + beta h_v + gamma h_w - h_j <= -1
            lp::Row r;
            r.coeff.assign(p, 0);
            auto bump = [&](int idx, const Rational& c) {
                if (idx >= 3) r.coeff[idx - 3] += c;
            };
            bump(tr[0], alpha);
            bump(tr[1], beta);
            bump(tr[2], gamma);
            bump(j, -1);
            r.rhs = -1;
            rows.push_back(std::move(r));
            names.push_back("below(tri " + std::to_string(k + 1) + ", b_" + std::to_string(j + 1) + ")");
        }
    }
    for (int j = 3; j < n; ++j) {  // h_j >= 1
        lp::Row r;
        r.coeff.assign(p, 0);
        r.coeff[j - 3] = -1;
        r.rhs = -1;
        rows.push_back(std::move(r));
        names.push_back("positive(b_" + std::to_string(j + 1) + ")");
    }
    auto res = lp::fm_solve(rows, p);
    if (!res.feasible()) {
        std::string msg = "assign_heights: no height certificate (triangulation is not regular "
                          "with the base-triangle gauge); Farkas combination:";
        for (size_t i = 0; i < res.witness->farkas.size(); ++i)
            if (res.witness->farkas[i] != 0)
                msg += " " + res.witness->farkas[i].str() + "*" + names[i];
        throw Error(msg);
    }
    // scale to a primitive positive integer vector
    BigInt lcm = 1;
    for (const auto& x : *res.point)
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(Rational(x)));
    BigInt gcd = 0;
    for (const auto& x : *res.point)
        gcd = boost::multiprecision::gcd(gcd, boost::multiprecision::numerator(Rational(x) * lcm));
    if (gcd == 0) gcd = 1;
    for (int j = 3; j < n; ++j) h[j] = (*res.point)[j - 3] * Rational(lcm, gcd);
    if (!check_height_certificate(t, h))
        throw Error("assign_heights: internal error, certificate failed self-check");
    return h;
}

// ---------------------------------------------------------------------------
// Mirror polynomial
// ---------------------------------------------------------------------------

/// H(x, y, q) = 1 + x + y + sum a_i(q) x^{m_i} y^{n_i} with signed monomial
/// coefficients. Terms are kept in lexicographic (m, n) order.
struct MirrorPolynomial {
    Triangulation tri;
    int p = 0;
    std::map<LatticePoint, QMonomial> terms;
    std::vector<Rational> heights;  // auto mode certificate; empty in explicit mode

    const QMonomial& coeff(LatticePoint b) const {
        auto it = terms.find(b);
        if (it == terms.end()) throw Error("no term at " + to_string(b));
        return it->second;
    }
    bool sign_rule_conformant() const {
        for (const auto& [pt, mono] : terms)
            if (mono.sign != parity_sign(pt)) return false;
        return true;
    }
};

struct BuildOptions {
    enum class Mode { AutoHeights, Explicit } mode = Mode::AutoHeights;
    std::vector<std::vector<Int>> exponents;  // explicit mode: p x p, rows for b_4..b_{p+3}
    std::vector<int> sign_override;           // optional, one entry per extra point (i >= 4)
};

inline MirrorPolynomial build_mirror_polynomial(const Triangulation& t, const BuildOptions& opt) {
    auto rep = lattice::validate_triangulation(t);
    if (!rep.valid()) throw InputError("build_mirror_polynomial: invalid triangulation:\n" + rep.summary());
    const int n = static_cast<int>(t.points.size());
    MirrorPolynomial H;
    H.tri = t;
    if (!opt.sign_override.empty() && opt.sign_override.size() != size_t(n - 3))
        throw InputError("sign override must list one sign per point b_4..b_{p+3}");

    if (opt.mode == BuildOptions::Mode::AutoHeights) {
        H.p = (n == 3) ? 0 : 1;
        H.heights = assign_heights(t);
        for (int i = 0; i < n; ++i) {
            QMonomial mono = QMonomial::one(H.p);
            if (i >= 3) mono.exps[0] = H.heights[i];
            mono.sign = opt.sign_override.empty() ? parity_sign(t.points[i])
                                                  : (i >= 3 ? opt.sign_override[i - 3] : +1);
            H.terms[t.points[i]] = mono;
        }
    } else {
        H.p = n - 3;
        if (opt.exponents.size() != size_t(H.p))
            throw InputError("explicit exponent matrix must have p rows");
        for (const auto& row : opt.exponents) {
            if (row.size() != size_t(H.p)) throw InputError("explicit exponent matrix must be p x p");
            for (Int e : row)
                if (e < 0) throw InputError("explicit exponent matrix must be non-negative");
        }
        for (int i = 0; i < n; ++i) {
            QMonomial mono = QMonomial::one(H.p);
            if (i >= 3) {
                bool all_zero = true;
                for (int j = 0; j < H.p; ++j) {
                    mono.exps[j] = opt.exponents[i - 3][j];
                    all_zero &= opt.exponents[i - 3][j] == 0;
                }
                if (all_zero)
                    throw InputError("a_" + std::to_string(i + 1) +
                                     " would be constant: zero exponent row");
            }
            mono.sign = opt.sign_override.empty() ? parity_sign(t.points[i])
                                                  : (i >= 3 ? opt.sign_override[i - 3] : +1);
            H.terms[t.points[i]] = mono;
        }
    }
    for (IVec base : {IVec{1, 0}, IVec{0, 1}, IVec{0, 0}})
        if (!(H.terms.at(base).sign == +1 && H.terms.at(base).is_constant()))
            throw Error("base terms must be +1 with zero exponents");
    return H;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

inline Complex cpow(Complex z, Int k) {
    if (k < 0) return 1.0 / cpow(z, -k);
    Complex r = 1.0, b = z;
    for (Int e = k; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

inline Complex evaluate(const MirrorPolynomial& H, const QValue& q, Complex x, Complex y) {
    if (x == Complex(0.0) || y == Complex(0.0))
        throw Error("evaluate: mirror polynomials live on the torus, coordinates must be nonzero");
    Complex s = 0.0;
    for (const auto& [pt, mono] : H.terms) s += value(mono, q) * cpow(x, pt.m) * cpow(y, pt.n);
    return s;
}

/// Signed coefficient values at a fixed q, lex order by lattice point.
inline std::vector<std::pair<IVec, double>> coefficient_values(const MirrorPolynomial& H,
                                                               const QValue& q) {
    std::vector<std::pair<IVec, double>> out;
    out.reserve(H.terms.size());
    for (const auto& [pt, mono] : H.terms) out.push_back({pt, value(mono, q)});
    return out;
}

/// H at (sx e^u, sy e^v) with sx, sy in {-1, +1}; no complex arithmetic.
inline double evaluate_real(const std::vector<std::pair<IVec, double>>& coeffs, int sx, int sy,
                            double u, double v) {
    double s = 0.0;
    for (const auto& [pt, c] : coeffs) {
        double sgn = ((pt.m % 2) && sx < 0 ? -1.0 : 1.0) * ((pt.n % 2) && sy < 0 ? -1.0 : 1.0);
        s += c * sgn * std::exp(double(pt.m) * u + double(pt.n) * v);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Flag coordinate changes (Proposition 2.5.2)
// ---------------------------------------------------------------------------

struct CoordinateChange {
    Int a = 1, b = 0, c = 0, d = 1;  // X' = X^a Y^b mu1(q), Y' = X^c Y^d mu2(q)
    QMonomial mu1, mu2;              // a_{i1}/a_{i3}, a_{i2}/a_{i3}
    QMonomial prefactor;             // a_{i3}
    IVec shift{0, 0};                // (m_{i3}, n_{i3})
    std::vector<int> perm;           // new point index -> old point index
};

/// Rewrites H in the coordinates of the flag: H = prefactor * X^shift Y^shift * H'.
/// H' is again a mirror polynomial (base terms +1) over the transformed
/// triangulation, with the point list permuted so the convention b_1, b_2, b_3
/// holds.
inline std::pair<MirrorPolynomial, CoordinateChange> change_flag(const MirrorPolynomial& H,
                                                                 const Flag& f) {
    const Triangulation& t = H.tri;
    const int n = static_cast<int>(t.points.size());
    const QMonomial a1 = H.coeff(t.points[f.first]);
    const QMonomial a2 = H.coeff(t.points[f.second]);
    const QMonomial a3 = H.coeff(t.points[f.origin]);

    CoordinateChange cc;
    cc.a = f.e1.m;
    cc.b = f.e1.n;
    cc.c = f.e2.m;
    cc.d = f.e2.n;
    cc.mu1 = a1 / a3;
    cc.mu2 = a2 / a3;
    cc.prefactor = a3;
    cc.shift = t.points[f.origin];

    cc.perm = {f.first, f.second, f.origin};
    for (int i = 0; i < n; ++i)
        if (i != f.first && i != f.second && i != f.origin) cc.perm.push_back(i);

    MirrorPolynomial out;
    out.p = H.p;
    out.tri.points.resize(n);
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[cc.perm[i]] = i;
    for (int i = 0; i < n; ++i)
        out.tri.points[inv[i]] = lattice::flag_coordinates(f, t, t.points[i]);
    for (const auto& tr : t.triangles)
        out.tri.triangles.push_back({inv[tr[0]], inv[tr[1]], inv[tr[2]]});

    for (int i = 0; i < n; ++i) {
        IVec fc = out.tri.points[inv[i]];
        QMonomial coeff = H.coeff(t.points[i]) * a3.pow(fc.m + fc.n - 1) / (a1.pow(fc.m) * a2.pow(fc.n));
        if (!coeff.nonnegative())
            throw Error("change_flag: coefficient at " + to_string(fc) +
                        " acquires a negative q-exponent; coefficient data is not admissible");
        out.terms[fc] = coeff;
    }
    return {std::move(out), std::move(cc)};
}

/// log-coordinate image of w under the inverse change: solves A w + log|mu| = w'.
inline Vec2d inverse_change_log(const CoordinateChange& cc, const QValue& q, Vec2d wprime) {
    double l1 = std::log(std::abs(value(cc.mu1, q)));
    double l2 = std::log(std::abs(value(cc.mu2, q)));
    double r1 = wprime.x - l1, r2 = wprime.y - l2;
    double deta = double(cc.a * cc.d - cc.b * cc.c);  // = +1 for flags
    return {(cc.d * r1 - cc.c * r2) / deta, (-cc.b * r1 + cc.a * r2) / deta};
}

/// Signed point (x, y) with x' = x^a y^b mu1, y' = x^c y^d mu2 for real x', y' != 0.
inline std::pair<double, double> inverse_change_real(const CoordinateChange& cc, const QValue& q,
                                                     double xp, double yp) {
    if (xp == 0 || yp == 0) throw Error("inverse_change_real: point must be in the torus");
    Vec2d w = inverse_change_log(cc, q, {std::log(std::abs(xp)), std::log(std::abs(yp))});
    // sign bits: solve over F_2 with the unimodular exponent matrix
    int s1 = xp < 0, s2 = yp < 0;
    int m1 = value(cc.mu1, q) < 0, m2 = value(cc.mu2, q) < 0;
    int t1 = s1 ^ m1, t2 = s2 ^ m2;  // sign(x)^a sign(y)^b = (-1)^t1 etc.
    auto mod2 = [](Int k) { return int((k % 2 + 2) % 2); };
    int A = mod2(cc.a), B = mod2(cc.b), C = mod2(cc.c), D = mod2(cc.d);
    int sx, sy;
    int deta = (A * D + B * C) % 2;  // determinant mod 2
    if (deta == 1) {
        sx = (D * t1 + B * t2) % 2;
        sy = (C * t1 + A * t2) % 2;
    } else {
        // singular mod 2: pick any consistent assignment by search
        sx = sy = 0;
        bool ok = false;
        for (int u = 0; u < 2 && !ok; ++u)
            for (int v = 0; v < 2 && !ok; ++v)
                if (((A * u + B * v) % 2 == t1) && ((C * u + D * v) % 2 == t2)) {
                    sx = u;
                    sy = v;
                    ok = true;
                }
        if (!ok) throw Error("inverse_change_real: inconsistent sign system");
    }
    double x = (sx ? -1 : 1) * std::exp(w.x);
    double y = (sy ? -1 : 1) * std::exp(w.y);
    return {x, y};
}

// ---------------------------------------------------------------------------
// Monomial-ratio rules (Propositions 2.5.3 / 2.5.4)
// ---------------------------------------------------------------------------

/// a_{i1} a_{i3} / a_{i2}^2 for a collinear triple 2 b_{i2} = b_{i1} + b_{i3}
/// with b_{i1} b_{i2} an edge of the triangulation.
inline QMonomial ratio_monomial_collinear(const MirrorPolynomial& H, int i1, int i2, int i3) {
    const auto& pts = H.tri.points;
    if (2 * pts[i2] - pts[i1] - pts[i3] != IVec{0, 0})
        throw Error("ratio_monomial_collinear: triple is not collinear with b_" +
                    std::to_string(i2 + 1) + " the midpoint");
    if (!H.tri.has_edge(i1, i2))
        throw Error("ratio_monomial_collinear: b_" + std::to_string(i1 + 1) + " b_" +
                    std::to_string(i2 + 1) + " is not a 1-cell of the triangulation");
    QMonomial r = H.coeff(pts[i1]) * H.coeff(pts[i3]) / H.coeff(pts[i2]).pow(2);
    if (r.is_constant() || !r.nonnegative())
        throw Error("ratio_monomial_collinear: ratio " + std::string(r.is_constant() ? "is constant" : "has negative exponents") +
                    "; coefficient assignment violates the monomial rule");
    return r;
}

/// a_{i4} a_{i3}^{m'+n'-1} / (a_{i1}^{m'} a_{i2}^{n'}) for i4 outside the flag triangle.
inline QMonomial ratio_monomial_flag(const MirrorPolynomial& H, const Flag& f, int i4) {
    if (i4 == f.origin || i4 == f.first || i4 == f.second)
        throw Error("ratio_monomial_flag: b_i4 must lie outside the flag triangle");
    const auto& pts = H.tri.points;
    IVec c = lattice::flag_coordinates(f, H.tri, pts[i4]);
    QMonomial r = H.coeff(pts[i4]) * H.coeff(pts[f.origin]).pow(c.m + c.n - 1) /
                  (H.coeff(pts[f.first]).pow(c.m) * H.coeff(pts[f.second]).pow(c.n));
    if (r.is_constant() || !r.nonnegative())
        throw Error("ratio_monomial_flag: ratio " + std::string(r.is_constant() ? "is constant" : "has negative exponents") +
                    "; coefficient assignment violates the monomial rule");
    return r;
}

/// All ratio monomials the large-radius certificates look at: collinear triples
/// along triangulation edges and every (flag, outside point) pair.
inline std::vector<QMonomial> all_ratio_monomials(const MirrorPolynomial& H) {
    std::vector<QMonomial> out;
    const auto& pts = H.tri.points;
    const int n = static_cast<int>(pts.size());
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
            if (i1 == i2 || !H.tri.has_edge(i1, i2)) continue;
            IVec third = 2 * pts[i2] - pts[i1];
            int i3 = H.tri.index_of(third);
            if (i3 >= 0 && i3 != i1) out.push_back(ratio_monomial_collinear(H, i1, i2, i3));
        }
    for (const auto& f : lattice::enumerate_flags(H.tri))
        for (int i4 = 0; i4 < n; ++i4)
            if (i4 != f.origin && i4 != f.first && i4 != f.second)
                out.push_back(ratio_monomial_flag(H, f, i4));
    return out;
}

}  // namespace tropimirror::mirror
