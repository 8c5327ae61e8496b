#pragma once

#include <algorithm>

#include "tropimirror/core.hpp"

namespace tropimirror::roots {

/// All complex roots of sum_k c[k] z^k by Aberth-Ehrlich iteration with a
/// deterministic start. Leading/trailing zero coefficients are stripped
/// (roots at the origin are reported as exact zeros).
struct RootResult {
    std::vector<Complex> roots;
    bool converged = true;
};

inline RootResult aberth(std::vector<Complex> c, int max_iter = 120, double tol = 1e-13) {
    RootResult out;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) return out;
    size_t zeros = 0;
    while (zeros < c.size() && std::abs(c[zeros]) == 0.0) ++zeros;
    for (size_t i = 0; i < zeros; ++i) out.roots.push_back(0.0);
    c.erase(c.begin(), c.begin() + zeros);
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return out;
    if (n == 1) {
        out.roots.push_back(-c[0] / c[1]);
        return out;
    }

    // Cauchy-style radius
    double lead = std::abs(c[n]);
    double r = 0.0;
    for (int k = 0; k < n; ++k) r = std::max(r, std::pow(std::abs(c[k]) / lead, 1.0 / (n - k)));
    r = std::max(r, 1e-12) * 1.2;

    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * k / n + 0.4;  // fixed angular offset, no axis alignment
        z[k] = r * Complex(std::cos(th), std::sin(th));
    }

    auto eval = [&](Complex x, Complex& p, Complex& dp) {
        p = c[n];
        dp = 0.0;
        for (int k = n - 1; k >= 0; --k) {
            dp = dp * x + p;
            p = p * x + c[k];
        }
    };

    bool done = false;
    for (int it = 0; it < max_iter && !done; ++it) {
        done = true;
        for (int k = 0; k < n; ++k) {
            Complex p, dp;
            eval(z[k], p, dp);
            if (std::abs(p) == 0.0) continue;
            Complex newton = p / dp;
            Complex sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += 1.0 / (z[k] - z[j]);
            Complex delta = newton / (1.0 - newton * sum);
            z[k] -= delta;
            if (std::abs(delta) > tol * (1.0 + std::abs(z[k]))) done = false;
        }
    }
    out.converged = done;
    for (Complex zz : z) out.roots.push_back(zz);
    std::sort(out.roots.begin(), out.roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

/// Real roots extracted from an Aberth run (|imag| below a scale-aware bound),
/// polished by a few Newton steps on the real line.
inline std::vector<double> real_roots(const std::vector<double>& coeffs, double imag_tol = 1e-8) {
    std::vector<Complex> c(coeffs.begin(), coeffs.end());
    auto rr = aberth(c);
    std::vector<double> out;
    for (Complex z : rr.roots) {
        if (std::abs(z.imag()) > imag_tol * (1.0 + std::abs(z))) continue;
        double x = z.real();
        for (int it = 0; it < 8; ++it) {
            double p = 0, dp = 0;
            for (int k = int(coeffs.size()) - 1; k >= 0; --k) {
                dp = dp * x + p;
                p = p * x + coeffs[k];
            }
            if (dp == 0) break;
            x -= p / dp;
        }
        out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-11 * (1 + std::abs(a)); }),
              out.end());
    return out;
}

/// Bisection on [lo, hi] assuming f(lo) f(hi) < 0; relative tolerance 1e-10.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-10) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hi - lo <= rel_tol * (1.0 + std::abs(mid))) return mid;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace tropimirror::roots
