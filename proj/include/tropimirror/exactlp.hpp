#pragma once

#include <optional>

#include "tropimirror/core.hpp"

namespace tropimirror::lp {

/// One inequality sum_j coeff[j] x_j <= rhs over exact rationals.
struct Row {
    std::vector<Rational> coeff;
    Rational rhs;
    std::vector<Rational> provenance;  // multipliers over the original rows
};

struct Infeasible {
    std::vector<Rational> farkas;  // non-negative combination proving 0 <= negative
};

struct LpResult {
    std::optional<std::vector<Rational>> point;
    std::optional<Infeasible> witness;
    bool feasible() const { return point.has_value(); }
};

/// Fourier-Motzkin feasibility for small systems. Eliminates variables from the
/// last to the first, then back-substitutes midpoints of the remaining ranges.
inline LpResult fm_solve(std::vector<Row> rows, int nvars) {
    const size_t m0 = rows.size();
    for (size_t i = 0; i < m0; ++i) {
        rows[i].provenance.assign(m0, 0);
        rows[i].provenance[i] = 1;
    }
    std::vector<std::vector<Row>> stages;  // rows alive before eliminating var v
    for (int v = nvars - 1; v >= 0; --v) {
        stages.push_back(rows);
        std::vector<Row> next;
        std::vector<const Row*> pos, neg;
        for (const auto& r : rows) {
            if (r.coeff[v] > 0) pos.push_back(&r);
            else if (r.coeff[v] < 0) neg.push_back(&r);
            else next.push_back(r);
        }
        for (const Row* u : pos)
            for (const Row* l : neg) {
                Rational cu = u->coeff[v], cl = -l->coeff[v];
                Row r;
                r.coeff.assign(nvars, 0);
                for (int j = 0; j < nvars; ++j) r.coeff[j] = cl * u->coeff[j] + cu * l->coeff[j];
                r.rhs = cl * u->rhs + cu * l->rhs;
                r.provenance.assign(m0, 0);
                for (size_t j = 0; j < m0; ++j)
                    r.provenance[j] = cl * u->provenance[j] + cu * l->provenance[j];
                next.push_back(std::move(r));
            }
        rows = std::move(next);
    }
    for (const auto& r : rows)
        if (r.rhs < 0) return {std::nullopt, Infeasible{r.provenance}};

    // back-substitution
    std::vector<Rational> x(nvars, 0);
    for (int v = 0; v < nvars; ++v) {
        const auto& alive = stages[nvars - 1 - v];
        std::optional<Rational> lo, hi;
        for (const auto& r : alive) {
            if (r.coeff[v] == 0) continue;
            Rational bound = r.rhs;
            for (int j = 0; j < v; ++j) bound -= r.coeff[j] * x[j];
            for (int j = v + 1; j < nvars; ++j)
                if (r.coeff[j] != 0) throw Error("fm_solve: elimination order violated");
            bound /= r.coeff[v];
            if (r.coeff[v] > 0) {
                if (!hi || bound < *hi) hi = bound;
            } else {
                if (!lo || bound > *lo) lo = bound;
            }
        }
        if (lo && hi) x[v] = (*lo + *hi) / 2;
        else if (lo) x[v] = *lo + 1;
        else if (hi) x[v] = *hi - 1;
        else x[v] = 0;
    }
    return {x, std::nullopt};
}

}  // namespace tropimirror::lp
