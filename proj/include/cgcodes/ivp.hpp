#pragma once

// The initial vector problem as a linear program:
//   max z   s.t.  z <= 2 - 2 <c_i, y>  (one row per non-identity element),
//                 sum y = 1,  y >= 0,
// solved by a dense two-phase simplex with Bland's rule.  Problems are
// tiny (m <= k+1 variables, at most M/2 rows after cosine folding), so a
// plain tableau beats anything clever.  Pivot tolerance 1e-10,
// feasibility tolerance 1e-9, both fixed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "cgcodes/code.hpp"
#include "cgcodes/errors.hpp"
#include "cgcodes/lattice.hpp"

namespace cgcodes {

struct SimplexProblem {
    std::size_t var_count = 0;              // m = n - k weight variables
    std::vector<std::vector<double>> rows;  // constraint coefficients c_i in [-1,1]^m
};

enum class LpStatus { optimal, degenerate_flagged };

struct LpSolution {
    double z = 0.0;
    std::vector<double> y;
    LpStatus status = LpStatus::optimal;
};

namespace detail {

inline double round12(double v) {
    return std::round(v * 1e12) / 1e12;
}

}  // namespace detail

// One constraint per non-identity element; rows deduplicated after
// rounding the coefficients to 12 decimals, which folds b with M-b since
// cosine is even.  Optional mu rows (one sign vector per element, aligned
// with the table) extend the constraints for groups with reflections.
inline SimplexProblem build_lp(const GroupElementTable& elements, std::int64_t M,
                               const std::optional<std::vector<std::vector<int>>>& signs = std::nullopt) {
    if (signs && signs->size() != elements.elements.size())
        throw std::invalid_argument("build_lp: signs misaligned with the element table");
    SimplexProblem p;
    std::size_t refl = signs ? (signs->empty() ? 0 : (*signs)[0].size()) : 0;
    p.var_count = elements.block_count + refl;

    std::map<std::vector<double>, std::vector<double>> dedup;  // rounded key -> raw row
    for (std::size_t idx = 0; idx < elements.elements.size(); ++idx) {
        GroupElementSigns e{elements.elements[idx], signs ? (*signs)[idx] : std::vector<int>{}};
        if (e.is_identity()) continue;
        std::vector<double> c = constraint_coefficients(e, M);
        std::vector<double> key(c.size());
        std::transform(c.begin(), c.end(), key.begin(), detail::round12);
        dedup.emplace(std::move(key), std::move(c));
    }
    if (dedup.empty()) throw EmptyGroup("build_lp: no non-identity element");
    for (auto& [key, row] : dedup) p.rows.push_back(std::move(row));
    return p;
}

// Dense two-phase simplex, Bland's entering rule, lowest-basis-index tie
// break on the ratio test.  Deterministic for a fixed input.
inline LpSolution solve(const SimplexProblem& problem) {
    constexpr double piv_tol = 1e-10;
    constexpr double feas_tol = 1e-9;

    const std::size_t m = problem.var_count;
    const std::size_t R = problem.rows.size();
    if (m < 1 || R < 1) throw std::invalid_argument("solve: empty problem");

    // columns: y_0..y_{m-1}, z, s_0..s_{R-1}, artificial a; then RHS
    const std::size_t zc = m;
    const std::size_t slack0 = m + 1;
    const std::size_t ac = slack0 + R;
    const std::size_t ncols = ac + 1;
    const std::size_t nrows = R + 1;  // R inequality rows + the equality row

    std::vector<std::vector<double>> tab(nrows, std::vector<double>(ncols + 1, 0.0));
    std::vector<std::size_t> basis(nrows);
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < m; ++j) tab[i][j] = 2.0 * problem.rows[i][j];
        tab[i][zc] = 1.0;
        tab[i][slack0 + i] = 1.0;
        tab[i][ncols] = 2.0;
        basis[i] = slack0 + i;
    }
    for (std::size_t j = 0; j < m; ++j) tab[R][j] = 1.0;
    tab[R][ac] = 1.0;
    tab[R][ncols] = 1.0;
    basis[R] = ac;

    const std::size_t max_iter = 50 * (m + R);
    std::size_t iter = 0;

    auto pivot = [&](std::size_t pr, std::size_t pc) {
        double pv = tab[pr][pc];
        for (double& v : tab[pr]) v /= pv;
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == pr) continue;
            double f = tab[i][pc];
            if (std::abs(f) < 1e-15) continue;
            for (std::size_t j = 0; j <= ncols; ++j) tab[i][j] -= f * tab[pr][j];
        }
        basis[pr] = pc;
    };

    auto run_phase = [&](const std::vector<double>& cost, std::size_t col_limit) {
        for (;;) {
            if (++iter > max_iter) throw NumericalFailure("simplex: iteration cap exceeded");
            // reduced costs d_j = c_B . A_j - c_j (maximization)
            std::size_t enter = col_limit;
            for (std::size_t j = 0; j < col_limit; ++j) {
                double d = -cost[j];
                for (std::size_t i = 0; i < nrows; ++i) d += cost[basis[i]] * tab[i][j];
                if (d < -piv_tol) { enter = j; break; }  // Bland: lowest index
            }
            if (enter == col_limit) return;
            std::size_t leave = nrows;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < nrows; ++i) {
                if (tab[i][enter] > piv_tol) {
                    double ratio = tab[i][ncols] / tab[i][enter];
                    if (leave == nrows || ratio < best_ratio - 1e-15 ||
                        (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
                        leave = i;
                        best_ratio = ratio;
                    }
                }
            }
            if (leave == nrows) throw NumericalFailure("simplex: unbounded direction");
            pivot(leave, enter);
        }
    };

    // phase one: drive the artificial variable of the equality row to zero
    std::vector<double> cost1(ncols, 0.0);
    cost1[ac] = -1.0;
    run_phase(cost1, ac);  // artificial never re-enters
    double art = 0.0;
    for (std::size_t i = 0; i < nrows; ++i)
        if (basis[i] == ac) art = tab[i][ncols];
    if (art > feas_tol) throw NumericalFailure("simplex: phase one failed");
    for (std::size_t i = 0; i < nrows; ++i)
        if (basis[i] == ac) {
            // degenerate: pivot the artificial out on any usable column
            for (std::size_t j = 0; j < ac; ++j)
                if (std::abs(tab[i][j]) > piv_tol) { pivot(i, j); break; }
        }

    // phase two: maximize z
    std::vector<double> cost2(ncols, 0.0);
    cost2[zc] = 1.0;
    run_phase(cost2, ac);

    LpSolution sol;
    sol.y.assign(m, 0.0);
    for (std::size_t i = 0; i < nrows; ++i) {
        if (basis[i] < m) sol.y[basis[i]] = tab[i][ncols];
        if (basis[i] == zc) sol.z = tab[i][ncols];
    }
    double ysum = 0.0;
    for (double v : sol.y) {
        if (v < -1e-12) throw NumericalFailure("simplex: negative weight");
        ysum += v;
    }
    if (std::abs(ysum - 1.0) > feas_tol) throw NumericalFailure("simplex: weights do not sum to 1");
    for (double v : sol.y)
        if (v < feas_tol) { sol.status = LpStatus::degenerate_flagged; break; }
    return sol;
}

// delta_j = sqrt(y_j), d = sqrt(z); the result is checked against the
// exact distance formula at the returned vector.
inline std::pair<InitialVector, double> optimal_initial_vector(const GroupElementTable& elements,
                                                               std::int64_t M) {
    SimplexProblem p = build_lp(elements, M);
    LpSolution sol = solve(p);
    InitialVector x0;
    x0.deltas.reserve(sol.y.size());
    for (double v : sol.y) x0.deltas.push_back(std::sqrt(std::max(v, 0.0)));
    double d = std::sqrt(std::max(sol.z, 0.0));
    double check = min_distance(elements, M, x0);
    if (std::abs(check - d) > 1e-9)
        throw NumericalFailure("optimal_initial_vector: LP value disagrees with the distance formula");
    return {std::move(x0), d};
}

}  // namespace cgcodes
