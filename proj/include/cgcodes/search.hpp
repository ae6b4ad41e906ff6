#pragma once

// The two-step search driver: enumerate non-isometric candidates, solve
// the initial vector LP for each, keep the best.  Also the odd-dimension
// two-layer construction and the candidate-count estimates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "cgcodes/code.hpp"
#include "cgcodes/errors.hpp"
#include "cgcodes/intmat.hpp"
#include "cgcodes/ivp.hpp"
#include "cgcodes/lattice.hpp"

namespace cgcodes {

struct SearchParams {
    std::int64_t points = 0;   // M >= 2
    std::size_t dimension = 0; // n >= 2
    bool dedupe = true;
    std::size_t threads = 1;
    bool emit_all = false;     // keep every tested candidate with its distance
};

struct TestedCandidate {
    IntMatrix basis;
    double min_distance = 0.0;
};

struct SearchResult {
    CodeRecord best;
    std::vector<TestedCandidate> tested;  // filled only with emit_all
};

namespace detail {

struct Evaluated {
    double d = 0.0;
    InitialVector x0;
};

}  // namespace detail

// Even-dimension search: all diagonal profiles, all candidates (deduped
// across profiles by signature), one LP each.  Ties within 1e-9 of the
// best distance go to the smallest canonical signature, so the result is
// deterministic and independent of the parallel width.
inline SearchResult search_optimum(const SearchParams& params) {
    if (params.dimension % 2 != 0)
        throw InvalidDimension("search_optimum: odd dimension, use search_optimum_odd");
    if (params.points < 2 || params.dimension < 2)
        throw std::invalid_argument("search_optimum: M >= 2 and n >= 2 required");
    const std::size_t k = params.dimension / 2;
    const std::int64_t M = params.points;

    std::size_t raw = 0;
    std::vector<CandidateLattice> candidates;
    std::map<std::string, std::size_t> by_signature;  // dedup across profiles
    for (const auto& prof : enumerate_diagonals(M, k)) {
        EnumerationResult er = enumerate_candidates(prof, params.dedupe);
        raw += er.raw_count;
        for (auto& c : er.candidates) {
            if (params.dedupe) {
                auto it = by_signature.find(c.signature);
                if (it != by_signature.end()) {
                    if (c.basis < candidates[it->second].basis) candidates[it->second] = std::move(c);
                    continue;
                }
                by_signature.emplace(c.signature, candidates.size());
            }
            candidates.push_back(std::move(c));
        }
    }

    std::vector<detail::Evaluated> evals(candidates.size());
    auto eval_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            GroupElementTable tab = group_elements(candidates[i].basis, M);
            auto [x0, d] = optimal_initial_vector(tab, M);
            evals[i] = {d, std::move(x0)};
        }
    };
    if (params.threads > 1 && candidates.size() > 1) {
        std::size_t nt = std::min(params.threads, candidates.size());
        std::vector<std::thread> pool;
        std::size_t chunk = (candidates.size() + nt - 1) / nt;
        for (std::size_t t = 0; t < nt; ++t) {
            std::size_t lo = t * chunk;
            std::size_t hi = std::min(candidates.size(), lo + chunk);
            if (lo < hi) pool.emplace_back(eval_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    } else {
        eval_range(0, candidates.size());
    }

    // sequential reduce in candidate order: max d, ties to smallest signature
    std::size_t best = candidates.size();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (best == candidates.size() || evals[i].d > evals[best].d + 1e-9 ||
            (evals[i].d >= evals[best].d - 1e-9 && candidates[i].signature < candidates[best].signature))
            best = i;
    }
    if (best == candidates.size()) throw InternalError("search_optimum: no candidate survived");

    SearchResult res;
    res.best.order = M;
    res.best.dimension = params.dimension;
    res.best.presentation = isomorphism_class(candidates[best].basis, M);
    res.best.initial_vector = evals[best].x0;
    res.best.min_distance = evals[best].d;
    res.best.raw_count = raw;
    res.best.tested_count = candidates.size();
    res.best.basis = candidates[best].basis;
    if (params.emit_all) {
        res.tested.reserve(candidates.size());
        for (std::size_t i = 0; i < candidates.size(); ++i)
            res.tested.push_back({candidates[i].basis, evals[i].d});
    }
    return res;
}

struct OddDimCode {
    CodeRecord base;           // the C(M/2, 2k) optimum
    double theta = 0.0;        // layer angle, tan(theta) = d0 / 2
    double min_distance = 0.0; // 2 d0 / sqrt(4 + d0^2)
    std::vector<double> initial_vector;  // (cos(theta) x0, sin(theta))
};

// Odd dimension n = 2k+1: the code is a union of two C(M/2, 2k) layers
// at heights +-sin(theta).  In-layer distances scale by cos(theta) and
// the cross-layer minimum is 2 sin(theta), so the optimum equalizes
// cos(theta) d0 = 2 sin(theta).  The closed form is cross-checked by
// bisection on the residual and against the rendered orbit.
inline OddDimCode search_optimum_odd(const SearchParams& params) {
    if (params.dimension % 2 != 1)
        throw InvalidDimension("search_optimum_odd: even dimension, use search_optimum");
    if (params.points % 2 != 0)
        throw OddOrder("search_optimum_odd: odd dimension requires an even order");
    const std::size_t k = params.dimension / 2;

    SearchParams base_params = params;
    base_params.points = params.points / 2;
    base_params.dimension = 2 * k;
    base_params.emit_all = false;
    SearchResult base = search_optimum(base_params);
    const double d0 = base.best.min_distance;

    OddDimCode out;
    out.base = base.best;
    out.theta = std::atan(d0 / 2.0);
    out.min_distance = 2.0 * d0 / std::sqrt(4.0 + d0 * d0);

    // bisection safeguard on f(t) = cos(t) d0 - 2 sin(t)
    double lo = 0.0, hi = std::numbers::pi / 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double f = std::cos(mid) * d0 - 2.0 * std::sin(mid);
        (f > 0.0 ? lo : hi) = mid;
    }
    if (std::abs(0.5 * (lo + hi) - out.theta) > 1e-9)
        throw InternalError("search_optimum_odd: equalization bisection disagrees");

    out.initial_vector.reserve(params.dimension);
    for (double d : base.best.initial_vector.deltas) {
        out.initial_vector.push_back(std::cos(out.theta) * d);
        out.initial_vector.push_back(0.0);
    }
    out.initial_vector.push_back(std::sin(out.theta));

    // verify against the rendered (2k+1)-dimensional orbit when small enough
    if (params.points <= 5000) {
        GroupElementTable tab = group_elements(base.best.basis, base.best.order);
        std::vector<GroupElementSigns> ext;
        ext.reserve(2 * tab.elements.size());
        for (const auto& b : tab.elements) {
            ext.push_back({b, {+1}});
            ext.push_back({b, {-1}});
        }
        std::vector<double> x(params.dimension, 0.0);
        for (std::size_t j = 0; j < k; ++j)
            x[2 * j] = std::cos(out.theta) * base.best.initial_vector.deltas[j];
        x[2 * k] = std::sin(out.theta);
        double bf = brute_force_min_distance(ext, base.best.order, params.dimension, x);
        if (std::abs(bf - out.min_distance) > 1e-9)
            throw InternalError("search_optimum_odd: orbit check disagrees with the closed form");
    }
    return out;
}

struct CountEstimates {
    std::int64_t points = 0;
    std::int64_t binomial = 0;            // C(M/2, n/2)
    std::int64_t adam_estimate = 0;       // floor((M/2)^k / phi(M))
    std::int64_t tested_commutative = 0;  // deduped candidates sent to the LP
    std::int64_t tested_cyclic = 0;       // of those, cyclic quotients
    std::int64_t raw = 0;                 // before dedup
};

inline std::int64_t euler_phi(std::int64_t m) {
    std::int64_t result = m;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

inline CountEstimates count_estimates(std::int64_t M, std::size_t n) {
    if (n % 2 != 0) throw InvalidDimension("count_estimates: even dimension required");
    const std::size_t k = n / 2;
    CountEstimates est;
    est.points = M;

    Int binom = 1;
    for (std::size_t i = 0; i < k; ++i) binom = binom * (M / 2 - static_cast<std::int64_t>(i)) / static_cast<std::int64_t>(i + 1);
    est.binomial = static_cast<std::int64_t>(binom);

    Int adam = 1;
    for (std::size_t i = 0; i < k; ++i) adam *= M / 2;
    est.adam_estimate = static_cast<std::int64_t>(adam / euler_phi(M));

    std::map<std::string, IntMatrix> classes;
    for (const auto& prof : enumerate_diagonals(M, k)) {
        EnumerationResult er = enumerate_candidates(prof, true);
        est.raw += static_cast<std::int64_t>(er.raw_count);
        for (auto& c : er.candidates) {
            auto it = classes.find(c.signature);
            if (it == classes.end())
                classes.emplace(std::move(c.signature), std::move(c.basis));
            else if (c.basis < it->second)
                it->second = std::move(c.basis);
        }
    }
    est.tested_commutative = static_cast<std::int64_t>(classes.size());
    for (const auto& [sig, basis] : classes) {
        GroupPresentation pres = isomorphism_class(basis, M);
        if (pres.invariant_factors.size() <= 1) ++est.tested_cyclic;
    }
    return est;
}

}  // namespace cgcodes
