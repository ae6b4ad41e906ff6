#pragma once

// Concrete code objects.  Distance evaluation always goes through the
// exact cosine expansion of ||g x - x||^2 computed per element from the
// integer exponents; the floating orbit is rendered only by the oracle
// and export paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "cgcodes/errors.hpp"
#include "cgcodes/intmat.hpp"
#include "cgcodes/lattice.hpp"

namespace cgcodes {

struct InitialVector {
    std::vector<double> deltas;      // rotation-plane radii, ambient (d1,0,...,dk,0)
    std::vector<double> reflection;  // values on the +-1 coordinates, empty when n = 2k

    std::size_t ambient_dimension() const { return 2 * deltas.size() + reflection.size(); }

    std::vector<double> ambient() const {
        std::vector<double> x;
        x.reserve(ambient_dimension());
        for (double d : deltas) {
            x.push_back(d);
            x.push_back(0.0);
        }
        for (double r : reflection) x.push_back(r);
        return x;
    }

    double norm_sq() const {
        double s = 0.0;
        for (double d : deltas) s += d * d;
        for (double r : reflection) s += r * r;
        return s;
    }
};

struct GroupElementSigns {
    std::vector<std::int64_t> b;  // rotation exponents in [0, M)
    std::vector<int> signs;       // +-1 per reflection coordinate, may be empty

    bool is_identity() const {
        for (auto v : b)
            if (v != 0) return false;
        for (auto s : signs)
            if (s != 1) return false;
        return true;
    }
};

struct CodeRecord {
    std::int64_t order = 0;        // M
    std::size_t dimension = 0;     // n
    GroupPresentation presentation;
    InitialVector initial_vector;
    double min_distance = 0.0;
    std::size_t raw_count = 0;     // candidates passing the W check
    std::size_t tested_count = 0;  // candidates actually sent to the LP
    IntMatrix basis;               // winning T
};

// Coefficients of the linear constraint for one element:
// ||g x - x||^2 = 2 - 2 <c, y> with c_j = cos(2 pi b_j / M) on rotation
// coordinates followed by the reflection signs.
inline std::vector<double> constraint_coefficients(const GroupElementSigns& e, std::int64_t M) {
    if (e.is_identity()) throw IdentityElement("constraint_coefficients: identity element");
    std::vector<double> c;
    c.reserve(e.b.size() + e.signs.size());
    for (auto b : e.b) c.push_back(std::cos(2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(M)));
    for (auto s : e.signs) c.push_back(static_cast<double>(s));
    return c;
}

namespace detail {

inline double distance_sq(const std::vector<std::int64_t>& b, const std::vector<int>& signs,
                          std::int64_t M, const InitialVector& x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j)
        acc += std::cos(2.0 * std::numbers::pi * static_cast<double>(b[j]) / static_cast<double>(M)) *
               x.deltas[j] * x.deltas[j];
    for (std::size_t l = 0; l < signs.size(); ++l)
        acc += static_cast<double>(signs[l]) * x.reflection[l] * x.reflection[l];
    return 2.0 - 2.0 * acc;
}

}  // namespace detail

// Minimum distance of the reflection-free code with initial vector x.
inline double min_distance(const GroupElementTable& elements, std::int64_t M, const InitialVector& x) {
    static const std::vector<int> no_signs;
    double best = 4.0;
    bool any = false;
    for (const auto& b : elements.elements) {
        bool ident = true;
        for (auto v : b)
            if (v != 0) { ident = false; break; }
        if (ident) continue;
        any = true;
        best = std::min(best, detail::distance_sq(b, no_signs, M, x));
    }
    if (!any) return 0.0;
    return std::sqrt(std::max(best, 0.0));
}

// General form with reflection signs.
inline double min_distance(const std::vector<GroupElementSigns>& elements, std::int64_t M,
                           const InitialVector& x) {
    double best = 4.0;
    bool any = false;
    for (const auto& e : elements) {
        if (e.is_identity()) continue;
        any = true;
        best = std::min(best, detail::distance_sq(e.b, e.signs, M, x));
    }
    if (!any) return 0.0;
    return std::sqrt(std::max(best, 0.0));
}

// Flat torus chart: (d1 cos(y1/d1), d1 sin(y1/d1), ..., dk cos(yk/dk), dk sin(yk/dk)).
inline std::vector<double> torus_map(const InitialVector& x0, const std::vector<double>& phases) {
    for (double d : x0.deltas)
        if (d == 0.0) throw DegenerateRadius("torus_map: zero radius");
    std::vector<double> p;
    p.reserve(2 * x0.deltas.size());
    for (std::size_t j = 0; j < x0.deltas.size(); ++j) {
        double d = x0.deltas[j];
        p.push_back(d * std::cos(phases[j] / d));
        p.push_back(d * std::sin(phases[j] / d));
    }
    return p;
}

// Pseudo-diagonal orthogonal matrix of the element: 2x2 rotation blocks
// by 2 pi b_j / M followed by the +-1 entries.
inline std::vector<std::vector<double>> render_element(const GroupElementSigns& e, std::int64_t M,
                                                       std::size_t n) {
    if (n != 2 * e.b.size() + e.signs.size())
        throw std::invalid_argument("render_element: n must equal 2k + #signs");
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < e.b.size(); ++j) {
        double a = 2.0 * std::numbers::pi * static_cast<double>(e.b[j]) / static_cast<double>(M);
        double c = std::cos(a), s = std::sin(a);
        g[2 * j][2 * j] = c;
        g[2 * j][2 * j + 1] = -s;
        g[2 * j + 1][2 * j] = s;
        g[2 * j + 1][2 * j + 1] = c;
    }
    for (std::size_t l = 0; l < e.signs.size(); ++l)
        g[2 * e.b.size() + l][2 * e.b.size() + l] = static_cast<double>(e.signs[l]);
    return g;
}

// Oracle: render the whole orbit and take the minimum pairwise distance.
inline double brute_force_min_distance(const std::vector<GroupElementSigns>& elements,
                                       std::int64_t M, std::size_t n,
                                       const std::vector<double>& x) {
    if (elements.size() > 5000) throw GuardExceeded("brute_force_min_distance: orbit above 5000 points");
    std::vector<std::vector<double>> orbit;
    orbit.reserve(elements.size());
    for (const auto& e : elements) {
        auto g = render_element(e, M, n);
        std::vector<double> p(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) p[i] += g[i][j] * x[j];
        orbit.push_back(std::move(p));
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < orbit.size(); ++a)
        for (std::size_t b = a + 1; b < orbit.size(); ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double d = orbit[a][i] - orbit[b][i];
                s += d * d;
            }
            best = std::min(best, s);
        }
    return std::sqrt(best);
}

inline double brute_force_min_distance(const GroupElementTable& elements, std::int64_t M,
                                       std::size_t n, const std::vector<double>& x) {
    std::vector<GroupElementSigns> es;
    es.reserve(elements.elements.size());
    for (const auto& b : elements.elements) es.push_back({b, {}});
    return brute_force_min_distance(es, M, n, x);
}

}  // namespace cgcodes
