#pragma once

// Shared test oracles.  Everything here is independent of the library's
// computation paths: results are checked by reconstruction (multiply the
// transforms back out, re-derive subgroups element by element), never by
// re-running the code under test.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "cgcodes/cgcodes.hpp"

namespace testsupport {

using cgcodes::Int;
using cgcodes::IntMatrix;

inline Int gcd_list(const std::vector<Int>& xs) {
    Int g = 0;
    for (Int x : xs) {
        if (x < 0) x = -x;
        g = boost::multiprecision::gcd(g, x);
    }
    return g;
}

// All five HnfResult invariants, by reconstruction.
inline void check_hnf(const IntMatrix& B, const cgcodes::HnfResult& r) {
    const std::size_t k = B.rows();
    REQUIRE(r.U * B * r.V == r.T);
    Int du = cgcodes::det(r.U);
    REQUIRE((du == 1 || du == -1));
    // V is a permutation matrix
    for (std::size_t i = 0; i < k; ++i) {
        int row_ones = 0, col_ones = 0;
        for (std::size_t j = 0; j < k; ++j) {
            REQUIRE((r.V(i, j) == 0 || r.V(i, j) == 1));
            if (r.V(i, j) == 1) ++row_ones;
            if (r.V(j, i) == 1) ++col_ones;
        }
        REQUIRE(row_ones == 1);
        REQUIRE(col_ones == 1);
    }
    for (std::size_t i = 0; i < k; ++i) {
        REQUIRE(r.T(i, i) > 0);
        if (i + 1 < k) REQUIRE(r.T(i, i) <= r.T(i + 1, i + 1));
        for (std::size_t j = i + 1; j < k; ++j) {
            REQUIRE(r.T(i, j) >= 0);
            REQUIRE(r.T(i, j) < r.T(j, j));
        }
        for (std::size_t j = 0; j < i; ++j) REQUIRE(r.T(i, j) == 0);
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            std::vector<Int> col;
            for (std::size_t rr = i; rr <= j; ++rr) col.push_back(r.T(rr, j));
            REQUIRE(r.T(i, i) <= gcd_list(col));
        }
}

inline void check_snf(const IntMatrix& A, const cgcodes::SnfResult& r) {
    const std::size_t k = A.rows();
    REQUIRE(r.V * A * r.U == r.D);
    REQUIRE(cgcodes::is_unimodular(r.U));
    REQUIRE(cgcodes::is_unimodular(r.V));
    Int prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            if (i != j) REQUIRE(r.D(i, j) == 0);
        REQUIRE(r.D(i, i) >= 0);
        prod *= r.D(i, i);
        if (i + 1 < k) {
            REQUIRE(r.D(i + 1, i + 1) != 0);
            REQUIRE(r.D(i, i) % r.D(i + 1, i + 1) == 0);
        }
        REQUIRE(r.invariant_factors[i] == r.D(i, i));
    }
    Int da = cgcodes::det(A);
    if (da < 0) da = -da;
    REQUIRE(prod == da);
}

inline IntMatrix random_nonsingular(std::mt19937& rng, std::size_t k, int lo = -50, int hi = 50) {
    std::uniform_int_distribution<int> dist(lo, hi);
    for (;;) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = dist(rng);
        if (cgcodes::det(m) != 0) return m;
    }
}

// Subgroup of Z_M^k generated by the rows of T, as a sorted element set.
inline std::set<std::vector<std::int64_t>> subgroup_of(const IntMatrix& T, std::int64_t M) {
    const std::size_t k = T.cols();
    std::set<std::vector<std::int64_t>> elems;
    std::vector<std::vector<std::int64_t>> gens;
    for (std::size_t r = 0; r < T.rows(); ++r) {
        std::vector<std::int64_t> g(k);
        for (std::size_t j = 0; j < k; ++j) {
            Int v = T(r, j) % M;
            if (v < 0) v += M;
            g[j] = static_cast<std::int64_t>(v);
        }
        gens.push_back(std::move(g));
    }
    std::vector<std::vector<std::int64_t>> frontier{std::vector<std::int64_t>(k, 0)};
    elems.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                std::vector<std::int64_t> ne(k);
                for (std::size_t j = 0; j < k; ++j) ne[j] = (e[j] + g[j]) % M;
                if (elems.insert(ne).second) next.push_back(std::move(ne));
            }
        frontier = std::move(next);
    }
    return elems;
}

// Canonical representative of a subgroup set under all signed coordinate
// permutations (exhaustive, element-set based; independent of any
// Hermite machinery).
inline std::set<std::vector<std::int64_t>> canon_subgroup(const std::set<std::vector<std::int64_t>>& H,
                                                          std::int64_t M, std::size_t k) {
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::vector<std::int64_t>> best = H;
    do {
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::set<std::vector<std::int64_t>> img;
            for (const auto& e : H) {
                std::vector<std::int64_t> ne(k);
                for (std::size_t j = 0; j < k; ++j) {
                    std::int64_t v = e[perm[j]];
                    if (mask & (1u << j)) v = (M - v) % M;
                    ne[j] = v;
                }
                img.insert(std::move(ne));
            }
            if (img < best) best = std::move(img);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// All order-M subgroups of Z_M^2 containing M*Z^2, enumerated from the
// unordered Hermite pairs (d1*d2 = M, any order, 0 <= w < d2) with the
// sublattice condition d2 | (M/d1)*w.
inline std::vector<IntMatrix> all_subgroup_bases_k2(std::int64_t M) {
    std::vector<IntMatrix> out;
    for (std::int64_t d1 = 1; d1 <= M; ++d1) {
        if (M % d1 != 0) continue;
        std::int64_t d2 = M / d1;
        for (std::int64_t w = 0; w < d2; ++w) {
            if (((M / d1) * w) % d2 != 0) continue;
            IntMatrix T(2, 2);
            T(0, 0) = d1;
            T(0, 1) = w;
            T(1, 1) = d2;
            out.push_back(std::move(T));
        }
    }
    return out;
}

// Adam equivalence up to signed permutation: g equals alpha*base under
// some unit alpha and signed coordinate permutation.
inline bool adam_equivalent(const std::vector<std::int64_t>& g, const std::vector<std::int64_t>& base,
                            std::int64_t M) {
    const std::size_t k = base.size();
    if (g.size() != k) return false;
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::int64_t a = 1; a < M; ++a) {
        if (std::gcd(a, M) != 1) continue;
        std::vector<std::int64_t> scaled(k);
        for (std::size_t j = 0; j < k; ++j) scaled[j] = (a * base[j]) % M;
        std::vector<std::size_t> p = perm;
        do {
            for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
                bool ok = true;
                for (std::size_t j = 0; j < k && ok; ++j) {
                    std::int64_t v = scaled[p[j]];
                    if (mask & (1u << j)) v = (M - v) % M;
                    ok = (v == g[j]);
                }
                if (ok) return true;
            }
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return false;
}

}  // namespace testsupport
