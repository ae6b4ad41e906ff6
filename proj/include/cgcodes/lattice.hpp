#pragma once

// Candidate lattice enumeration for a given order M and block count k:
// diagonal profiles from the ordered factorizations of M, superdiagonal
// fill-in under the gcd condition, the W-integrality (sublattice) check,
// dedup by a canonical isometry signature, and the group-theoretic views
// of a candidate (element table, invariant factors, generators).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cgcodes/errors.hpp"
#include "cgcodes/intmat.hpp"

namespace cgcodes {

struct DiagonalProfile {
    std::int64_t order = 0;               // M
    std::size_t block_count = 0;          // k
    std::vector<std::int64_t> divisors;   // a_1 >= ... >= a_k, product = M
    std::vector<std::int64_t> diag;       // d_i = M / a_i, nondecreasing
};

// All ordered factorizations M = a_1 * ... * a_k with a_1 >= ... >= a_k,
// emitted as profiles sorted lexicographically by the diagonal.
inline std::vector<DiagonalProfile> enumerate_diagonals(std::int64_t M, std::size_t k) {
    if (M < 1 || k < 1) throw std::invalid_argument("enumerate_diagonals: M >= 1, k >= 1 required");
    std::vector<std::int64_t> divs;
    for (std::int64_t d = 1; d <= M; ++d)
        if (M % d == 0) divs.push_back(d);

    std::vector<DiagonalProfile> out;
    std::vector<std::int64_t> acc;
    auto rec = [&](auto&& self, std::int64_t rem, std::int64_t amax) -> void {
        if (acc.size() == k) {
            if (rem == 1) {
                DiagonalProfile p;
                p.order = M;
                p.block_count = k;
                p.divisors = acc;
                p.diag.resize(k);
                for (std::size_t i = 0; i < k; ++i) p.diag[i] = M / acc[i];
                out.push_back(std::move(p));
            }
            return;
        }
        for (std::int64_t a : divs) {
            if (a > amax || rem % a != 0) continue;
            acc.push_back(a);
            self(self, rem / a, a);
            acc.pop_back();
        }
    };
    rec(rec, M, M);
    std::sort(out.begin(), out.end(),
              [](const DiagonalProfile& x, const DiagonalProfile& y) { return x.diag < y.diag; });
    // (a_i)^i * (a_{i+1} ... a_k) <= M, implied by the ordering
    for (const auto& p : out)
        for (std::size_t i = 0; i < k; ++i) {
            Int bound = 1;
            for (std::size_t q = 0; q <= i; ++q) bound *= p.divisors[i];
            for (std::size_t q = i + 1; q < k; ++q) bound *= p.divisors[q];
            if (bound > M) throw InternalError("diagonal profile violates the divisor bound");
        }
    return out;
}

struct CandidateLattice {
    std::int64_t order = 0;      // M
    std::size_t block_count = 0; // k
    IntMatrix basis;             // T, upper triangular
    IntMatrix scaled_inv;        // W with W*T = M*I
    std::string signature;       // canonical isometry signature
};

// Canonical signature of the subgroup of Z_M^k spanned by the rows of T:
// over all k! * 2^k signed coordinate permutations, transform the rows,
// append the M*e_i generators, take the unique Hermite basis, and keep
// the lexicographic minimum.  Equal signatures <=> the lattices differ by
// a signed coordinate permutation.  Unit scalings fix the subgroup
// setwise, so Adam-equivalent generators collapse without an extra loop.
inline std::string canonical_signature(const IntMatrix& T, std::int64_t M) {
    const std::size_t k = T.rows();
    std::vector<std::size_t> perm(k);
    for (std::size_t j = 0; j < k; ++j) perm[j] = j;

    IntMatrix best;
    bool have = false;
    do {
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::vector<std::vector<Int>> gens;
            gens.reserve(2 * k);
            for (std::size_t r = 0; r < k; ++r) {
                std::vector<Int> row(k);
                for (std::size_t j = 0; j < k; ++j) {
                    row[j] = T(r, perm[j]);
                    if (mask & (1u << j)) row[j] = -row[j];
                }
                gens.push_back(std::move(row));
            }
            for (std::size_t i = 0; i < k; ++i) {
                std::vector<Int> e(k);
                e[i] = M;
                gens.push_back(std::move(e));
            }
            IntMatrix H = hermite_basis(std::move(gens), k);
            if (!have || H < best) { best = std::move(H); have = true; }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best.to_string();
}

struct EnumerationResult {
    std::vector<CandidateLattice> candidates;  // sorted by basis, deduped if requested
    std::size_t raw_count = 0;                 // candidates that passed the W check
};

// All upper-triangular T with the profile's diagonal: superdiagonal
// entries range over [0, d_j), the last column is folded to
// [0, floor(d_k/2)] (sign conjugation), condition 3 of the normal form
// is enforced per column, and candidates whose W is not integral are
// rejected.  With dedupe, one representative per signature class is kept
// (the lexicographically smallest basis).
inline EnumerationResult enumerate_candidates(const DiagonalProfile& profile, bool dedupe = true) {
    const std::size_t k = profile.block_count;
    const std::int64_t M = profile.order;
    const auto& d = profile.diag;

    std::vector<std::pair<std::size_t, std::size_t>> pos;  // column-major superdiagonal
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i) pos.emplace_back(i, j);

    IntMatrix T(k, k);
    for (std::size_t i = 0; i < k; ++i) T(i, i) = d[i];

    std::vector<IntMatrix> raw;
    auto column_ok = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            Int g = d[j];
            for (std::size_t r = i; r < j; ++r) g = detail::gcd_abs(g, T(r, j));
            if (g < d[i]) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == pos.size()) {
            if (auto W = scaled_inverse(T, M)) {
                Int dt = det(T);
                Int expected = 1;
                for (std::size_t q = 0; q + 1 < k; ++q) expected *= M;
                if (dt != expected) throw InternalError("candidate determinant != M^(k-1)");
                raw.push_back(T);
            }
            return;
        }
        auto [i, j] = pos[t];
        std::int64_t hi = (j == k - 1) ? d[j] / 2 : d[j] - 1;
        for (std::int64_t v = 0; v <= hi; ++v) {
            T(i, j) = v;
            if (i == j - 1 && !column_ok(j)) continue;
            self(self, t + 1);
        }
        T(i, j) = 0;
    };
    rec(rec, 0);

    EnumerationResult res;
    res.raw_count = raw.size();
    std::sort(raw.begin(), raw.end());

    if (!dedupe) {
        for (auto& t : raw) {
            CandidateLattice c;
            c.order = M;
            c.block_count = k;
            c.scaled_inv = *scaled_inverse(t, M);
            c.signature = canonical_signature(t, M);
            c.basis = std::move(t);
            res.candidates.push_back(std::move(c));
        }
        return res;
    }

    std::map<std::string, IntMatrix> classes;
    for (auto& t : raw) {
        std::string sig = canonical_signature(t, M);
        auto it = classes.find(sig);
        if (it == classes.end())
            classes.emplace(std::move(sig), std::move(t));
        else if (t < it->second)
            it->second = std::move(t);
    }
    for (auto& [sig, t] : classes) {
        CandidateLattice c;
        c.order = M;
        c.block_count = k;
        c.basis = t;
        c.scaled_inv = *scaled_inverse(t, M);
        c.signature = sig;
        res.candidates.push_back(std::move(c));
    }
    std::sort(res.candidates.begin(), res.candidates.end(),
              [](const CandidateLattice& a, const CandidateLattice& b) { return a.basis < b.basis; });
    return res;
}

struct GroupElementTable {
    std::int64_t order = 0;
    std::size_t block_count = 0;
    std::vector<std::vector<std::int64_t>> elements;  // sorted, identity first
};

// Closure of the rows of T under addition mod M; must have exactly M
// elements when the candidate passed the sublattice check.
inline GroupElementTable group_elements(const IntMatrix& T, std::int64_t M) {
    const std::size_t k = T.rows();
    std::vector<std::vector<std::int64_t>> gens;
    for (std::size_t r = 0; r < k; ++r) {
        std::vector<std::int64_t> g(k);
        for (std::size_t j = 0; j < k; ++j) {
            Int v = T(r, j) % M;
            if (v < 0) v += M;
            g[j] = static_cast<std::int64_t>(v);
        }
        gens.push_back(std::move(g));
    }
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::vector<std::int64_t>> frontier{std::vector<std::int64_t>(k, 0)};
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                std::vector<std::int64_t> ne(k);
                for (std::size_t j = 0; j < k; ++j) ne[j] = (e[j] + g[j]) % M;
                if (seen.insert(ne).second) next.push_back(std::move(ne));
            }
        frontier = std::move(next);
        if (seen.size() > static_cast<std::size_t>(M))
            throw InternalError("group closure exceeds the order M");
    }
    if (seen.size() != static_cast<std::size_t>(M))
        throw InternalError("group closure has " + std::to_string(seen.size()) +
                            " elements, expected " + std::to_string(M));
    GroupElementTable tab;
    tab.order = M;
    tab.block_count = k;
    tab.elements.assign(seen.begin(), seen.end());
    return tab;
}

struct GroupPresentation {
    std::int64_t order = 0;
    // nontrivial invariant factors, d_{i+1} | d_i, product = M
    std::vector<std::int64_t> invariant_factors;
    // one exponent vector per nontrivial factor; generator i has order
    // invariant_factors[i] in Z_M^k
    std::vector<std::vector<std::int64_t>> generators;
};

// Invariant factors and generators of the quotient via the Smith form of
// W: with D = V*W*U, the rows of U^-1 * T generate, row i with order d_i.
inline GroupPresentation isomorphism_class(const IntMatrix& T, std::int64_t M) {
    const std::size_t k = T.rows();
    auto W = scaled_inverse(T, M);
    if (!W) throw std::invalid_argument("isomorphism_class: M*Z^k is not a sublattice");
    SnfResult s = snf(*W);

    // U^-1 = adj(U) * det(U) since det(U) = +-1
    Int du = det(s.U);
    if (du != 1 && du != -1) throw InternalError("SNF transform not unimodular");
    IntMatrix Uinv = adjugate(s.U);
    if (du == -1)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) Uinv(i, j) = -Uinv(i, j);

    IntMatrix G = Uinv * T;
    GroupPresentation pres;
    pres.order = M;
    Int prod = 1;
    for (std::size_t i = 0; i < k; ++i) {
        prod *= s.invariant_factors[i];
        if (s.invariant_factors[i] <= 1) continue;
        std::vector<std::int64_t> gen(k);
        for (std::size_t j = 0; j < k; ++j) {
            Int v = G(i, j) % M;
            if (v < 0) v += M;
            gen[j] = static_cast<std::int64_t>(v);
        }
        pres.invariant_factors.push_back(static_cast<std::int64_t>(s.invariant_factors[i]));
        pres.generators.push_back(std::move(gen));
    }
    if (prod != M) throw InternalError("invariant factors do not multiply to M");

    // the generators must regenerate the candidate's element table
    std::set<std::vector<std::int64_t>> regen;
    std::vector<std::vector<std::int64_t>> frontier{std::vector<std::int64_t>(k, 0)};
    regen.insert(frontier.front());
    while (!frontier.empty()) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& e : frontier)
            for (const auto& g : pres.generators) {
                std::vector<std::int64_t> ne(k);
                for (std::size_t j = 0; j < k; ++j) ne[j] = (e[j] + g[j]) % M;
                if (regen.insert(ne).second) next.push_back(std::move(ne));
            }
        frontier = std::move(next);
    }
    GroupElementTable tab = group_elements(T, M);
    if (!std::equal(regen.begin(), regen.end(), tab.elements.begin(), tab.elements.end()) ||
        regen.size() != tab.elements.size())
        throw InternalError("SNF generators do not regenerate the group");
    return pres;
}

}  // namespace cgcodes
