#pragma once

// Exact integer matrix algebra: the special Hermite normal form with
// gcd-sorted columns, the Smith normal form in decreasing-divisibility
// convention, unimodularity checks and the scaled inverse W = M * T^-1.
// All arithmetic is arbitrary precision; matrices here are tiny (k <= 4
// in practice) so clarity wins over cleverness throughout.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cgcodes/errors.hpp"

namespace cgcodes {

using Int = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw InternalError("ragged initializer");
            e_.insert(e_.end(), row.begin(), row.end());
        }
    }

    static IntMatrix identity(std::size_t k) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const {
        return {e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw InternalError("dimension mismatch in matrix product");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const Int& ail = a(i, l);
                if (ail == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
            }
        return c;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

    // Row-major lexicographic order; used for deterministic representatives.
    friend bool operator<(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        return std::lexicographical_compare(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end());
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i) os << ';';
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) os << ',';
                os << (*this)(i, j);
            }
        }
        return os.str();
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> e_;
};

namespace detail {

inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;  // truncates toward zero
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// g = gcd(a,b) > 0 with s*a + t*b = g.  When a already divides b the
// combination keeps the pivot (s = +-1, t = 0); elimination loops rely
// on this to make progress.
inline Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
    if (a != 0 && b % a == 0) {
        s = (a < 0) ? -1 : 1;
        t = 0;
        return a < 0 ? Int(-a) : a;
    }
    Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1; r0 = r1; r1 = r2;
        Int s2 = s0 - q * s1; s0 = s1; s1 = s2;
        Int t2 = t0 - q * t1; t0 = t1; t1 = t2;
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    s = s0; t = t0;
    return r0;
}

inline Int gcd_abs(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { Int r = a % b; a = b; b = r; }
    return a;
}

}  // namespace detail

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw InternalError("det of non-square matrix");
    const std::size_t k = a.rows();
    if (k == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t p = 0; p + 1 < k; ++p) {
        if (m(p, p) == 0) {
            std::size_t r = p + 1;
            while (r < k && m(r, p) == 0) ++r;
            if (r == k) return 0;
            for (std::size_t j = 0; j < k; ++j) std::swap(m(p, j), m(r, j));
            sign = -sign;
        }
        for (std::size_t i = p + 1; i < k; ++i)
            for (std::size_t j = p + 1; j < k; ++j)
                m(i, j) = (m(i, j) * m(p, p) - m(i, p) * m(p, j)) / prev;
        prev = m(p, p);
    }
    return sign > 0 ? m(k - 1, k - 1) : -m(k - 1, k - 1);
}

// Adjugate via signed minors; adj(A) * A = det(A) * I.
inline IntMatrix adjugate(const IntMatrix& a) {
    const std::size_t k = a.rows();
    if (k != a.cols()) throw InternalError("adjugate of non-square matrix");
    IntMatrix adj(k, k);
    if (k == 1) { adj(0, 0) = 1; return adj; }
    IntMatrix minor(k - 1, k - 1);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t r = 0, mr = 0; r < k; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, mc = 0; c < k; ++c) {
                    if (c == j) continue;
                    minor(mr, mc) = a(r, c);
                    ++mc;
                }
                ++mr;
            }
            Int d = det(minor);
            adj(j, i) = ((i + j) % 2 == 0) ? d : -d;
        }
    return adj;
}

inline bool is_unimodular(const IntMatrix& a) {
    Int d = det(a);
    return d == 1 || d == -1;
}

struct HnfResult {
    IntMatrix T;  // upper triangular, U*B*V = T
    IntMatrix U;  // unimodular row transform
    IntMatrix V;  // column permutation
};

// Special Hermite normal form: T = U*B*V upper triangular with
//   1. 0 < T(i,i) <= T(i+1,i+1)
//   2. 0 <= T(i,j) < T(j,j) for i < j
//   3. T(i,i) <= gcd(T(i..j, j)) for i < j
// At each pivot level the remaining columns are ordered by the gcd of
// their remaining entries (stable: ties keep the earlier column), which
// is what makes condition 3 hold at every level, not just the first.
inline HnfResult special_hnf(const IntMatrix& B) {
    const std::size_t k = B.rows();
    if (k != B.cols()) throw InternalError("special_hnf requires a square matrix");
    if (det(B) == 0) throw SingularMatrix("special_hnf: singular input");

    IntMatrix T = B;
    IntMatrix U = IntMatrix::identity(k);
    std::vector<std::size_t> perm(k);
    for (std::size_t j = 0; j < k; ++j) perm[j] = j;

    for (std::size_t p = 0; p < k; ++p) {
        // stable-select the remaining column with the smallest gcd over rows p..k-1
        std::size_t best = p;
        Int best_g = 0;
        for (std::size_t j = p; j < k; ++j) {
            Int g = 0;
            for (std::size_t i = p; i < k; ++i) g = detail::gcd_abs(g, T(i, j));
            if (j == p || g < best_g) { best = j; best_g = g; }
        }
        if (best != p) {
            // rotate column `best` to position p, preserving the order of the rest
            for (std::size_t j = best; j > p; --j) {
                for (std::size_t i = 0; i < k; ++i) std::swap(T(i, j), T(i, j - 1));
                std::swap(perm[j], perm[j - 1]);
            }
        }
        // bring the column gcd to the pivot and clear below it
        for (std::size_t i = p + 1; i < k; ++i) {
            if (T(i, p) == 0) continue;
            Int s, t;
            Int g = detail::ext_gcd(T(p, p), T(i, p), s, t);
            Int ap = T(p, p) / g, ai = T(i, p) / g;
            for (std::size_t j = 0; j < k; ++j) {
                Int rp = s * T(p, j) + t * T(i, j);
                Int ri = ap * T(i, j) - ai * T(p, j);
                T(p, j) = rp; T(i, j) = ri;
            }
            for (std::size_t j = 0; j < k; ++j) {
                Int rp = s * U(p, j) + t * U(i, j);
                Int ri = ap * U(i, j) - ai * U(p, j);
                U(p, j) = rp; U(i, j) = ri;
            }
        }
        if (T(p, p) < 0) {
            for (std::size_t j = 0; j < k; ++j) { T(p, j) = -T(p, j); U(p, j) = -U(p, j); }
        }
    }

    // reduce above-diagonal entries into [0, T(j,j))
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            Int q = detail::floor_div(T(i, j), T(j, j));
            if (q == 0) continue;
            for (std::size_t c = 0; c < k; ++c) { T(i, c) -= q * T(j, c); U(i, c) -= q * U(j, c); }
        }

    IntMatrix V(k, k);
    for (std::size_t j = 0; j < k; ++j) V(perm[j], j) = 1;
    return {std::move(T), std::move(U), std::move(V)};
}

struct SnfResult {
    IntMatrix D;  // diagonal, nonnegative, D = V*A*U
    IntMatrix U;  // right unimodular transform
    IntMatrix V;  // left unimodular transform
    std::vector<Int> invariant_factors;  // diagonal of D, d_{i+1} | d_i
};

// Smith normal form in the decreasing-divisibility convention:
// D = V*A*U diagonal with d_{i+1} | d_i.
inline SnfResult snf(const IntMatrix& A) {
    const std::size_t k = A.rows();
    if (k != A.cols()) throw InternalError("snf requires a square matrix");
    if (det(A) == 0) throw SingularMatrix("snf: singular input");

    IntMatrix D = A;
    IntMatrix L = IntMatrix::identity(k);  // accumulates row ops
    IntMatrix R = IntMatrix::identity(k);  // accumulates column ops

    auto row_gcd_step = [&](std::size_t p, std::size_t i) {
        Int s, t;
        Int g = detail::ext_gcd(D(p, p), D(i, p), s, t);
        Int ap = D(p, p) / g, ai = D(i, p) / g;
        for (std::size_t j = 0; j < k; ++j) {
            Int rp = s * D(p, j) + t * D(i, j);
            Int ri = ap * D(i, j) - ai * D(p, j);
            D(p, j) = rp; D(i, j) = ri;
        }
        for (std::size_t j = 0; j < k; ++j) {
            Int rp = s * L(p, j) + t * L(i, j);
            Int ri = ap * L(i, j) - ai * L(p, j);
            L(p, j) = rp; L(i, j) = ri;
        }
    };
    auto col_gcd_step = [&](std::size_t p, std::size_t j) {
        Int s, t;
        Int g = detail::ext_gcd(D(p, p), D(p, j), s, t);
        Int ap = D(p, p) / g, aj = D(p, j) / g;
        for (std::size_t i = 0; i < k; ++i) {
            Int cp = s * D(i, p) + t * D(i, j);
            Int cj = ap * D(i, j) - aj * D(i, p);
            D(i, p) = cp; D(i, j) = cj;
        }
        for (std::size_t i = 0; i < k; ++i) {
            Int cp = s * R(i, p) + t * R(i, j);
            Int cj = ap * R(i, j) - aj * R(i, p);
            R(i, p) = cp; R(i, j) = cj;
        }
    };

    for (std::size_t p = 0; p < k; ++p) {
        for (;;) {
            if (D(p, p) == 0) {  // pull a nonzero pivot into place
                bool found = false;
                for (std::size_t i = p; i < k && !found; ++i)
                    for (std::size_t j = p; j < k && !found; ++j)
                        if (D(i, j) != 0) {
                            if (i != p)
                                for (std::size_t c = 0; c < k; ++c) {
                                    std::swap(D(p, c), D(i, c));
                                    std::swap(L(p, c), L(i, c));
                                }
                            if (j != p)
                                for (std::size_t r = 0; r < k; ++r) {
                                    std::swap(D(r, p), D(r, j));
                                    std::swap(R(r, p), R(r, j));
                                }
                            found = true;
                        }
                if (!found) throw SingularMatrix("snf: rank deficient");
            }
            for (std::size_t i = p + 1; i < k; ++i)
                if (D(i, p) != 0) row_gcd_step(p, i);
            bool row_clear = true;
            for (std::size_t j = p + 1; j < k; ++j)
                if (D(p, j) != 0) { col_gcd_step(p, j); row_clear = false; }
            if (!row_clear) continue;  // column ops may have refilled the column
            bool col_clear = true;
            for (std::size_t i = p + 1; i < k; ++i)
                if (D(i, p) != 0) { col_clear = false; break; }
            if (!col_clear) continue;
            // pivot must divide the rest of the submatrix
            bool fixed = false;
            for (std::size_t i = p + 1; i < k && !fixed; ++i)
                for (std::size_t j = p + 1; j < k && !fixed; ++j)
                    if (D(i, j) % D(p, p) != 0) {
                        for (std::size_t c = 0; c < k; ++c) {
                            D(p, c) += D(i, c);
                            L(p, c) += L(i, c);
                        }
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (D(p, p) < 0)
            for (std::size_t c = 0; c < k; ++c) { D(p, c) = -D(p, c); L(p, c) = -L(p, c); }
    }

    // reverse to the decreasing convention d_{i+1} | d_i
    SnfResult res;
    res.D = IntMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i) res.D(i, i) = D(k - 1 - i, k - 1 - i);
    res.V = IntMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) res.V(i, j) = L(k - 1 - i, j);
    res.U = IntMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) res.U(i, j) = R(i, k - 1 - j);
    res.invariant_factors.resize(k);
    for (std::size_t i = 0; i < k; ++i) res.invariant_factors[i] = res.D(i, i);
    return res;
}

// W with W*T = M*I, computed as M*adj(T)/det(T); nullopt when some entry
// fails to divide exactly, i.e. M*Z^k is not contained in the lattice of T.
inline std::optional<IntMatrix> scaled_inverse(const IntMatrix& T, const Int& M) {
    const std::size_t k = T.rows();
    Int d = det(T);
    if (d == 0) throw SingularMatrix("scaled_inverse: singular input");
    IntMatrix adj = adjugate(T);
    IntMatrix W(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Int num = M * adj(i, j);
            if (num % d != 0) return std::nullopt;
            W(i, j) = num / d;
        }
    return W;
}

// Unique row-style Hermite basis of the lattice generated by the given
// rows (which must have full rank k): upper triangular, positive
// diagonal, entries above the diagonal reduced into [0, diag).
inline IntMatrix hermite_basis(std::vector<std::vector<Int>> gens, std::size_t k) {
    std::vector<std::vector<Int>> basis;
    basis.reserve(k);
    for (std::size_t col = 0; col < k; ++col) {
        for (;;) {
            // rows still in `gens` are zero left of `col`
            std::vector<std::size_t> nz;
            for (std::size_t r = 0; r < gens.size(); ++r)
                if (gens[r][col] != 0) nz.push_back(r);
            if (nz.empty()) throw InternalError("hermite_basis: rank deficient generators");
            if (nz.size() == 1) break;
            std::size_t m = nz[0];
            for (std::size_t r : nz)
                if (abs(gens[r][col]) < abs(gens[m][col])) m = r;
            for (std::size_t r : nz) {
                if (r == m) continue;
                Int q = gens[r][col] / gens[m][col];
                for (std::size_t j = col; j < k; ++j) gens[r][j] -= q * gens[m][j];
            }
        }
        std::size_t pivot = 0;
        while (gens[pivot][col] == 0) ++pivot;
        std::vector<Int> row = std::move(gens[pivot]);
        gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(pivot));
        if (row[col] < 0)
            for (auto& x : row) x = -x;
        basis.push_back(std::move(row));
        // drop generators that became zero
        std::erase_if(gens, [](const std::vector<Int>& g) {
            return std::all_of(g.begin(), g.end(), [](const Int& x) { return x == 0; });
        });
    }
    IntMatrix T(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) T(i, j) = basis[i][j];
    for (std::size_t j = 1; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            Int q = detail::floor_div(T(i, j), T(j, j));
            if (q == 0) continue;
            for (std::size_t c = j; c < k; ++c) T(i, c) -= q * T(j, c);
        }
    return T;
}

}  // namespace cgcodes
