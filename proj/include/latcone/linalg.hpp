#pragma once

// Exact integer/rational linear algebra: fraction-free determinants,
// adjugates, Hermite and Smith normal forms with transformation matrices,
// and exhaustive maximal-minor statistics.

#include <cstddef>
#include <optional>
#include <vector>

#include "latcone/matrix.hpp"

namespace latcone {

// All size-k subsets of {0,...,n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        // advance to the next combination
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

// Fraction-free Bareiss elimination. Every division below is exact.
inline Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("determinant requires a square matrix");
    const std::size_t n = m.rows();
    IntMatrix a = m;
    Int prev(1);
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a(piv, k) == 0) ++piv;
            if (piv == n) return Int(0);
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sgn < 0 ? Int(-a(n - 1, n - 1)) : a(n - 1, n - 1);
}

// adj(m) * m == det(m) * I, computed from cofactors.
inline IntMatrix adjugate(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("adjugate requires a square matrix");
    const std::size_t n = m.rows();
    if (n == 1) return IntMatrix::identity(1);
    IntMatrix adj(n, n);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::size_t> rows;
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) rows.push_back(k);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> cols;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) cols.push_back(k);
            Int minor = determinant(m.select_rows(rows).select_cols(cols));
            adj(j, i) = ((i + j) % 2 == 0) ? minor : -minor;
        }
    }
    return adj;
}

struct HnfResult {
    IntMatrix h; // h == m * u, column-style echelon: pivots positive, later columns zero
    IntMatrix u; // unimodular
};

// Column-style Hermite normal form. Pivot columns advance left to right, so a
// rank-r input ends with columns r..n-1 identically zero.
inline HnfResult hermite_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(cols);

    auto col_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(h(i, a), h(i, b));
        for (std::size_t i = 0; i < cols; ++i) std::swap(u(i, a), u(i, b));
    };
    auto col_axpy = [&](std::size_t dst, const Int& q, std::size_t src) {
        // column dst -= q * column src
        if (q == 0) return;
        for (std::size_t i = 0; i < rows; ++i) h(i, dst) -= q * h(i, src);
        for (std::size_t i = 0; i < cols; ++i) u(i, dst) -= q * u(i, src);
    };
    auto col_negate = [&](std::size_t c) {
        for (std::size_t i = 0; i < rows; ++i) h(i, c) = -h(i, c);
        for (std::size_t i = 0; i < cols; ++i) u(i, c) = -u(i, c);
    };

    std::size_t pivot = 0;
    for (std::size_t r = 0; r < rows && pivot < cols; ++r) {
        while (true) {
            std::size_t best = cols;
            for (std::size_t j = pivot; j < cols; ++j)
                if (h(r, j) != 0 && (best == cols || abs(h(r, j)) < abs(h(r, best)))) best = j;
            if (best == cols) break; // no pivot in this row
            col_swap(pivot, best);
            bool clean = true;
            for (std::size_t j = pivot + 1; j < cols; ++j) {
                if (h(r, j) == 0) continue;
                col_axpy(j, h(r, j) / h(r, pivot), pivot);
                if (h(r, j) != 0) clean = false;
            }
            if (clean) {
                if (h(r, pivot) < 0) col_negate(pivot);
                for (std::size_t j = 0; j < pivot; ++j)
                    col_axpy(j, floor_div(h(r, j), h(r, pivot)), pivot);
                ++pivot;
                break;
            }
        }
    }
    return {h, u};
}

struct SnfResult {
    IntMatrix d; // u * m * v == d, diagonal, d1 | d2 | ...
    IntMatrix u; // unimodular, rows x rows
    IntMatrix v; // unimodular, cols x cols
};

inline SnfResult smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    auto row_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols; ++j) std::swap(d(a, j), d(b, j));
        for (std::size_t j = 0; j < rows; ++j) std::swap(u(a, j), u(b, j));
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows; ++i) std::swap(d(i, a), d(i, b));
        for (std::size_t i = 0; i < cols; ++i) std::swap(v(i, a), v(i, b));
    };
    auto row_axpy = [&](std::size_t dst, const Int& q, std::size_t src) {
        if (q == 0) return;
        for (std::size_t j = 0; j < cols; ++j) d(dst, j) -= q * d(src, j);
        for (std::size_t j = 0; j < rows; ++j) u(dst, j) -= q * u(src, j);
    };
    auto col_axpy = [&](std::size_t dst, const Int& q, std::size_t src) {
        if (q == 0) return;
        for (std::size_t i = 0; i < rows; ++i) d(i, dst) -= q * d(i, src);
        for (std::size_t i = 0; i < cols; ++i) v(i, dst) -= q * v(i, src);
    };

    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block to (t, t)
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) { pi = i; pj = j; }
            if (pi == rows) { t = steps; break; } // trailing block is zero, done
            row_swap(t, pi);
            col_swap(t, pj);

            bool again = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                row_axpy(i, d(i, t) / d(t, t), t);
                if (d(i, t) != 0) again = true;
            }
            if (again) continue;
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                col_axpy(j, d(t, j) / d(t, t), t);
                if (d(t, j) != 0) again = true;
            }
            if (again) continue;

            // divisibility of the trailing block by the pivot
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols && fixed; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        row_axpy(t, Int(-1), i); // pulls a non-multiple into row t
                        fixed = false;
                    }
            if (fixed) {
                if (d(t, t) < 0) {
                    for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
                    for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
                }
                break;
            }
        }
        if (t == steps) break;
    }
    return {d, u, v};
}

// Rational row-reduction; returns the pivot columns. `aug` marks trailing
// columns excluded from pivoting (augmented right-hand sides).
inline std::vector<std::size_t> rref(RatMatrix& m, std::size_t aug = 0) {
    const std::size_t rows = m.rows(), cols = m.cols() - aug;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
        Rat inv = m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(const RatMatrix& m) {
    RatMatrix a = m;
    return rref(a).size();
}

inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("inverse requires a square matrix");
    const std::size_t n = m.rows();
    RatMatrix a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = Rat(1);
    }
    if (rref(a, n).size() != n) return std::nullopt;
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
    return inv;
}

// Unique solution of a full-column-rank (possibly overdetermined) system;
// nullopt when inconsistent.
inline std::optional<RatVec> solve_full_rank(const RatMatrix& m, const RatVec& b) {
    if (m.rows() != b.size()) throw input_error("solve dimension mismatch");
    const std::size_t n = m.cols();
    RatMatrix a(m.rows(), n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n) = b[i];
    }
    auto pivots = rref(a, 1);
    if (pivots.size() != n) throw input_error("solve requires full column rank");
    for (std::size_t i = pivots.size(); i < m.rows(); ++i)
        if (a(i, n) != 0) return std::nullopt; // inconsistent
    RatVec x(n);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a(r, n);
    return x;
}

inline std::optional<RatVec> solve_full_rank(const IntMatrix& m, const RatVec& b) {
    return solve_full_rank(to_rational(m), b);
}

// Integer kernel vector of an (n-1) x n matrix via Cramer-style minors:
// v_j = (-1)^j det(m without column j). Zero iff rank < n-1.
inline IntVec kernel_vector(const IntMatrix& m) {
    if (m.rows() + 1 != m.cols()) throw input_error("kernel_vector expects (n-1) x n input");
    const std::size_t n = m.cols();
    IntVec v(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) keep.push_back(k);
        Int det = determinant(m.select_cols(keep));
        v[j] = (j % 2 == 0) ? det : -det;
    }
    return v;
}

// gcd of all r x r minors of an r x n matrix with r <= n; 0 if all vanish.
inline Int gcd_of_maximal_minors(const IntMatrix& m) {
    if (m.rows() > m.cols()) throw input_error("gcd_of_maximal_minors expects a wide matrix");
    Int g(0);
    for (const auto& cols : subsets_of_size(m.cols(), m.rows()))
        g = gcd(g, abs(determinant(m.select_cols(cols))));
    return g;
}

struct MinorStats {
    Int delta_max;    // largest |det| over all maximal square submatrices
    Int delta_min;    // smallest nonzero such |det|; 0 when none is invertible
    Int gcd_minors;   // gcd of all maximal minors; 0 when all vanish
    std::size_t rank; // column rank
};

// Exhaustive enumeration of all C(m, n) maximal minors.
inline MinorStats minor_stats(const IntMatrix& a) {
    if (a.rows() < a.cols()) throw input_error("minor_stats requires at least as many rows as columns");
    MinorStats s{Int(0), Int(0), Int(0), rank(a)};
    for (const auto& rows : subsets_of_size(a.rows(), a.cols())) {
        Int d = abs(determinant(a.select_rows(rows)));
        if (d > s.delta_max) s.delta_max = d;
        if (d != 0 && (s.delta_min == 0 || d < s.delta_min)) s.delta_min = d;
        s.gcd_minors = gcd(s.gcd_minors, d);
    }
    return s;
}

// Per-row multiplication by the lcm of denominators; the cone/polyhedron
// described by (m, rhs) is unchanged.
inline std::pair<IntMatrix, RatVec> scale_rows_to_integer(const RatMatrix& m, const RatVec& rhs) {
    if (m.rows() != rhs.size()) throw input_error("scale_rows_to_integer dimension mismatch");
    IntMatrix a(m.rows(), m.cols());
    RatVec b(rhs.size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l(1);
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, denominator(m(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat scaled = m(i, j) * Rat(l);
            a(i, j) = numerator(scaled);
        }
        b[i] = rhs[i] * Rat(l);
    }
    return {a, b};
}

inline bool is_integral_matrix(const RatMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!is_integral(m(i, j))) return false;
    return true;
}

inline IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!is_integral(m(i, j))) throw input_error("matrix entry is not integral");
            a(i, j) = numerator(m(i, j));
        }
    return a;
}

} // namespace latcone
