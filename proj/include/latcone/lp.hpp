#pragma once

// Exact rational linear programming over H-polyhedra {x : Ax <= b} with free
// variables, and complete lattice-point enumeration for bounded instances.
// Two-phase primal simplex with Bland's anti-cycling rule; every comparison
// is exact, so optimality and unboundedness certificates are unconditional.

#include <cstddef>
#include <optional>
#include <vector>

#include "latcone/linalg.hpp"
#include "latcone/matrix.hpp"

namespace latcone {

struct Polytope {
    IntMatrix a;
    RatVec b;

    Polytope(IntMatrix a_, RatVec b_) : a(std::move(a_)), b(std::move(b_)) {
        if (a.rows() != b.size()) throw input_error("polytope: right-hand side length mismatch");
    }

    std::size_t dim() const { return a.cols(); }

    bool contains(const RatVec& x) const {
        if (x.size() != dim()) throw input_error("polytope: point dimension mismatch");
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (dot(a.row(i), x) > b[i]) return false;
        return true;
    }
};

enum class LpStatus { optimal, unbounded, infeasible };
enum class LpSense { max, min };

struct LpOutcome {
    LpStatus status;
    Rat value;  // meaningful when optimal
    RatVec point; // satisfies all constraints exactly and attains value
    RatVec ray;  // improving feasible direction when unbounded
};

namespace detail {

// Full-tableau simplex, maximization, variables x >= 0, constraints already
// in equality form with a feasible starting basis. Bland's rule throughout:
// entering column is the lowest eligible index, leaving row breaks ratio
// ties by lowest basic variable index.
class SimplexTableau {
public:
    SimplexTableau(std::vector<RatVec> rows, RatVec rhs, std::vector<std::size_t> basis,
                   std::size_t num_cols)
        : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)), cols_(num_cols) {}

    // Maximize cost over the current feasible region. `allowed` masks columns
    // permitted to enter the basis. Returns false when unbounded.
    bool run(const RatVec& cost, const std::vector<bool>& allowed) {
        const std::size_t m = rows_.size();
        // reduced costs: red[j] = cost[j] - cost_B . tab[., j]
        red_.assign(cols_, Rat(0));
        for (std::size_t j = 0; j < cols_; ++j) red_[j] = cost[j];
        value_ = Rat(0);
        for (std::size_t r = 0; r < m; ++r) {
            const Rat& cb = cost[basis_[r]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < cols_; ++j) red_[j] -= cb * rows_[r][j];
            value_ += cb * rhs_[r];
        }
        while (true) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j)
                if (allowed[j] && red_[j] > 0) { enter = j; break; }
            if (enter == cols_) return true; // optimal
            std::size_t leave = m;
            for (std::size_t r = 0; r < m; ++r) {
                if (rows_[r][enter] <= 0) continue;
                if (leave == m) { leave = r; continue; }
                Rat cur = rhs_[r] / rows_[r][enter];
                Rat best = rhs_[leave] / rows_[leave][enter];
                if (cur < best || (cur == best && basis_[r] < basis_[leave])) leave = r;
            }
            if (leave == m) { unbounded_col_ = enter; return false; }
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        Rat p = rows_[r][c];
        for (auto& x : rows_[r]) x /= p;
        rhs_[r] /= p;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == r || rows_[i][c] == 0) continue;
            Rat f = rows_[i][c];
            for (std::size_t j = 0; j < cols_; ++j) rows_[i][j] -= f * rows_[r][j];
            rhs_[i] -= f * rhs_[r];
        }
        if (red_[c] != 0) {
            Rat f = red_[c];
            for (std::size_t j = 0; j < cols_; ++j) red_[j] -= f * rows_[r][j];
            value_ += f * rhs_[r];
        }
        basis_[r] = c;
    }

    RatVec solution() const {
        RatVec x(cols_, Rat(0));
        for (std::size_t r = 0; r < rows_.size(); ++r) x[basis_[r]] = rhs_[r];
        return x;
    }

    // Feasible improving direction for the column that certified unboundedness.
    RatVec ray() const {
        RatVec d(cols_, Rat(0));
        d[unbounded_col_] = Rat(1);
        for (std::size_t r = 0; r < rows_.size(); ++r) d[basis_[r]] = -rows_[r][unbounded_col_];
        return d;
    }

    const Rat& value() const { return value_; }
    std::vector<std::size_t>& basis() { return basis_; }
    std::vector<RatVec>& rows() { return rows_; }
    RatVec& rhs() { return rhs_; }
    std::size_t cols() const { return cols_; }

private:
    std::vector<RatVec> rows_;
    RatVec rhs_;
    std::vector<std::size_t> basis_;
    std::size_t cols_;
    RatVec red_;
    Rat value_;
    std::size_t unbounded_col_ = 0;
};

} // namespace detail

// Exact optimum of c^T x over {x : Ax <= b}. Free variables are split into
// differences of nonnegative ones before the tableau is formed.
inline LpOutcome optimize(const Polytope& p, const RatVec& c, LpSense sense) {
    const std::size_t n = p.dim(), m = p.a.rows();
    if (c.size() != n) throw input_error("optimize: objective dimension mismatch");

    RatVec obj = c;
    if (sense == LpSense::min)
        for (auto& x : obj) x = -x;

    // columns: u_0..u_{n-1}, w_0..w_{n-1} (x = u - w), slacks, artificials
    const std::size_t slack0 = 2 * n;
    std::size_t ncols = 2 * n + m;
    std::vector<RatVec> rows(m, RatVec(ncols, Rat(0)));
    RatVec rhs(m);
    std::vector<std::size_t> basis(m);
    std::vector<std::size_t> artificial_rows;
    for (std::size_t i = 0; i < m; ++i) {
        int flip = p.b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) {
            rows[i][j] = Rat(flip * p.a(i, j));
            rows[i][n + j] = -rows[i][j];
        }
        rows[i][slack0 + i] = Rat(flip);
        rhs[i] = Rat(flip) * p.b[i];
        if (flip == 1) {
            basis[i] = slack0 + i;
        } else {
            artificial_rows.push_back(i);
        }
    }
    const std::size_t art0 = ncols;
    ncols += artificial_rows.size();
    for (auto& r : rows) r.resize(ncols, Rat(0));
    for (std::size_t k = 0; k < artificial_rows.size(); ++k) {
        rows[artificial_rows[k]][art0 + k] = Rat(1);
        basis[artificial_rows[k]] = art0 + k;
    }

    detail::SimplexTableau tab(std::move(rows), std::move(rhs), std::move(basis), ncols);

    std::vector<bool> allowed(ncols, true);
    for (std::size_t j = art0; j < ncols; ++j) allowed[j] = false; // artificials never re-enter

    if (!artificial_rows.empty()) {
        RatVec phase1(ncols, Rat(0));
        for (std::size_t j = art0; j < ncols; ++j) phase1[j] = Rat(-1);
        tab.run(phase1, allowed); // bounded by 0, cannot be unbounded
        if (tab.value() < 0) return {LpStatus::infeasible, Rat(0), {}, {}};
        // pivot remaining artificials out of the basis; rows that cannot
        // pivot are redundant equalities and stay at zero harmlessly
        for (std::size_t r = 0; r < tab.rows().size(); ++r) {
            if (tab.basis()[r] < art0) continue;
            for (std::size_t j = 0; j < art0; ++j)
                if (tab.rows()[r][j] != 0) { tab.pivot(r, j); break; }
        }
    }

    RatVec phase2(ncols, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        phase2[j] = obj[j];
        phase2[n + j] = -obj[j];
    }
    bool finite = tab.run(phase2, allowed);

    if (!finite) {
        RatVec d = tab.ray();
        RatVec ray(n);
        for (std::size_t j = 0; j < n; ++j) ray[j] = d[j] - d[n + j];
        if (sense == LpSense::min) {
            // same direction certifies min-unboundedness; keep orientation
        }
        return {LpStatus::unbounded, Rat(0), {}, ray};
    }

    RatVec y = tab.solution();
    RatVec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = y[j] - y[n + j];
    Rat value = dot(c, x);
    return {LpStatus::optimal, value, x, {}};
}

inline bool is_bounded(const Polytope& p) {
    RatVec c(p.dim(), Rat(0));
    for (std::size_t j = 0; j < p.dim(); ++j) {
        c[j] = Rat(1);
        if (optimize(p, c, LpSense::max).status == LpStatus::unbounded) return false;
        if (optimize(p, c, LpSense::min).status == LpStatus::unbounded) return false;
        c[j] = Rat(0);
    }
    return true;
}

inline bool is_empty(const Polytope& p) {
    RatVec c(p.dim(), Rat(0));
    return optimize(p, c, LpSense::max).status == LpStatus::infeasible;
}

// Nonempty and without implicit equality rows, i.e. the affine hull is R^n.
inline bool is_full_dimensional(const Polytope& p) {
    if (is_empty(p)) return false;
    for (std::size_t j = 0; j < p.a.rows(); ++j) {
        auto low = optimize(p, to_rational(p.a.row(j)), LpSense::min);
        if (low.status == LpStatus::optimal && low.value == p.b[j]) return false;
    }
    return true;
}

namespace detail {

// Fix x_head over its exact range, recurse on the slice with that column
// substituted out. Columns are consumed left to right so output is
// lex-sorted. Returns true once `cap` points have been collected.
inline bool enumerate_points(const IntMatrix& a, const RatVec& b, IntVec& prefix,
                             std::vector<IntVec>& out, std::size_t cap) {
    const std::size_t m = a.rows(), k = a.cols();
    if (k == 1) {
        std::optional<Rat> lo, hi;
        for (std::size_t i = 0; i < m; ++i) {
            const Int& coef = a(i, 0);
            if (coef == 0) {
                if (b[i] < 0) return false;
            } else if (coef > 0) {
                Rat bound = b[i] / Rat(coef);
                if (!hi || bound < *hi) hi = bound;
            } else {
                Rat bound = b[i] / Rat(coef);
                if (!lo || bound > *lo) lo = bound;
            }
        }
        if (!lo || !hi) throw input_error("integer_points: unbounded slice");
        for (Int v = rat_ceil(*lo); v <= rat_floor(*hi); ++v) {
            prefix.push_back(v);
            out.push_back(prefix);
            prefix.pop_back();
            if (out.size() >= cap) return true;
        }
        return false;
    }

    Polytope slice(a, b);
    RatVec c(k, Rat(0));
    c[0] = Rat(1);
    LpOutcome mx = optimize(slice, c, LpSense::max);
    if (mx.status == LpStatus::infeasible) return false;
    LpOutcome mn = optimize(slice, c, LpSense::min);
    if (mx.status != LpStatus::optimal || mn.status != LpStatus::optimal)
        throw input_error("integer_points: unbounded slice");

    std::vector<std::size_t> rest(k - 1);
    for (std::size_t j = 0; j < k - 1; ++j) rest[j] = j + 1;
    IntMatrix tail = a.select_cols(rest);
    for (Int v = rat_ceil(mn.value); v <= rat_floor(mx.value); ++v) {
        RatVec nb(m);
        for (std::size_t i = 0; i < m; ++i) nb[i] = b[i] - Rat(a(i, 0) * v);
        prefix.push_back(v);
        bool full = enumerate_points(tail, nb, prefix, out, cap);
        prefix.pop_back();
        if (full) return true;
    }
    return false;
}

// First `cap` points in lex order; boundedness verified via LPs on all +-e_i.
inline std::vector<IntVec> integer_points_up_to(const Polytope& p, std::size_t cap) {
    if (is_empty(p)) return {};
    if (!is_bounded(p)) throw input_error("integer_points requires a bounded polytope");
    std::vector<IntVec> out;
    IntVec prefix;
    enumerate_points(p.a, p.b, prefix, out, cap);
    return out;
}

} // namespace detail

// Complete, duplicate-free, lexicographically sorted list of P's integer
// points.
inline std::vector<IntVec> integer_points(const Polytope& p) {
    return detail::integer_points_up_to(p, std::size_t(-1));
}

struct LatticeFreeResult {
    bool lattice_free;
    std::optional<IntVec> witness;
};

// Equivalent to integer_points(p).empty(), with an early exit on the first
// witness.
inline LatticeFreeResult is_lattice_free(const Polytope& p) {
    auto pts = detail::integer_points_up_to(p, 1);
    if (pts.empty()) return {true, std::nullopt};
    return {false, pts.front()};
}

} // namespace latcone
