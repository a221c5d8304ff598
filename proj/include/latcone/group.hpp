#pragma once

// The lattice of integral right-hand sides Lambda = {x : Ax in Z^m}, the
// finite abelian quotient Lambda / Z^n, and diameters of finite abelian
// groups: the exact invariant-factor formula next to a definitional
// breadth-first oracle. A sum of length zero is permitted, so the identity
// is always reachable at distance 0.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "latcone/linalg.hpp"
#include "latcone/matrix.hpp"

namespace latcone {

struct RhsLattice {
    RatMatrix basis; // columns span Lambda
    Rat det;         // |det basis| = 1 / gcd(A)
};

// Basis of (A^T Z^m)^* from the Smith normal form of A^T. Asserts the
// determinant identity det(Lambda) * gcd(A) = 1 and that A * basis is
// integral.
inline RhsLattice rhs_lattice(const IntMatrix& a) {
    const std::size_t n = a.cols();
    if (rank(a) != n) throw input_error("rhs_lattice requires full column rank");
    auto snf = smith_normal_form(a.transposed()); // u * a^T * v = d
    // A^T Z^m has basis u^{-1} * diag(alpha); the dual lattice has basis
    // u^T * diag(1/alpha).
    RatMatrix basis(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Int alpha = snf.d(j, j);
        if (alpha == 0) throw check_error("rhs_lattice: full-rank input produced a zero factor");
        for (std::size_t i = 0; i < n; ++i) basis(i, j) = make_rat(snf.u(j, i), alpha);
    }

    RatMatrix ab = to_rational(a) * basis;
    if (!is_integral_matrix(ab)) throw check_error("rhs_lattice: A * basis is not integral");

    Rat det(1);
    {
        // determinant of the rational basis via elimination
        RatMatrix m = basis;
        int sgn = 1;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            while (piv < n && m(piv, k) == 0) ++piv;
            if (piv == n) throw check_error("rhs_lattice: singular basis");
            if (piv != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
                sgn = -sgn;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                if (m(i, k) == 0) continue;
                Rat f = m(i, k) / m(k, k);
                for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
            }
        }
        for (std::size_t k = 0; k < n; ++k) det *= m(k, k);
        if (sgn < 0) det = -det;
    }
    det = abs(det);

    Int g = minor_stats(a).gcd_minors;
    if (det * Rat(g) != 1) throw check_error("rhs_lattice: det(Lambda) * gcd(A) != 1");
    return {std::move(basis), det};
}

struct AbelianGroup {
    std::vector<Int> invariant_factors; // s_1 | s_2 | ..., each >= 2; empty = trivial group

    explicit AbelianGroup(std::vector<Int> factors = {}) : invariant_factors(std::move(factors)) {
        for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
            if (invariant_factors[i] < 2) throw input_error("invariant factors must be >= 2");
            if (i > 0 && invariant_factors[i] % invariant_factors[i - 1] != 0)
                throw input_error("invariant factors must form a divisibility chain");
        }
    }

    Int order() const {
        Int o(1);
        for (const auto& s : invariant_factors) o *= s;
        return o;
    }

    bool trivial() const { return invariant_factors.empty(); }
    bool cyclic() const { return invariant_factors.size() <= 1; }
};

// Lambda / Z^n: unit vectors in Lambda-coordinates, then Smith normal form.
inline AbelianGroup quotient_group(const RhsLattice& lattice) {
    auto inv = inverse(lattice.basis);
    if (!inv) throw input_error("quotient_group: singular lattice basis");
    if (!is_integral_matrix(*inv))
        throw input_error("quotient_group: Z^n is not a sublattice of Lambda");
    IntMatrix coords = to_integer(*inv);
    auto snf = smith_normal_form(coords);
    std::vector<Int> factors;
    for (std::size_t i = 0; i < coords.rows(); ++i)
        if (snf.d(i, i) > 1) factors.push_back(snf.d(i, i));
    AbelianGroup g(std::move(factors));
    if (Rat(g.order()) * lattice.det != 1)
        throw check_error("quotient_group: order does not match 1/det(Lambda)");
    return g;
}

// diam(G) = sum s_i - 1 for nontrivial G (invariant-factor formula).
inline Int diam_formula(const AbelianGroup& g) {
    if (g.trivial()) return Int(0);
    Int s(0);
    for (const auto& f : g.invariant_factors) s += f;
    return s - 1;
}

namespace detail {

struct SmallGroup {
    std::vector<int> factors;
    int order;
    std::vector<std::vector<int>> add; // addition table

    explicit SmallGroup(const AbelianGroup& g, int max_order) {
        Int o = g.order();
        if (o > max_order) throw input_error("group order exceeds the exhaustive-search limit");
        order = static_cast<int>(o.convert_to<long long>());
        for (const auto& f : g.invariant_factors)
            factors.push_back(static_cast<int>(f.convert_to<long long>()));
        add.assign(order, std::vector<int>(order));
        for (int x = 0; x < order; ++x)
            for (int y = 0; y < order; ++y) add[x][y] = combine(x, y);
    }

    int combine(int x, int y) const {
        int out = 0, radix = 1;
        for (int f : factors) {
            int xc = x % f, yc = y % f;
            out += ((xc + yc) % f) * radix;
            x /= f;
            y /= f;
            radix *= f;
        }
        return out;
    }

    int element_index(const std::vector<Int>& coords) const {
        if (coords.size() != factors.size()) throw input_error("group element has wrong length");
        int out = 0, radix = 1;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            Int c = coords[i] % factors[i];
            if (c < 0) c += factors[i];
            out += static_cast<int>(c.convert_to<long long>()) * radix;
            radix *= factors[i];
        }
        return out;
    }
};

// Max distance from 0 in the Cayley digraph of H, or -1 if H does not
// generate. Distance 0 reaches the identity via the empty sum.
inline int bfs_eccentricity(const SmallGroup& g, const std::vector<int>& h) {
    std::vector<int> dist(g.order, -1);
    dist[0] = 0;
    std::vector<int> frontier{0};
    int reached = 1, depth = 0;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int step : h) {
                int y = g.add[x][step];
                if (dist[y] < 0) {
                    dist[y] = depth + 1;
                    next.push_back(y);
                    ++reached;
                }
            }
        frontier = std::move(next);
        ++depth;
    }
    if (reached != g.order) return -1;
    return *std::max_element(dist.begin(), dist.end());
}

} // namespace detail

// Definitional diameter: max over generating subsets H of G of the longest
// sum needed, exhaustively over all 2^|G| subsets.
inline Int diam_bfs(const AbelianGroup& g, int order_limit = 16) {
    if (g.trivial()) return Int(0);
    detail::SmallGroup sg(g, order_limit);
    int best = 0;
    const std::uint32_t total = 1u << sg.order;
    for (std::uint32_t mask = 1; mask < total; ++mask) {
        std::vector<int> h;
        for (int e = 0; e < sg.order; ++e)
            if (mask & (1u << e)) h.push_back(e);
        int ecc = detail::bfs_eccentricity(sg, h);
        if (ecc > best) best = ecc;
    }
    return Int(best);
}

// Diameter with respect to a fixed generating set (elements as coordinate
// vectors in the invariant decomposition).
inline Int diam_with_generators(const AbelianGroup& g, const std::vector<std::vector<Int>>& gens,
                                int order_limit = 512) {
    if (g.trivial()) return Int(0);
    detail::SmallGroup sg(g, order_limit);
    std::vector<int> h;
    for (const auto& e : gens) h.push_back(sg.element_index(e));
    int ecc = detail::bfs_eccentricity(sg, h);
    if (ecc < 0) throw input_error("the given set does not generate the group");
    return Int(ecc);
}

// Exact formula for cyclic groups:
// phi_j(Z/delta) = max over divisors d >= j+1 of (delta/d) * (floor((d-2)/(j-1)) + 1).
inline Int phi_j(const Int& delta, const Int& j) {
    if (delta < 3) throw input_error("phi_j requires delta >= 3");
    if (j < 2 || j > delta - 1) throw input_error("phi_j requires 2 <= j <= delta - 1");
    Int best(0);
    for (Int d(1); d * d <= delta; ++d) {
        if (delta % d != 0) continue;
        for (const Int& div : {d, Int(delta / d)}) {
            if (div < j + 1) continue;
            Int val = (delta / div) * (floor_div(div - 2, j - 1) + 1);
            if (val > best) best = val;
        }
    }
    return best;
}

// Exhaustive counterpart on Z/delta: the largest generating set (the
// identity may be a member) that still needs at least j sums.
inline Int phi_j_bruteforce(const Int& delta, const Int& j, int limit = 12) {
    if (delta < 3) throw input_error("phi_j_bruteforce requires delta >= 3");
    if (delta > limit) throw input_error("delta exceeds the exhaustive-search limit");
    if (j < 2 || j > delta - 1) throw input_error("phi_j_bruteforce requires 2 <= j <= delta - 1");
    AbelianGroup g({delta});
    detail::SmallGroup sg(g, limit);
    int jj = static_cast<int>(j.convert_to<long long>());
    int best = 0;
    const std::uint32_t total = 1u << sg.order;
    for (std::uint32_t mask = 1; mask < total; ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        std::vector<int> h;
        for (int e = 0; e < sg.order; ++e)
            if (mask & (1u << e)) h.push_back(e);
        int ecc = detail::bfs_eccentricity(sg, h);
        if (ecc >= jj) best = size;
    }
    return Int(best);
}

// floor(delta / 2^{N-1} + N - 2), valid when delta admits N factors >= 2.
inline Int diam_upper_bound(const Int& delta, const Int& n_factors) {
    if (n_factors < 1) throw input_error("diam_upper_bound requires N >= 1");
    Int pw(1);
    for (Int i(1); i < n_factors; ++i) pw *= 2;
    if (pw * 2 > delta) throw input_error("diam_upper_bound requires 2^N <= delta");
    return floor_div(delta + (n_factors - 2) * pw, pw);
}

} // namespace latcone
