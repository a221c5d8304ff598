#pragma once

// Lattice width, directional width and facet width of bounded rational
// polytopes. Directional widths are two exact LPs; the lattice width search
// is exhaustive within a sup-norm radius and says so in its report, since no
// a-priori bound on the optimal direction is available.

#include <optional>
#include <vector>

#include "latcone/linalg.hpp"
#include "latcone/lp.hpp"

namespace latcone {

enum class WidthMode { facet, directional, lattice_radius };

struct WidthReport {
    Rat width;
    IntVec direction;
    WidthMode mode;
    bool exhaustive; // false when only certified within the search radius
    Int radius;      // meaningful for lattice_radius reports
};

// max z.x - min z.x over P, both by exact LP.
inline Rat width_in_direction(const Polytope& p, const IntVec& z) {
    if (z.size() != p.dim()) throw input_error("width_in_direction: dimension mismatch");
    if (is_zero_vec(z)) throw input_error("width_in_direction: direction must be nonzero");
    RatVec c = to_rational(z);
    auto mx = optimize(p, c, LpSense::max);
    auto mn = optimize(p, c, LpSense::min);
    if (mx.status == LpStatus::infeasible) throw input_error("width of an empty polytope");
    if (mx.status != LpStatus::optimal || mn.status != LpStatus::optimal)
        throw input_error("width_in_direction: polytope is unbounded in this direction");
    return mx.value - mn.value;
}

// Row i defines a facet iff the face {x in P : A_i x = b_i} is nonempty and
// its implicit equality system has rank exactly one.
inline std::vector<std::size_t> facet_defining_rows(const Polytope& p) {
    const std::size_t m = p.a.rows(), n = p.dim();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m; ++i) {
        IntMatrix rows(m + 1, n);
        RatVec rhs(m + 1);
        for (std::size_t r = 0; r < m; ++r) {
            rows.set_row(r, p.a.row(r));
            rhs[r] = p.b[r];
        }
        rows.set_row(m, negated(p.a.row(i)));
        rhs[m] = -p.b[i];
        Polytope face(rows, rhs);
        if (is_empty(face)) continue;

        std::vector<std::size_t> implicit;
        for (std::size_t j = 0; j < m; ++j) {
            auto low = optimize(face, to_rational(p.a.row(j)), LpSense::min);
            if (low.status != LpStatus::optimal)
                throw input_error("facet_defining_rows requires a bounded polytope");
            if (low.value == p.b[j]) implicit.push_back(j);
        }
        if (rank(p.a.select_rows(implicit)) == 1) out.push_back(i);
    }
    return out;
}

// Minimum directional width over the facet-defining rows, taken as given
// (facet normals are not rescaled; the row scaling is part of the quantity).
inline WidthReport facet_width(const Polytope& p) {
    auto rows = facet_defining_rows(p);
    if (rows.empty()) throw input_error("facet_width: no facet-defining rows");
    std::optional<Rat> best;
    IntVec bestdir;
    for (auto i : rows) {
        IntVec z = p.a.row(i);
        Rat w = width_in_direction(p, z);
        if (!best || w < *best) {
            best = w;
            bestdir = z;
        }
    }
    return {*best, bestdir, WidthMode::facet, true, Int(0)};
}

namespace detail {

// Canonical direction representatives with sup-norm <= radius: one per
// antipodal pair (first nonzero entry positive), lexicographically ordered.
inline std::vector<IntVec> directions_in_radius(std::size_t n, const Int& radius) {
    std::vector<IntVec> out;
    IntVec cur(n, -radius);
    while (true) {
        int lead = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (cur[i] != 0) {
                lead = sign(cur[i]);
                break;
            }
        }
        if (lead > 0) out.push_back(cur);
        std::size_t j = n;
        bool done = false;
        while (j > 0) {
            --j;
            if (cur[j] < radius) {
                ++cur[j];
                for (std::size_t k = j + 1; k < n; ++k) cur[k] = -radius;
                break;
            }
            if (j == 0) done = true;
        }
        if (done) break;
    }
    return out;
}

} // namespace detail

// Exhaustive search over all nonzero integer directions with sup-norm at
// most radius; antipodes deduplicated, ties broken toward the
// lexicographically smallest canonical representative. The result is an
// upper bound on the true lattice width, certified only within the radius.
inline WidthReport lattice_width(const Polytope& p, const Int& radius) {
    if (radius < 1) throw input_error("lattice_width: radius must be >= 1");
    std::optional<Rat> best;
    IntVec bestdir;
    for (const auto& z : detail::directions_in_radius(p.dim(), radius)) {
        Rat w = width_in_direction(p, z);
        if (!best || w < *best) {
            best = w;
            bestdir = z;
        }
    }
    if (!best) throw input_error("lattice_width: no directions searched");
    return {*best, bestdir, WidthMode::lattice_radius, false, radius};
}

struct WidthRelationReport {
    WidthReport lattice;      // radius-limited search result
    WidthReport facet;        // exact facet width
    Int delta;                // Delta of the constraint matrix
    bool chain_ok;            // w <= w_F <= Delta * w
    bool delta1_equality_ok;  // w == w_F whenever Delta == 1 (vacuously true otherwise)
    bool radius_stable;       // search at radius and radius+1 agree
    bool facets_in_radius;    // every facet normal lies inside the search radius
};

inline WidthRelationReport width_relation_report(const Polytope& p, const Int& radius) {
    WidthReport lat = lattice_width(p, radius);
    WidthReport lat_next = lattice_width(p, radius + 1);
    WidthReport fac = facet_width(p);
    Int delta = minor_stats(p.a).delta_max;

    bool facets_in_radius = true;
    for (auto i : facet_defining_rows(p))
        for (const auto& e : p.a.row(i))
            if (abs(e) > radius) facets_in_radius = false;

    bool chain = lat.width <= fac.width && fac.width <= Rat(delta) * lat.width;
    bool eq1 = (delta != 1) || lat.width == fac.width;
    return {lat, fac, delta, chain, eq1, lat.width == lat_next.width, facets_in_radius};
}

} // namespace latcone
