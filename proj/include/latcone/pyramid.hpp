#pragma once

// Pyramids: a translated cone v - C(A) truncated by a^T x <= b_a with -a in
// the dual cone. The bound report ties the facet width in direction a to the
// height of the Hilbert basis of C(AB) and the diameter of Lambda / Z^n.
// The diameter enters via the definitional (breadth-first) value whenever
// the group is small enough; the invariant-factor formula is a flagged
// fallback, since the two are known to disagree on non-cyclic groups.

#include <optional>
#include <vector>

#include "latcone/cone.hpp"
#include "latcone/group.hpp"
#include "latcone/hilbert.hpp"
#include "latcone/widths.hpp"

namespace latcone {

struct not_lattice_free_error : input_error {
    IntVec witness;
    explicit not_lattice_free_error(IntVec w)
        : input_error("pyramid is not lattice-free"), witness(std::move(w)) {}
};

struct Pyramid {
    IntMatrix a;      // m x n, full column rank
    IntVec facet;     // the direction a
    IntVec rhs;       // b, integral
    Int facet_rhs;    // b_a, integral
    RatVec apex;      // unique solution of A v = b
    DualPosition dual_pos; // position of -facet in C(A)*

    Polytope polytope() const {
        IntMatrix rows(a.rows() + 1, a.cols());
        RatVec b(a.rows() + 1);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            rows.set_row(i, a.row(i));
            b[i] = Rat(rhs[i]);
        }
        rows.set_row(a.rows(), facet);
        b[a.rows()] = Rat(facet_rhs);
        return Polytope(rows, b);
    }

    IntMatrix stacked() const {
        IntMatrix rows(a.rows() + 1, a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) rows.set_row(i, a.row(i));
        rows.set_row(a.rows(), facet);
        return rows;
    }

    bool is_simplex() const { return a.rows() == a.cols(); }
};

inline Pyramid build_pyramid(const IntMatrix& a, const IntVec& facet, const IntVec& b,
                             const Int& facet_rhs) {
    if (rank(a) != a.cols()) throw input_error("pyramid: A must have full column rank");
    if (facet.size() != a.cols()) throw input_error("pyramid: facet direction dimension mismatch");
    if (b.size() != a.rows()) throw input_error("pyramid: right-hand side length mismatch");
    auto apex = solve_full_rank(a, to_rational(b));
    if (!apex) throw input_error("pyramid: A v = b has no solution");
    Cone cone(a);
    DualPosition pos = dual_position(cone, facet);
    if (pos == DualPosition::outside)
        throw input_error("pyramid: -a is outside the dual cone");
    // Equality is admitted: the truncation then degenerates to the apex
    // alone, which is how the flat delta = 2 members of the diagonal family
    // arise.
    Rat value_at_apex = dot(facet, *apex);
    if (Rat(facet_rhs) < value_at_apex) throw input_error("pyramid: b_a not above apex");
    Pyramid p{a, facet, b, facet_rhs, *apex, pos};
    if (pos == DualPosition::interior && !is_bounded(p.polytope()))
        throw check_error("pyramid with interior -a must be bounded");
    return p;
}

// Facet width in the truncation direction; finite even when -a lies on the
// boundary of the dual cone and the pyramid is unbounded.
inline Rat pyramid_facet_width(const Pyramid& p) { return width_in_direction(p.polytope(), p.facet); }

enum class DiamSource { bfs, formula };

struct BoundReport {
    Rat w_a;                 // exact facet width in direction a
    Rat bound_group;         // (Delta/gcd(A)) * height * diam - 1
    Int bound_delta;         // Delta - 2
    bool tight;              // the group bound is attained; only claimed for cyclic groups
    DiamSource diam_source;  // where the diameter value came from
    // supporting values
    AbelianGroup group;
    Int diam;
    Rat hilbert_height;      // max height over the Hilbert basis of C(AB)
    Int delta;               // Delta of (A; a^T)
    Int gcd_a;               // gcd(A)
    bool group_bound_ok;     // w_a <= bound_group
};

inline BoundReport pyramid_bound_report(const Pyramid& p, int bfs_order_limit = 16) {
    if (p.dual_pos != DualPosition::interior)
        throw input_error("bound report requires a bounded pyramid (-a interior to the dual)");
    auto lf = is_lattice_free(p.polytope());
    if (!lf.lattice_free) throw not_lattice_free_error(*lf.witness);

    Rat w_a = pyramid_facet_width(p);

    auto lattice = rhs_lattice(p.a);
    AbelianGroup group = quotient_group(lattice);
    DiamSource source = DiamSource::bfs;
    Int diam;
    if (group.order() <= bfs_order_limit) {
        diam = diam_bfs(group, bfs_order_limit);
    } else {
        diam = diam_formula(group);
        source = DiamSource::formula;
    }

    RatMatrix ab = to_rational(p.a) * lattice.basis;
    if (!is_integral_matrix(ab)) throw check_error("A * basis(Lambda) must be integral");
    Cone mapped(to_integer(ab));
    Rat hilbert_height(0);
    for (const auto& h : hilbert_basis_zn(mapped)) {
        Rat v = height(mapped, h.vector, normalized_generators(mapped)).value;
        if (v > hilbert_height) hilbert_height = v;
    }

    Int delta = minor_stats(p.stacked()).delta_max;
    Int g = minor_stats(p.a).gcd_minors;
    Rat bound_group = make_rat(delta, g) * hilbert_height * Rat(diam) - 1;
    bool ok = w_a <= bound_group;
    if (source == DiamSource::bfs && !ok)
        throw check_error("facet width exceeded the group bound on a lattice-free pyramid");

    bool tight = group.cyclic() && w_a == bound_group;
    return {w_a,  bound_group, Int(delta - 2), tight, source, group, diam,
            hilbert_height, delta, g, ok};
}

// The tight family: A = diag(s_1..s_N), a = -(s_1..s_N), b = -1, and the
// truncation at sum(s_i) - 1. Lattice-free with gcd(A) = prod s_i = Delta.
inline Pyramid generate_sg(const std::vector<Int>& factors) {
    AbelianGroup validated(factors); // checks the divisibility chain
    const std::size_t n = factors.size();
    if (n == 0) throw input_error("generate_sg needs at least one factor");
    IntMatrix a(n, n);
    IntVec dir(n), b(n, Int(-1));
    Int sum(0);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = factors[i];
        dir[i] = -factors[i];
        sum += factors[i];
    }
    Pyramid p = build_pyramid(a, dir, b, sum - 1);
    auto lf = is_lattice_free(p.polytope());
    if (!lf.lattice_free) throw check_error("the diagonal family must be lattice-free");
    Int g = minor_stats(p.a).gcd_minors;
    Int delta = minor_stats(p.stacked()).delta_max;
    if (g != validated.order() || delta != g)
        throw check_error("the diagonal family must satisfy gcd(A) = prod s_i = Delta");
    return p;
}

// For a simplex with cyclic quotient whose Hilbert elements fall into at
// most two cosets (at most one of them non-trivial), the sum of the rows
// indexed by the non-trivial coset, divided by |det A|, is an integral flat
// direction. Returns nullopt when the coset structure does not apply.
inline std::optional<IntVec> simplex_flat_direction(const Pyramid& p) {
    if (!p.is_simplex()) throw input_error("simplex_flat_direction requires a simplex");
    const std::size_t n = p.a.cols();
    Int det = determinant(p.a);
    Int delta = abs(det);
    if (delta <= 1) return std::nullopt; // integral vertex; nothing to build

    auto lattice = rhs_lattice(p.a);
    AbelianGroup group = quotient_group(lattice);
    if (!group.cyclic()) return std::nullopt;

    auto inv = inverse(to_rational(p.a));
    if (!inv) throw input_error("simplex_flat_direction: singular matrix");

    // coset of column i of A^{-1} modulo Z^n; classes by pairwise difference
    std::vector<RatVec> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = inv->col(i);
    auto integral = [](const RatVec& v) {
        return std::all_of(v.begin(), v.end(), [](const Rat& x) { return is_integral(x); });
    };
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < n; ++i) {
        bool placed = false;
        for (auto& cls : classes)
            if (integral(vec_sub(cols[i], cols[cls.front()]))) {
                cls.push_back(i);
                placed = true;
                break;
            }
        if (!placed) classes.push_back({i});
    }
    if (classes.size() > 2) return std::nullopt;
    std::vector<std::size_t> nontrivial_rows;
    std::size_t nontrivial_classes = 0;
    for (const auto& cls : classes)
        if (!integral(cols[cls.front()])) {
            ++nontrivial_classes;
            nontrivial_rows = cls;
        }
    if (nontrivial_classes != 1) return std::nullopt;

    RatVec sum(n, Rat(0));
    for (auto i : nontrivial_rows) sum = vec_add(sum, to_rational(p.a.row(i)));
    IntVec d(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat scaled = sum[j] / Rat(delta);
        if (!is_integral(scaled))
            throw check_error("constructed flat direction is not integral");
        d[j] = numerator(scaled);
    }

    if (p.dual_pos == DualPosition::interior && is_lattice_free(p.polytope()).lattice_free) {
        Rat w = width_in_direction(p.polytope(), d);
        if (!(w < Rat(1) - make_rat(1, delta)))
            throw check_error("flat direction does not achieve width below 1 - 1/delta");
    }
    return d;
}

struct SimplexWidthReport {
    Rat facet_width;
    Int diam;          // definitional value of diam(Lambda / Z^n)
    Int delta;         // |det A|
    Rat search_width;  // radius-limited lattice width
    bool facet_bound_ok;   // w_F < diam <= delta - 1
    bool search_bound_ok;  // search width < floor(delta / 2)
    std::optional<IntVec> flat_direction;
    std::optional<Rat> flat_width; // width in that direction, < 1 - 1/delta
};

inline SimplexWidthReport simplex_width_check(const Pyramid& p, const Int& radius,
                                              int bfs_order_limit = 16) {
    if (!p.is_simplex()) throw input_error("simplex_width_check requires a simplex");
    Int delta = abs(determinant(p.a));
    if (delta == 1) {
        // one vertex is integral by Cramer's rule, so the simplex cannot be
        // lattice-free
        throw not_lattice_free_error(is_lattice_free(p.polytope()).witness.value_or(IntVec{}));
    }
    auto lf = is_lattice_free(p.polytope());
    if (!lf.lattice_free) throw not_lattice_free_error(*lf.witness);

    AbelianGroup group = quotient_group(rhs_lattice(p.a));
    Int diam = group.order() <= bfs_order_limit ? diam_bfs(group, bfs_order_limit)
                                                : diam_formula(group);
    Rat wf = facet_width(p.polytope()).width;
    Rat ws = lattice_width(p.polytope(), radius).width;

    SimplexWidthReport rep{wf,
                           diam,
                           delta,
                           ws,
                           wf < Rat(diam) && diam <= delta - 1,
                           ws < Rat(floor_div(delta, Int(2))),
                           std::nullopt,
                           std::nullopt};
    auto d = simplex_flat_direction(p);
    if (d) {
        rep.flat_direction = d;
        rep.flat_width = width_in_direction(p.polytope(), *d);
    }
    return rep;
}

enum class MinorPattern { prime_delta, half_delta_minors, unclassified };

struct MinorPatternReport {
    MinorPattern pattern;
    Int delta;            // Delta of (A; a^T)
    std::optional<Rat> w_a;       // present when the pyramid is bounded and lattice-free
    bool delta_bound_ok;          // w_a <= Delta - 2 whenever classified and checked
};

namespace detail {

inline bool is_prime(const Int& x) {
    if (x < 2) return false;
    for (Int d(2); d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

} // namespace detail

// Classifies the maximal minors of the cone block: prime Delta, or all
// minors within {0, +-Delta/2, +-Delta}; classified lattice-free instances
// must respect the Delta - 2 facet-width bound.
inline MinorPatternReport minor_pattern_classify(const Pyramid& p) {
    auto block = minor_stats(p.a);
    Int delta_block = block.delta_max;

    MinorPattern pattern = MinorPattern::unclassified;
    if (detail::is_prime(delta_block)) {
        pattern = MinorPattern::prime_delta;
    } else if (delta_block > 0 && delta_block % 2 == 0) {
        bool within = true;
        Int half = delta_block / 2;
        for (const auto& rows : subsets_of_size(p.a.rows(), p.a.cols())) {
            Int d = abs(determinant(p.a.select_rows(rows)));
            if (d != 0 && d != half && d != delta_block) { within = false; break; }
        }
        if (within) pattern = MinorPattern::half_delta_minors;
    }

    Int delta = minor_stats(p.stacked()).delta_max;
    MinorPatternReport rep{pattern, delta, std::nullopt, true};
    if (p.dual_pos == DualPosition::interior && is_lattice_free(p.polytope()).lattice_free) {
        rep.w_a = pyramid_facet_width(p);
        if (pattern != MinorPattern::unclassified) {
            rep.delta_bound_ok = *rep.w_a <= Rat(delta - 2);
            if (!rep.delta_bound_ok)
                throw check_error("classified lattice-free pyramid exceeded the Delta - 2 bound");
        }
    }
    return rep;
}

} // namespace latcone
