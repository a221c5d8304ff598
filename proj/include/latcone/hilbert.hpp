#pragma once

// Hilbert bases of pointed cones with respect to Z^n or a rational lattice
// given by a basis matrix. Irreducibility of h is the spindle property:
// S(h) = {x : 0 <= Ax <= Ah} meets the lattice only in {0, h}. The basis is
// computed by triangulating, enumerating each simplicial piece's half-open
// fundamental parallelepiped and filtering candidates through that test.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "latcone/cone.hpp"
#include "latcone/lp.hpp"

namespace latcone {

struct Spindle {
    Polytope poly; // rows (A; -A), right-hand side (Ay; 0)
    RatVec y;
};

inline Spindle spindle(const Cone& c, const RatVec& y) {
    if (y.size() != c.dim()) throw input_error("spindle: dimension mismatch");
    const IntMatrix& a = c.matrix();
    RatVec ay(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        ay[i] = dot(a.row(i), y);
        if (ay[i] < 0) throw input_error("spindle: y is not in the cone");
    }
    IntMatrix rows(2 * a.rows(), a.cols());
    RatVec rhs(2 * a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            rows(i, j) = a(i, j);
            rows(a.rows() + i, j) = -a(i, j);
        }
        rhs[i] = ay[i];
        rhs[a.rows() + i] = Rat(0);
    }
    return {Polytope(std::move(rows), std::move(rhs)), y};
}

struct HilbertElement {
    RatVec vector;        // lattice member, integral when the lattice is Z^n
    bool trivial;         // lies on an extreme ray
    std::size_t face_dim; // dimension of the face containing it in its relative interior
};

namespace detail {

// Spindle test in lattice coordinates: y in C' cap Z^n is irreducible iff
// {z : 0 <= A'z <= A'y} cap Z^n == {0, y}. Both 0 and y always belong, so it
// suffices to stop the enumeration as soon as a third point turns up.
inline bool spindle_test_zn(const IntMatrix& a, const IntVec& y) {
    const std::size_t m = a.rows(), n = a.cols();
    IntMatrix rows(2 * m, n);
    RatVec rhs(2 * m);
    IntVec ay = a * y;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            rows(i, j) = a(i, j);
            rows(m + i, j) = -a(i, j);
        }
        rhs[i] = Rat(ay[i]);
        rhs[m + i] = Rat(0);
    }
    auto pts = integer_points_up_to(Polytope(std::move(rows), std::move(rhs)), 3);
    return pts.size() <= 2;
}

struct LatticeView {
    RatMatrix basis;       // columns span the lattice
    RatMatrix basis_inv;   // exact inverse
    IntMatrix cone_matrix; // integral matrix with C(cone_matrix) = B^{-1} C(A)
};

inline LatticeView make_lattice_view(const Cone& c, const RatMatrix& basis) {
    if (basis.rows() != c.dim() || basis.cols() != c.dim())
        throw input_error("lattice basis must be n x n");
    auto inv = inverse(basis);
    if (!inv) throw input_error("lattice basis must be invertible");
    RatMatrix ab = to_rational(c.matrix()) * basis;
    auto [scaled, ignored_rhs] = scale_rows_to_integer(ab, RatVec(ab.rows(), Rat(0)));
    (void)ignored_rhs;
    return {basis, *inv, std::move(scaled)};
}

// Coordinates of h in the lattice basis; error when h is outside the lattice.
inline IntVec lattice_coordinates(const LatticeView& view, const RatVec& h) {
    RatVec y = view.basis_inv * h;
    IntVec out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!is_integral(y[i])) throw input_error("vector is not a member of the lattice");
        out[i] = numerator(y[i]);
    }
    return out;
}

} // namespace detail

// Irreducibility of h in C with respect to the lattice spanned by the basis
// columns (the identity basis gives Z^n).
inline bool is_hilbert_element(const Cone& c, const RatVec& h, const RatMatrix& lattice_basis) {
    if (h.size() != c.dim()) throw input_error("is_hilbert_element: dimension mismatch");
    if (!c.contains(h)) throw input_error("is_hilbert_element: h is not in the cone");
    if (std::all_of(h.begin(), h.end(), [](const Rat& x) { return x == 0; }))
        throw input_error("is_hilbert_element: h must be nonzero");
    auto view = detail::make_lattice_view(c, lattice_basis);
    IntVec y = detail::lattice_coordinates(view, h);
    return detail::spindle_test_zn(view.cone_matrix, y);
}

inline bool is_hilbert_element_zn(const Cone& c, const IntVec& h) {
    return is_hilbert_element(c, to_rational(h), RatMatrix::identity(c.dim()));
}

namespace detail {

inline std::size_t face_dimension(const Cone& c, const RatVec& h) {
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < c.num_rows(); ++i)
        if (dot(c.matrix().row(i), h) == 0) tight.push_back(i);
    if (tight.empty()) return c.dim();
    return c.dim() - rank(c.matrix().select_rows(tight));
}

// Integer points of the half-open fundamental parallelepiped
// {G mu : 0 <= mu_i < 1} of a simplicial cone with ray matrix G. Each coset
// of Z^n / G Z^n meets the parallelepiped exactly once, at
// z - G floor(G^{-1} z); coset representatives come from the Smith normal
// form. This yields all |det G| points with no search.
inline std::vector<IntVec> parallelepiped_points(const IntMatrix& g) {
    const std::size_t n = g.rows();
    Int det = determinant(g);
    if (det == 0) throw check_error("simplicial piece with singular ray matrix");
    auto ginv = inverse(to_rational(g));
    auto snf = smith_normal_form(g); // u g v = d, so G Z^n = u^{-1} d Z^n
    auto uinv = inverse(to_rational(snf.u));
    if (!ginv || !uinv) throw check_error("singular matrix inside parallelepiped enumeration");

    std::vector<IntVec> out;
    IntVec counter(n, Int(0));
    while (true) {
        RatVec rep = *uinv * to_rational(counter);
        RatVec mu = *ginv * rep;
        for (auto& x : mu) x -= Rat(rat_floor(x)); // fractional part in [0, 1)
        RatVec point = to_rational(g) * mu;
        IntVec p(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_integral(point[i]))
                throw check_error("parallelepiped representative is not integral");
            p[i] = numerator(point[i]);
        }
        out.push_back(std::move(p));

        std::size_t j = n;
        bool done = false;
        while (j > 0) {
            --j;
            if (counter[j] + 1 < snf.d(j, j)) {
                ++counter[j];
                for (std::size_t k = j + 1; k < n; ++k) counter[k] = 0;
                break;
            }
            if (j == 0) done = true;
        }
        if (done) break;
    }
    return out;
}

// Parallelepiped points over a placing triangulation plus the primitive ray
// generators; a complete superset of the Hilbert basis of a full-dimensional
// pointed cone.
inline std::set<IntVec> candidate_points_full_dim(const Cone& c) {
    std::set<IntVec> candidates;
    for (const auto& piece : triangulate(c)) {
        auto rays = piece.primitive().vectors();
        IntMatrix g(c.dim(), c.dim());
        for (std::size_t j = 0; j < rays.size(); ++j)
            for (std::size_t i = 0; i < c.dim(); ++i) g(i, j) = rays[j][i];
        for (auto& p : parallelepiped_points(g))
            if (!is_zero_vec(p)) candidates.insert(std::move(p));
    }
    for (const auto& r : c.primitive().rays) candidates.insert(r.vector);
    return candidates;
}

} // namespace detail

// Complete Hilbert basis of C with respect to the lattice spanned by the
// basis columns, lex-sorted by the member vectors. A cone that is not
// full-dimensional is carried into its span by a unimodular change of
// coordinates first; that keeps Z^n membership and sums intact.
inline std::vector<HilbertElement> hilbert_basis(const Cone& c, const RatMatrix& lattice_basis) {
    auto view = detail::make_lattice_view(c, lattice_basis);
    Cone mapped(view.cone_matrix);
    const std::size_t n = mapped.dim();

    std::set<IntVec> candidates;
    auto rays = mapped.primitive().vectors();
    if (!rays.empty()) {
        IntMatrix raymat(rays.size(), n);
        for (std::size_t i = 0; i < rays.size(); ++i) raymat.set_row(i, rays[i]);
        const std::size_t d = rank(raymat);
        if (d == n) {
            candidates = detail::candidate_points_full_dim(mapped);
        } else {
            // rows tight on every ray cut out the span of the cone
            std::vector<std::size_t> implicit;
            for (std::size_t i = 0; i < mapped.num_rows(); ++i) {
                bool tight = true;
                for (const auto& r : rays)
                    if (dot(mapped.matrix().row(i), r) != 0) { tight = false; break; }
                if (tight) implicit.push_back(i);
            }
            IntMatrix eq = mapped.matrix().select_rows(implicit);
            if (rank(eq) != n - d)
                throw check_error("hilbert_basis: span rows do not have the expected rank");
            auto hnf = hermite_normal_form(eq); // eq * u = (H, 0)
            IntMatrix in_new_coords = mapped.matrix() * hnf.u;
            std::vector<std::size_t> last(d);
            for (std::size_t j = 0; j < d; ++j) last[j] = n - d + j;
            Cone projected(in_new_coords.select_cols(last));
            for (const auto& y : detail::candidate_points_full_dim(projected)) {
                IntVec lifted(n, Int(0));
                for (std::size_t j = 0; j < d; ++j) lifted[n - d + j] = y[j];
                candidates.insert(hnf.u * lifted);
            }
        }
    }

    // Irreducibility by pairwise image dominance. The candidate set contains
    // every Hilbert element, so q is reducible exactly when some other
    // nonzero candidate p satisfies A p <= A q componentwise, which matches
    // the spindle criterion without enumerating each spindle.
    std::vector<IntVec> images;
    images.reserve(candidates.size());
    std::vector<IntVec> cand(candidates.begin(), candidates.end());
    for (const auto& y : cand) images.push_back(view.cone_matrix * y);
    std::vector<HilbertElement> out;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool reducible = false;
        for (std::size_t j = 0; j < cand.size() && !reducible; ++j) {
            if (j == i) continue;
            bool dominated = true;
            for (std::size_t r = 0; r < images[i].size(); ++r)
                if (images[j][r] > images[i][r]) { dominated = false; break; }
            if (dominated) reducible = true;
        }
        if (reducible) continue;
        RatVec h = view.basis * to_rational(cand[i]);
        out.push_back({h, false, 0});
    }
    std::sort(out.begin(), out.end(),
              [](const HilbertElement& a, const HilbertElement& b) { return a.vector < b.vector; });
    for (auto& e : out) {
        e.face_dim = detail::face_dimension(c, e.vector);
        e.trivial = (e.face_dim == 1);
    }
    return out;
}

inline std::vector<HilbertElement> hilbert_basis_zn(const Cone& c) {
    return hilbert_basis(c, RatMatrix::identity(c.dim()));
}

struct HeightResult {
    Rat value;     // minimal coefficient sum
    RatVec lambda; // optimal coefficients over the generators, in input order
};

// Exact LP: minimize sum(lambda) subject to sum lambda_r r = h, lambda >= 0.
inline HeightResult height(const Cone& c, const RatVec& h, const std::vector<IntVec>& generators) {
    if (h.size() != c.dim()) throw input_error("height: dimension mismatch");
    if (generators.empty()) throw input_error("height: no generators supplied");
    const std::size_t n = c.dim(), t = generators.size();
    // variables lambda in R^t with R lambda <= h, -R lambda <= -h, -lambda <= 0
    IntMatrix rows(2 * n + t, t);
    RatVec rhs(2 * n + t);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < t; ++j) {
            if (generators[j].size() != n) throw input_error("height: generator dimension mismatch");
            rows(i, j) = generators[j][i];
            rows(n + i, j) = -generators[j][i];
        }
        rhs[i] = h[i];
        rhs[n + i] = -h[i];
    }
    for (std::size_t j = 0; j < t; ++j) {
        rows(2 * n + j, j) = Int(-1);
        rhs[2 * n + j] = Rat(0);
    }
    auto out = optimize(Polytope(std::move(rows), std::move(rhs)), RatVec(t, Rat(1)), LpSense::min);
    if (out.status != LpStatus::optimal)
        throw check_error("height: h is not a nonnegative combination of the generators");
    return {out.value, out.point};
}

inline HeightResult height(const Cone& c, const RatVec& h, const GeneratorSet& generators) {
    return height(c, h, generators.vectors());
}

} // namespace latcone
