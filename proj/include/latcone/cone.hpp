#pragma once

// Pointed rational cones C(A) = {x : Ax >= 0}. Extreme rays come from
// (n-1)-row kernels; each ray is stored primitive and with its largest
// admissible integral scaling: the maximum of gcd(A_I) over all
// (n-1)-subsets I of tight rows with rank n-1. Those scaled vectors are the
// normalized generators; they satisfy ||Ar||_inf <= Delta(A).

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "latcone/linalg.hpp"
#include "latcone/lp.hpp"
#include "latcone/matrix.hpp"

namespace latcone {

enum class GeneratorKind { primitive, normalized };

struct RayInfo {
    IntVec vector;
    std::vector<std::size_t> defining_rows; // lex-least (n-1)-subset realizing the scaling
    Int scale;                              // gcd(A_I); 1 for the primitive kind
};

struct GeneratorSet {
    GeneratorKind kind;
    std::vector<RayInfo> rays;

    std::vector<IntVec> vectors() const {
        std::vector<IntVec> out;
        out.reserve(rays.size());
        for (const auto& r : rays) out.push_back(r.vector);
        return out;
    }
};

class Cone {
public:
    explicit Cone(IntMatrix a) : a_(std::move(a)), stats_{} {
        if (rank(a_) != a_.cols())
            throw input_error("cone matrix must have full column rank (pointed cone)");
        stats_ = minor_stats(a_);
        compute_rays();
    }

    const IntMatrix& matrix() const { return a_; }
    std::size_t dim() const { return a_.cols(); }
    std::size_t num_rows() const { return a_.rows(); }
    const Int& delta() const { return stats_.delta_max; }
    const MinorStats& stats() const { return stats_; }
    const GeneratorSet& primitive() const { return primitive_; }
    const GeneratorSet& normalized() const { return normalized_; }

    bool contains(const RatVec& x) const {
        for (std::size_t i = 0; i < a_.rows(); ++i)
            if (dot(a_.row(i), x) < 0) return false;
        return true;
    }

    bool is_simplicial() const { return a_.rows() == a_.cols(); }

    // H-polytope view of {x : Ax >= 0} intersected with nothing: rows -A <= 0.
    Polytope nonneg_polyhedron() const {
        IntMatrix neg(a_.rows(), a_.cols());
        for (std::size_t i = 0; i < a_.rows(); ++i)
            for (std::size_t j = 0; j < a_.cols(); ++j) neg(i, j) = -a_(i, j);
        return Polytope(neg, RatVec(a_.rows(), Rat(0)));
    }

private:
    void compute_rays() {
        const std::size_t m = a_.rows(), n = a_.cols();
        primitive_.kind = GeneratorKind::primitive;
        normalized_.kind = GeneratorKind::normalized;

        std::set<IntVec> seen;
        std::vector<IntVec> prim;
        if (n == 1) {
            // one ray: the sign all rows agree on
            int s = 0;
            bool ok = true;
            for (std::size_t i = 0; i < m && ok; ++i) {
                int si = sign(a_(i, 0));
                if (si == 0) continue;
                if (s == 0) s = si;
                else if (s != si) ok = false;
            }
            if (ok && s != 0) prim.push_back(IntVec{Int(s)});
        } else {
            for (const auto& rows : subsets_of_size(m, n - 1)) {
                IntMatrix sub = a_.select_rows(rows);
                IntVec k = kernel_vector(sub);
                if (is_zero_vec(k)) continue; // rank < n-1
                IntVec img = a_ * k;
                bool nonneg = true, nonpos = true;
                for (const auto& x : img) {
                    if (x < 0) nonneg = false;
                    if (x > 0) nonpos = false;
                }
                if (!nonneg && !nonpos) continue; // kernel line exits the cone
                if (nonpos) k = negated(k);       // orient so that Ak >= 0
                IntVec p = primitive_vector(k);
                if (seen.insert(p).second) prim.push_back(p);
            }
        }
        std::sort(prim.begin(), prim.end());

        for (const auto& p : prim) {
            IntVec img = a_ * p;
            std::vector<std::size_t> tight;
            for (std::size_t i = 0; i < m; ++i)
                if (img[i] == 0) tight.push_back(i);
            if (n >= 2 && rank(a_.select_rows(tight)) != n - 1)
                throw check_error("extreme ray candidate whose tight rows do not have rank n-1");

            // largest gcd(A_I) over (n-1)-subsets I of tight rows of rank n-1
            Int best(1);
            std::vector<std::size_t> best_rows;
            if (n == 1) {
                best_rows = {};
            } else {
                for (const auto& pick : subsets_of_size(tight.size(), n - 1)) {
                    std::vector<std::size_t> rows;
                    rows.reserve(n - 1);
                    for (auto t : pick) rows.push_back(tight[t]);
                    IntMatrix sub = a_.select_rows(rows);
                    IntVec k = kernel_vector(sub);
                    if (is_zero_vec(k)) continue;
                    Int g = vec_gcd(k); // equals gcd of the (n-1)x(n-1) minors of sub
                    if (best_rows.empty() || g > best) {
                        best = g;
                        best_rows = rows;
                    }
                }
                if (best_rows.empty()) throw check_error("no full-rank tight subset for an extreme ray");
            }

            primitive_.rays.push_back({p, best_rows, Int(1)});
            IntVec scaled = vec_scaled(p, best);
            for (const auto& e : a_ * scaled)
                if (abs(e) > stats_.delta_max)
                    throw check_error("normalized generator violates ||Ar||_inf <= Delta(A)");
            normalized_.rays.push_back({scaled, best_rows, best});
        }
    }

    IntMatrix a_;
    MinorStats stats_;
    GeneratorSet primitive_;
    GeneratorSet normalized_;
};

inline const GeneratorSet& extreme_rays(const Cone& c) { return c.primitive(); }
inline const GeneratorSet& normalized_generators(const Cone& c) { return c.normalized(); }

enum class DualPosition { interior, boundary, outside };

// Classifies -a against the dual cone C(A)*: it is enough to evaluate the
// extreme rays since they span C(A).
inline DualPosition dual_position(const Cone& c, const IntVec& a) {
    if (a.size() != c.dim()) throw input_error("dual_position: dimension mismatch");
    bool tight = false;
    for (const auto& ray : c.primitive().rays) {
        Int v = -dot(a, ray.vector);
        if (v < 0) return DualPosition::outside;
        if (v == 0) tight = true;
    }
    return tight ? DualPosition::boundary : DualPosition::interior;
}

struct TransformedCone {
    Cone cone;                    // C(AB)
    std::vector<IntVec> mapped;   // |det B| B^{-1} R(A), lex-sorted
};

// R(AB) = |det B| B^{-1} R(A) for invertible integral B; verified on return.
inline TransformedCone transform_cone(const Cone& c, const IntMatrix& b) {
    if (b.rows() != c.dim() || b.cols() != c.dim()) throw input_error("transform_cone: B must be n x n");
    Int det = determinant(b);
    if (det == 0) throw input_error("transform_cone: B must be invertible");
    IntMatrix scaled_inverse = adjugate(b); // det(B) * B^{-1}
    if (det < 0)
        for (std::size_t i = 0; i < scaled_inverse.rows(); ++i)
            for (std::size_t j = 0; j < scaled_inverse.cols(); ++j)
                scaled_inverse(i, j) = -scaled_inverse(i, j);

    std::vector<IntVec> mapped;
    for (const auto& ray : c.normalized().rays) mapped.push_back(scaled_inverse * ray.vector);
    std::sort(mapped.begin(), mapped.end());

    Cone image(c.matrix() * b);
    std::vector<IntVec> direct = image.normalized().vectors();
    std::sort(direct.begin(), direct.end());
    if (mapped != direct)
        throw check_error("transformation law R(AB) = |det B| B^{-1} R(A) failed");
    return {std::move(image), std::move(mapped)};
}

namespace detail {

// Faces of a pointed cone, each identified by the set of extreme rays it
// contains; obtained by intersecting tight-row sets.
inline std::vector<std::vector<std::size_t>> face_ray_sets(const IntMatrix& a,
                                                           const std::vector<IntVec>& rays) {
    const std::size_t m = a.rows();
    // tight rays per row
    std::vector<std::vector<bool>> tight(m, std::vector<bool>(rays.size()));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < rays.size(); ++k) tight[i][k] = dot(a.row(i), rays[k]) == 0;

    std::set<std::vector<std::size_t>> found;
    std::vector<std::size_t> all(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) all[k] = k;
    found.insert(all);

    // closure under intersection with row-tight sets reaches every face
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<std::size_t>> snapshot(found.begin(), found.end());
        for (const auto& f : snapshot)
            for (std::size_t i = 0; i < m; ++i) {
                std::vector<std::size_t> g;
                for (auto k : f)
                    if (tight[i][k]) g.push_back(k);
                if (!g.empty() && found.insert(g).second) grew = true;
            }
    }
    return {found.begin(), found.end()};
}

} // namespace detail

// Placing (pulling) triangulation over the extreme rays in lex order:
// simplicial pieces, union is C, interiors pairwise disjoint.
inline std::vector<Cone> triangulate(const Cone& c) {
    const std::size_t n = c.dim();
    std::vector<IntVec> rays = c.primitive().vectors(); // lex-sorted already
    if (rays.size() < n) throw input_error("triangulate requires a full-dimensional cone");

    auto cone_from_rays = [&](const std::vector<std::size_t>& pick) {
        IntMatrix g(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) g(i, j) = rays[pick[j]][i];
        Int det = determinant(g);
        if (det == 0) throw check_error("triangulation produced a degenerate piece");
        IntMatrix h = adjugate(g); // rows h_i with h x >= 0 iff x in cone(g), up to sign
        if (det < 0)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) h(i, j) = -h(i, j);
        return Cone(h);
    };

    if (rays.size() == n) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        return {cone_from_rays(all)};
    }

    auto faces = detail::face_ray_sets(c.matrix(), rays);
    auto face_dim = [&](const std::vector<std::size_t>& f) {
        IntMatrix g(f.size(), n);
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) = rays[f[i]][j];
        return rank(g);
    };
    std::map<std::vector<std::size_t>, std::size_t> dim_of;
    for (const auto& f : faces) dim_of[f] = face_dim(f);

    // pull(F): cone the lex-least ray of F over the triangulated facets of F
    // that avoid it
    std::map<std::vector<std::size_t>, std::vector<std::vector<std::size_t>>> memo;
    auto pull = [&](auto&& self, const std::vector<std::size_t>& f) -> std::vector<std::vector<std::size_t>> {
        auto it = memo.find(f);
        if (it != memo.end()) return it->second;
        std::size_t d = dim_of.at(f);
        std::vector<std::vector<std::size_t>> result;
        if (f.size() == d) {
            result = {f};
        } else {
            std::size_t v = f.front(); // rays are lex-sorted, so index order is lex order
            for (const auto& g : faces) {
                if (dim_of.at(g) != d - 1) continue;
                if (!std::includes(f.begin(), f.end(), g.begin(), g.end())) continue;
                if (std::binary_search(g.begin(), g.end(), v)) continue;
                for (auto piece : self(self, g)) {
                    piece.insert(std::lower_bound(piece.begin(), piece.end(), v), v);
                    result.push_back(std::move(piece));
                }
            }
        }
        memo[f] = result;
        return result;
    };

    std::vector<std::size_t> top(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) top[i] = i;
    std::vector<Cone> out;
    for (const auto& piece : pull(pull, top)) out.push_back(cone_from_rays(piece));
    return out;
}

} // namespace latcone
