#pragma once

// Instance checkers around the height-one property of Hilbert bases with
// respect to normalized generators. Violations are never swallowed: a
// failed decomposition or an out-of-bound certificate throws check_error
// with the offending data, since it is either a bug or a counterexample.

#include <optional>
#include <string>
#include <vector>

#include "latcone/cone.hpp"
#include "latcone/hilbert.hpp"

namespace latcone {

struct ShcVerdict {
    bool holds;              // minimal coefficient sum <= 1
    HilbertElement element;
    RatVec coefficients;     // optimal lambda over the normalized generators
    Rat coefficient_sum;
    bool per_ray_upper_ok;   // lambda_i <= 1/gcd(r^i) - 1/||A r^i||_inf (non-trivial h)
    bool pair_lower_ok;      // lambda_i >= 1/||A r^i||_inf when the support has size two
};

namespace detail {

inline Rat image_sup_norm(const IntMatrix& a, const IntVec& r) {
    Int best(0);
    for (const auto& e : a * r)
        if (abs(e) > best) best = abs(e);
    return Rat(best);
}

} // namespace detail

inline ShcVerdict shc_check(const Cone& c, const HilbertElement& element) {
    const auto& gens = c.normalized().rays;
    auto res = height(c, element.vector, c.normalized());
    ShcVerdict v{res.value <= 1, element, res.lambda, res.value, true, true};

    std::size_t support = 0;
    for (const auto& l : res.lambda)
        if (l > 0) ++support;

    if (!element.trivial) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Rat norm = detail::image_sup_norm(c.matrix(), gens[i].vector);
            Rat cap = make_rat(1, vec_gcd(gens[i].vector)) - Rat(1) / norm;
            if (res.lambda[i] > cap) v.per_ray_upper_ok = false;
        }
    }
    if (support == 2) {
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (res.lambda[i] == 0) continue;
            Rat norm = detail::image_sup_norm(c.matrix(), gens[i].vector);
            if (res.lambda[i] < Rat(1) / norm) v.pair_lower_ok = false;
        }
    }
    return v;
}

// One verdict per Hilbert basis element with respect to Z^n.
inline std::vector<ShcVerdict> shc_check(const Cone& c) {
    std::vector<ShcVerdict> out;
    for (const auto& e : hilbert_basis_zn(c)) out.push_back(shc_check(c, e));
    return out;
}

// -a^T h <= Delta((A; a^T)) for a Hilbert element h and -a in the dual cone.
inline bool weak_hc_check(const Cone& c, const IntVec& a, const RatVec& h) {
    if (dual_position(c, a) == DualPosition::outside)
        throw input_error("weak_hc_check: -a is not in the dual cone");
    if (!c.contains(h)) throw input_error("weak_hc_check: h is not in the cone");
    IntMatrix stacked(c.num_rows() + 1, c.dim());
    for (std::size_t i = 0; i < c.num_rows(); ++i) stacked.set_row(i, c.matrix().row(i));
    stacked.set_row(c.num_rows(), a);
    Int delta = minor_stats(stacked).delta_max;
    Rat lhs(0);
    for (std::size_t j = 0; j < h.size(); ++j) lhs -= Rat(a[j]) * h[j];
    return lhs <= Rat(delta);
}

struct ScalingRefutation {
    Rat full_minimum;   // minimal coefficient sum over the given generators
    Rat halved_minimum; // same LP after the designated generator is halved
    bool ok;            // full <= 1 < halved
};

// Demonstrates that the maximal-gcd scaling is necessary: replacing one
// generator by its half pushes the minimal coefficient sum of the element
// above one.
inline ScalingRefutation scaled_generator_refutation(const Cone& c, const RatVec& element,
                                                     const std::vector<IntVec>& generators,
                                                     std::size_t which) {
    if (which >= generators.size()) throw input_error("generator index out of range");
    auto full = height(c, element, generators);
    auto halved = generators;
    for (auto& e : halved[which]) {
        if (e % 2 != 0) throw input_error("designated generator is not divisible by two");
        e /= 2;
    }
    auto reduced = height(c, element, halved);
    return {full.value, reduced.value, full.value <= 1 && reduced.value > 1};
}

struct BimodularPair {
    std::size_t i, j; // indices into the normalized generator list, i != j
};

// In a cone with Delta = 2 every non-trivial Hilbert element is the
// half-half sum of two distinct normalized generators; found by pair scan
// and checked against the per-ray coefficient bounds.
inline BimodularPair bimodular_decompose(const Cone& c, const HilbertElement& element) {
    if (c.delta() != 2) throw input_error("bimodular_decompose requires Delta = 2");
    if (element.trivial) throw input_error("bimodular_decompose requires a non-trivial element");
    RatVec doubled = vec_scaled(element.vector, Rat(2));
    const auto gens = c.normalized().vectors();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            RatVec sum(c.dim());
            for (std::size_t k = 0; k < c.dim(); ++k) sum[k] = Rat(gens[i][k] + gens[j][k]);
            if (sum != doubled) continue;
            for (std::size_t g : {i, j}) {
                Rat norm = detail::image_sup_norm(c.matrix(), gens[g]);
                Rat half = make_rat(1, 2);
                if (half > make_rat(1, vec_gcd(gens[g])) - Rat(1) / norm)
                    throw check_error("bimodular pair violates the per-ray upper bound");
                if (half < Rat(1) / norm)
                    throw check_error("bimodular pair violates the two-generator lower bound");
            }
            return {i, j};
        }
    throw check_error("non-trivial element of a bimodular cone admits no half-half pair");
}

struct SimplicialElementReport {
    HilbertElement element;
    Rat height_value;
    std::size_t support; // |supp(A h)|, the dimension of the containing face
};

struct SimplicialReport {
    std::vector<SimplicialElementReport> elements;
    bool all_heights_le_one;
    bool all_supports_le_delta;
};

// Simplicial cones: every Hilbert element has height <= 1 and lies in the
// interior of a face of dimension at most Delta.
inline SimplicialReport simplicial_check(const Cone& c) {
    if (!c.is_simplicial()) throw input_error("simplicial_check requires m = n");
    SimplicialReport rep{{}, true, true};
    for (const auto& e : hilbert_basis_zn(c)) {
        auto res = height(c, e.vector, c.normalized());
        std::size_t support = 0;
        for (std::size_t i = 0; i < c.num_rows(); ++i)
            if (dot(c.matrix().row(i), e.vector) != 0) ++support;
        rep.elements.push_back({e, res.value, support});
        if (res.value > 1) rep.all_heights_le_one = false;
        if (Int(static_cast<long long>(support)) > c.delta()) rep.all_supports_le_delta = false;
    }
    if (!rep.all_heights_le_one)
        throw check_error("simplicial cone with a Hilbert element above height one");
    if (!rep.all_supports_le_delta)
        throw check_error("simplicial cone element outside the Delta-dimensional face bound");
    return rep;
}

struct FaceReduction {
    Cone cone;     // the projected cone in the dimension of the face
    IntVec vector; // image of h
    Int scale;     // |det H| = gcd(A_I) of the chosen row set
    IntMatrix unimodular; // the change of coordinates used
    bool identity; // h was interior, nothing to do
};

// Carries an element on a proper face into a full-dimensional instance:
// choose tight rows I of maximal gcd (lex-least among maximizers), clear
// their columns by a Hermite step, drop the zero coordinates.
inline FaceReduction reduce_to_full_dim(const Cone& c, const IntVec& h) {
    const std::size_t n = c.dim();
    if (h.size() != n) throw input_error("reduce_to_full_dim: dimension mismatch");
    if (is_zero_vec(h)) throw input_error("reduce_to_full_dim: h must be nonzero");
    if (!c.contains(to_rational(h))) throw input_error("reduce_to_full_dim: h is not in the cone");

    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < c.num_rows(); ++i)
        if (dot(c.matrix().row(i), h) == 0) tight.push_back(i);
    if (tight.empty())
        return {c, h, Int(1), IntMatrix::identity(n), true};
    const std::size_t corank = rank(c.matrix().select_rows(tight));
    if (corank == 0) return {c, h, Int(1), IntMatrix::identity(n), true};
    const std::size_t k = n - corank;

    // lex-least row subset of rank corank with maximal gcd
    std::optional<std::vector<std::size_t>> best_rows;
    Int best_gcd(0);
    for (const auto& pick : subsets_of_size(tight.size(), corank)) {
        std::vector<std::size_t> rows;
        for (auto t : pick) rows.push_back(tight[t]);
        IntMatrix sub = c.matrix().select_rows(rows);
        if (rank(sub) != corank) continue;
        Int g = gcd_of_maximal_minors(sub);
        if (!best_rows || g > best_gcd) {
            best_rows = rows;
            best_gcd = g;
        }
    }
    if (!best_rows) throw check_error("reduce_to_full_dim: no full-rank tight subset");

    IntMatrix sub = c.matrix().select_rows(*best_rows);
    auto hnf = hermite_normal_form(sub); // sub * u = (H, 0)
    std::vector<std::size_t> head(corank), tail(k);
    for (std::size_t j = 0; j < corank; ++j) head[j] = j;
    for (std::size_t j = 0; j < k; ++j) tail[j] = corank + j;
    Int scale = abs(determinant(hnf.h.select_cols(head).select_rows(head)));
    if (scale != best_gcd)
        throw check_error("reduce_to_full_dim: |det H| does not match the row gcd");

    IntMatrix in_new = c.matrix() * hnf.u;
    // drop rows that vanish entirely on the face coordinates
    std::vector<std::vector<Int>> keep_rows;
    for (std::size_t i = 0; i < in_new.rows(); ++i) {
        std::vector<Int> row(k);
        bool nonzero = false;
        for (std::size_t j = 0; j < k; ++j) {
            row[j] = in_new(i, corank + j);
            if (row[j] != 0) nonzero = true;
        }
        if (nonzero) keep_rows.push_back(std::move(row));
    }
    if (keep_rows.empty()) throw check_error("reduce_to_full_dim: projected cone has no constraints");
    IntMatrix projected = IntMatrix::from_rows(keep_rows);

    // coordinates of h in the new basis: the first block must vanish
    auto uinv = inverse(to_rational(hnf.u));
    if (!uinv) throw check_error("reduce_to_full_dim: unimodular matrix not invertible");
    RatVec y = *uinv * to_rational(h);
    IntVec image(k);
    for (std::size_t j = 0; j < corank; ++j)
        if (y[j] != 0) throw check_error("reduce_to_full_dim: face coordinates do not vanish");
    for (std::size_t j = 0; j < k; ++j) {
        if (!is_integral(y[corank + j]))
            throw check_error("reduce_to_full_dim: projected vector is not integral");
        image[j] = numerator(y[corank + j]);
    }

    Cone reduced(projected);
    bool h_irreducible = is_hilbert_element_zn(c, h);
    bool image_irreducible = is_hilbert_element_zn(reduced, image);
    if (h_irreducible != image_irreducible)
        throw check_error("reduce_to_full_dim: irreducibility not preserved by the projection");
    return {std::move(reduced), std::move(image), scale, hnf.u, false};
}

enum class SettledCase { few_rows, doubled_minors, unclassified };

struct SettledCaseReport {
    SettledCase classification;
    std::vector<ShcVerdict> verdicts;
    bool all_hold;
    bool critical; // a classified instance failed: bug or counterexample
};

// Routes an instance through the settled sufficient conditions: m <= n + 1,
// or every maximal minor within {0, +-k, +-2k}. Classified instances must
// pass; a failure there is flagged as critical.
inline SettledCaseReport settled_case_router(const Cone& c) {
    SettledCase cls = SettledCase::unclassified;
    if (c.num_rows() <= c.dim() + 1) {
        cls = SettledCase::few_rows;
    } else {
        std::vector<Int> values;
        for (const auto& rows : subsets_of_size(c.num_rows(), c.dim())) {
            Int d = abs(determinant(c.matrix().select_rows(rows)));
            if (d != 0) values.push_back(d);
        }
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.size() == 1 ||
            (values.size() == 2 && values[1] == 2 * values[0]))
            cls = SettledCase::doubled_minors;
    }

    SettledCaseReport rep{cls, shc_check(c), true, false};
    for (const auto& v : rep.verdicts)
        if (!v.holds) rep.all_hold = false;
    rep.critical = !rep.all_hold && cls != SettledCase::unclassified;
    return rep;
}

} // namespace latcone
