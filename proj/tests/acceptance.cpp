// Acceptance suite: every criterion below runs exactly, prints one PASS or
// FAIL line, and the binary exits nonzero if any of them failed. Corpora are
// generated from fixed seeds through the library's pinned generator.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "latcone/appendix.hpp"
#include "latcone/cli.hpp"
#include "latcone/pyramid.hpp"
#include "latcone/search.hpp"
#include "latcone/widths.hpp"

using namespace latcone;

namespace {

struct Criterion {
    int number;
    std::string name;
    std::function<void()> body; // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

IntVec to_int_vec(const RatVec& v) {
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        require(is_integral(v[i]), "expected an integral vector");
        out[i] = numerator(v[i]);
    }
    return out;
}

// ---- criterion 1: the worked-example re-derivation --------------------------

void criterion_worked_example() {
    auto rep = run_appendix_checks();
    for (const auto& c : rep.checks) require(c.ok, "worked-example check failed: " + c.name);
    require(rep.checks.size() >= 8, "worked-example suite is incomplete");

    // lex-canonicalized generator list matches the published columns exactly
    Cone cone(appendix_matrix());
    auto got = cone.normalized().vectors();
    auto want = appendix_generators();
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    require(got == want, "generator set mismatch");
}

// ---- criterion 2: bimodular decomposition law --------------------------------

void criterion_bimodular() {
    SplitMix64 rng(20240002);
    int done = 0;
    std::size_t which = 0;
    while (done < 200) {
        std::size_t n = 2 + (which++ % 3); // cycles 2, 3, 4
        std::size_t m = n + static_cast<std::size_t>(rng.range(0, 2));
        IntMatrix a = random_matrix(rng, m, n, -2, 2);
        if (rank(a) != n) continue;
        if (minor_stats(a).delta_max != 2) continue;
        Cone c(a);
        ++done;
        for (const auto& e : hilbert_basis_zn(c)) {
            auto v = shc_check(c, e);
            require(v.holds, "height above one in a bimodular cone");
            require(v.per_ray_upper_ok, "per-ray upper bound violated");
            require(v.pair_lower_ok, "two-generator lower bound violated");
            if (e.trivial) continue;
            auto pair = bimodular_decompose(c, e); // throws if no half-half pair exists
            require(pair.i != pair.j, "degenerate pair");
            auto gens = c.normalized().vectors();
            RatVec recon(n);
            for (std::size_t k = 0; k < n; ++k)
                recon[k] = make_rat(gens[pair.i][k] + gens[pair.j][k], 2);
            require(recon == e.vector, "pair does not reproduce the element");
        }
    }
}

// ---- criterion 3: simplicial height and face bounds ---------------------------

void criterion_simplicial() {
    SplitMix64 rng(20240003);
    int done = 0;
    std::size_t which = 0;
    while (done < 200) {
        std::size_t n = 2 + (which++ % 3);
        IntMatrix a = random_matrix(rng, n, n, -3, 3);
        Int det = determinant(a);
        if (det == 0 || abs(det) > 12) continue;
        ++done;
        auto rep = simplicial_check(Cone(a)); // throws when a bound fails
        require(rep.all_heights_le_one, "height above one in a simplicial cone");
        require(rep.all_supports_le_delta, "support above Delta in a simplicial cone");
    }
}

// ---- criterion 4: unimodular behavior ----------------------------------------

void criterion_unimodular() {
    SplitMix64 rng(20240004);

    int cones = 0;
    while (cones < 50) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.range(0, 1));
        std::size_t m = n + static_cast<std::size_t>(rng.range(0, 2));
        IntMatrix a = random_matrix(rng, m, n, -2, 2);
        if (rank(a) != n) continue;
        if (minor_stats(a).delta_max != 1) continue;
        Cone c(a);
        if (c.primitive().rays.empty()) continue;
        ++cones;
        auto basis = hilbert_basis_zn(c);
        auto prim = c.primitive().vectors();
        require(basis.size() == prim.size(), "basis size differs from the ray count");
        for (const auto& e : basis) {
            require(e.trivial, "non-trivial element in a unimodular cone");
            IntVec v = to_int_vec(e.vector);
            require(std::find(prim.begin(), prim.end(), v) != prim.end(),
                    "element is not a primitive ray generator");
        }
    }

    int polys = 0;
    while (polys < 50) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.range(0, 1));
        std::size_t m = n + 2;
        IntMatrix a = random_matrix(rng, m, n, -1, 1);
        IntMatrix box(2 * n, n);
        for (std::size_t i = 0; i < n; ++i) {
            box(i, i) = Int(1);
            box(n + i, i) = Int(-1);
        }
        a = a.vstack(box);
        if (minor_stats(a).delta_max != 1) continue;
        RatVec b(a.rows());
        for (auto& x : b) x = Rat(rng.range(0, 4));
        Polytope p(a, b);
        if (!is_bounded(p) || !is_full_dimensional(p)) continue;
        ++polys;
        auto rep = width_relation_report(p, Int(2));
        require(rep.delta == 1, "Delta drifted");
        require(rep.delta1_equality_ok, "lattice width differs from facet width at Delta = 1");
        require(rep.chain_ok, "width chain failed at Delta = 1");
    }

    for (std::size_t n : {2u, 3u, 4u}) {
        IntMatrix a(n + 1, n);
        for (std::size_t i = 0; i < n; ++i) a(i, i) = -1;
        for (std::size_t j = 0; j < n; ++j) a(n, j) = 1;
        RatVec b(n + 1, Rat(0));
        b[n] = Rat(static_cast<long long>(n));
        Polytope p(a, b);
        auto rel = width_relation_report(p, Int(2));
        require(rel.lattice.width == Rat(static_cast<long long>(n)),
                "dimension-scaled simplex width is not n");
        require(rel.facet.width == Rat(static_cast<long long>(n)),
                "dimension-scaled simplex facet width is not n");
        require(rel.delta == 1 && rel.delta1_equality_ok, "scaled simplex equality failed");
    }
}

// ---- criterion 5: group diameters and phi ------------------------------------

void criterion_groups() {
    for (long long d = 2; d <= 12; ++d) {
        AbelianGroup g({Int(d)});
        require(diam_formula(g) == d - 1, "formula diameter off on a cyclic group");
        require(diam_bfs(g) == d - 1, "definitional diameter off on a cyclic group");
    }

    // every abelian group of order <= 16 respects the induction bound
    std::function<void(std::vector<Int>&, Int)> walk = [&](std::vector<Int>& cur, Int prod) {
        if (!cur.empty()) {
            AbelianGroup g(cur);
            Int bound = diam_upper_bound(g.order(), Int(static_cast<long long>(cur.size())));
            require(diam_bfs(g) <= bound, "definitional diameter above the induction bound");
        }
        Int start = cur.empty() ? Int(2) : cur.back();
        for (Int s = start; prod * s <= 16; ++s) {
            if (!cur.empty() && s % cur.back() != 0) continue;
            cur.push_back(s);
            walk(cur, prod * s);
            cur.pop_back();
        }
    };
    std::vector<Int> cur;
    walk(cur, Int(1));

    for (long long d = 3; d <= 10; ++d)
        for (long long j = 2; j <= d - 1; ++j)
            require(phi_j(Int(d), Int(j)) == phi_j_bruteforce(Int(d), Int(j)),
                    "phi formula and exhaustive search disagree");

    for (long long d = 3; d <= 10; ++d)
        require(phi_j(Int(d), Int(d / 2 + 1)) == 2, "half-order phi value is not two");

    // the known discrepancy is pinned, not treated as a failure
    AbelianGroup klein({Int(2), Int(2)});
    require(diam_formula(klein) == 3, "formula value drifted on the Klein-type group");
    require(diam_bfs(klein) == 2, "definitional value drifted on the Klein-type group");
}

// ---- criterion 6: the diagonal family ----------------------------------------

void criterion_diagonal_family() {
    std::vector<std::vector<Int>> chains;
    for (long long d = 2; d <= 12; ++d) chains.push_back({Int(d)});
    chains.push_back({Int(2), Int(2)});
    chains.push_back({Int(2), Int(4)});
    chains.push_back({Int(2), Int(2), Int(2)});

    for (const auto& ch : chains) {
        Pyramid p = generate_sg(ch); // lattice-freeness and gcd = Delta asserted inside
        auto rep = pyramid_bound_report(p);
        require(rep.diam_source == DiamSource::bfs, "expected the definitional diameter");
        require(rep.group_bound_ok, "facet width above the group bound");
        if (ch.size() == 1) {
            Int d = ch[0];
            require(rep.w_a == Rat(d - 2), "cyclic member width is not delta - 2");
            require(rep.bound_delta == d - 2, "Delta - 2 drifted");
            require(rep.tight, "cyclic member must be reported tight");
        } else {
            require(!rep.tight, "non-cyclic member must carry the non-tightness flag");
        }
    }
}

// ---- criterion 7: lattice-free simplices -------------------------------------

void criterion_simplices() {
    SplitMix64 rng(20240007);
    int done = 0;
    std::size_t which = 0;
    while (done < 100) {
        std::size_t n = 2 + (which++ % 2); // cycles 2, 3
        IntMatrix a = random_matrix(rng, n, n, -2, 2);
        Int det = determinant(a);
        if (det == 0 || abs(det) > 8 || abs(det) < 2) continue;
        IntVec dir(n, Int(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) dir[j] -= a(i, j);
        bool in_radius = true;
        for (const auto& e : dir)
            if (abs(e) > 5) in_radius = false;
        if (!in_radius) continue;
        IntVec b(n);
        for (auto& x : b) x = Int(rng.range(-2, 2));
        std::optional<Pyramid> p;
        try {
            auto apex = solve_full_rank(a, to_rational(b));
            p = build_pyramid(a, dir, b, rat_floor(dot(dir, *apex)) + 1);
        } catch (const input_error&) {
            continue;
        }
        if (p->dual_pos != DualPosition::interior) continue;
        if (!is_lattice_free(p->polytope()).lattice_free) continue;
        ++done;

        auto rep = simplex_width_check(*p, Int(5));
        require(rep.facet_bound_ok, "facet width not below the definitional diameter");
        require(rep.diam <= rep.delta - 1, "diameter above delta - 1");
        require(rep.search_bound_ok, "lattice width not below floor(delta/2)");
        if (rep.flat_direction) {
            require(!is_zero_vec(*rep.flat_direction), "flat direction is zero");
            require(*rep.flat_width < Rat(1) - make_rat(1, rep.delta),
                    "flat direction not below 1 - 1/delta");
        }
    }
}

// ---- criterion 8: the width relation chain -----------------------------------

void criterion_width_chain() {
    SplitMix64 rng(20240008);
    int done = 0;
    while (done < 100) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.range(0, 1));
        std::size_t m = n + 2;
        IntMatrix a = random_matrix(rng, m, n, -2, 2);
        if (rng.range(0, 1) == 0) {
            IntMatrix box(2 * n, n);
            for (std::size_t i = 0; i < n; ++i) {
                box(i, i) = Int(1);
                box(n + i, i) = Int(-1);
            }
            a = a.vstack(box);
        }
        if (rank(a) != n) continue;
        if (minor_stats(a).delta_max > 3) continue;
        RatVec b(a.rows());
        for (auto& x : b) x = Rat(rng.range(0, 5));
        Polytope p(a, b);
        if (!is_bounded(p) || !is_full_dimensional(p)) continue;
        auto rep = width_relation_report(p, Int(3));
        if (!rep.radius_stable) continue; // only radius-certified instances count
        ++done;
        require(rep.facets_in_radius, "facet normal escaped the search radius");
        require(rep.chain_ok, "width chain w <= w_F <= Delta w failed");
        if (rep.delta == 1)
            require(rep.delta1_equality_ok, "equality at Delta = 1 failed");
    }
}

// ---- criterion 9: lattice determinant and transformation law ------------------

void criterion_lattice_and_transform() {
    SplitMix64 rng(20240009);

    int lattices = 0;
    while (lattices < 100) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.range(0, 1));
        std::size_t m = n + static_cast<std::size_t>(rng.range(0, 2));
        IntMatrix a = random_matrix(rng, m, n, -4, 4);
        if (rank(a) != n) continue;
        auto lat = rhs_lattice(a); // det * gcd == 1 asserted inside
        require(lat.det * Rat(minor_stats(a).gcd_minors) == 1, "lattice determinant identity");
        ++lattices;
    }

    int transforms = 0;
    while (transforms < 100) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.range(0, 1));
        std::size_t m = n + static_cast<std::size_t>(rng.range(0, 2));
        IntMatrix a = random_matrix(rng, m, n, -3, 3);
        if (rank(a) != n) continue;
        IntMatrix bmat = random_matrix(rng, n, n, -2, 2);
        Int det = determinant(bmat);
        if (det == 0 || abs(det) > 4) continue;
        Cone c(a);
        auto res = transform_cone(c, bmat); // equality verified inside
        require(res.mapped.size() == c.normalized().rays.size(), "mapped generator count");
        ++transforms;
    }
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "worked-example re-derivation (generators, gcd scaling, spindle, decompositions)",
         criterion_worked_example},
        {2, "bimodular cones: half-half decomposition plus coefficient bounds on 200 seeded cones",
         criterion_bimodular},
        {3, "simplicial cones: height <= 1 and |supp(Ah)| <= Delta on 200 seeded matrices",
         criterion_simplicial},
        {4, "unimodular behavior: trivial bases, width equality, dimension-scaled simplices",
         criterion_unimodular},
        {5, "group suite: diameters, induction bound, phi values, pinned discrepancy",
         criterion_groups},
        {6, "diagonal family: lattice-freeness, group bound, cyclic tightness",
         criterion_diagonal_family},
        {7, "lattice-free simplices: diameter and half-delta width bounds on 100 seeded instances",
         criterion_simplices},
        {8, "width relation chain with radius-certified search on 100 seeded polytopes",
         criterion_width_chain},
        {9, "lattice determinant identity and the generator transformation law on 100 + 100 pairs",
         criterion_lattice_and_transform},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string detail;
        try {
            c.body();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = e.what();
            ++failures;
        }
        auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << verdict << "  criterion " << c.number << " (" << std::fixed;
        line.precision(1);
        line << secs << " s): " << c.name;
        if (!detail.empty()) line << " -- " << detail;
        std::cout << line.str() << std::endl;
    }
    if (failures == 0) {
        std::cout << "PASS  all " << criteria.size() << " criteria" << std::endl;
        return 0;
    }
    std::cout << "FAIL  " << failures << " of " << criteria.size() << " criteria" << std::endl;
    return 1;
}
