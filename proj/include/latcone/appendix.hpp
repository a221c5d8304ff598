#pragma once

// The bundled worked example: a 6x4 cone whose published normalized
// generators demonstrate that the maximal-gcd scaling matters. With the
// first generator halved, the minimal coefficient sum of the distinguished
// Hilbert element exceeds one.

#include <string>
#include <vector>

#include "latcone/conjectures.hpp"

namespace latcone {

inline IntMatrix appendix_matrix() {
    return IntMatrix::from_rows<long long>({{1, 0, 0, 0},
                                            {0, 1, 0, 0},
                                            {1, 8, 4, 11},
                                            {1, 4, 3, 6},
                                            {-1, -7, -3, -10},
                                            {-1, -7, -2, -9}});
}

// Columns r^1..r^7 as published.
inline std::vector<IntVec> appendix_generators() {
    auto mk = [](long long a, long long b, long long c, long long d) {
        return IntVec{Int(a), Int(b), Int(c), Int(d)};
    };
    return {mk(14, 0, 2, -2), mk(0, 7, 7, -7), mk(0, 0, 10, -3), mk(0, 15, 6, -13),
            mk(0, 9, 4, -8), mk(1, 8, 3, -7),  mk(0, 0, 11, -4)};
}

inline IntVec appendix_element() { return {Int(6), Int(1), Int(2), Int(-2)}; }

struct AppendixCheck {
    std::string name;
    bool ok;
};

struct AppendixReport {
    std::vector<AppendixCheck> checks;
    bool all_ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

inline AppendixReport run_appendix_checks() {
    AppendixReport rep;
    auto add = [&](std::string name, bool ok) { rep.checks.push_back({std::move(name), ok}); };

    IntMatrix a = appendix_matrix();
    Cone cone(a);
    auto published = appendix_generators();
    IntVec h = appendix_element();

    {
        auto got = cone.normalized().vectors();
        auto want = published;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        add("normalized generators equal the seven published columns", got == want);
    }
    {
        // rows 2,3,5,6 (1-based) annihilate the first column
        IntMatrix sub = a.select_rows({1, 2, 4, 5});
        add("the displayed 4x4 row block annihilates r1", is_zero_vec(sub * published[0]));
    }
    {
        bool ok = gcd_of_maximal_minors(a.select_rows({1, 2, 5})) == 2 &&
                  gcd_of_maximal_minors(a.select_rows({1, 2, 4})) == 1 &&
                  gcd_of_maximal_minors(a.select_rows({1, 4, 5})) == 1 &&
                  gcd_of_maximal_minors(a.select_rows({2, 4, 5})) == 1;
        add("rows {2,3,6} carry gcd 2, the other tight triples gcd 1", ok);
    }
    add("the distinguished element passes the spindle test", is_hilbert_element_zn(cone, h));
    {
        // 3/7 r1 + 1/9 r5 + 4/63 r7 and 47/112 r1 + 1/8 r6 + 1/14 r7
        auto combine = [&](std::initializer_list<std::pair<Rat, std::size_t>> terms) {
            RatVec out(4, Rat(0));
            for (const auto& [coef, idx] : terms)
                for (std::size_t i = 0; i < 4; ++i) out[i] += coef * Rat(published[idx][i]);
            return out;
        };
        RatVec first = combine({{make_rat(3, 7), 0}, {make_rat(1, 9), 4}, {make_rat(4, 63), 6}});
        RatVec second = combine({{make_rat(47, 112), 0}, {make_rat(1, 8), 5}, {make_rat(1, 14), 6}});
        RatVec target = to_rational(h);
        add("both published decompositions evaluate exactly to the element",
            first == target && second == target);
        add("the published coefficient sums are 38/63 and 69/112",
            make_rat(3, 7) + make_rat(1, 9) + make_rat(4, 63) == make_rat(38, 63) &&
            make_rat(47, 112) + make_rat(1, 8) + make_rat(1, 14) == make_rat(69, 112));
    }
    {
        auto res = height(cone, to_rational(h), published);
        add("minimal coefficient sum over the full set stays within 38/63",
            res.value <= make_rat(38, 63));
    }
    {
        auto ref = scaled_generator_refutation(cone, to_rational(h), published, 0);
        add("halving the first generator pushes the minimal sum above one",
            ref.ok && ref.halved_minimum > 1);
    }
    return rep;
}

} // namespace latcone
