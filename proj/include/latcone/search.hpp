#pragma once

// Seeded random instance search. The generator is pinned (splitmix64-v1
// with unbiased rejection sampling), so a seed reproduces the same stream
// of matrices on any platform, and the JSONL log is reproducible line for
// line apart from the timestamp field. All integers in the log are decimal
// strings.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latcone/appendix.hpp"
#include "latcone/conjectures.hpp"
#include "latcone/pyramid.hpp"

namespace latcone {

// splitmix64-v1
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // unbiased inclusive range via rejection
    long long range(long long lo, long long hi) {
        if (lo > hi) throw input_error("empty random range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        std::uint64_t limit = span * (UINT64_MAX / span);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return lo + static_cast<long long>(v % span);
    }
};

inline IntMatrix random_matrix(SplitMix64& rng, std::size_t m, std::size_t n, long long lo,
                               long long hi) {
    IntMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Int(rng.range(lo, hi));
    return a;
}

enum class SearchMode { shc, bimodular, simplicial, weak_hc };

inline std::string to_string(SearchMode m) {
    switch (m) {
        case SearchMode::shc: return "shc";
        case SearchMode::bimodular: return "bimodular";
        case SearchMode::simplicial: return "simplicial";
        case SearchMode::weak_hc: return "weak_hc";
    }
    return "?";
}

inline SearchMode parse_search_mode(const std::string& s) {
    if (s == "shc") return SearchMode::shc;
    if (s == "bimodular") return SearchMode::bimodular;
    if (s == "simplicial") return SearchMode::simplicial;
    if (s == "weak_hc") return SearchMode::weak_hc;
    throw input_error("unknown search mode: '" + s + "'");
}

struct SearchConfig {
    SearchMode mode = SearchMode::shc;
    std::size_t n = 2;
    std::size_t m = 3;
    long long lo = -3;
    long long hi = 3;
    std::size_t count = 10;
    std::uint64_t seed = 1;
    std::string log_path; // empty: no log written
};

struct SearchSummary {
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;
};

namespace detail {

inline nlohmann::ordered_json matrix_json(const IntMatrix& a) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_string(a(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline nlohmann::ordered_json vector_json(const RatVec& v) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline nlohmann::ordered_json verdict_json(const ShcVerdict& v) {
    nlohmann::ordered_json j;
    j["holds"] = v.holds;
    j["element"] = vector_json(v.element.vector);
    j["coefficient_sum"] = to_string(v.coefficient_sum);
    j["per_ray_upper_ok"] = v.per_ray_upper_ok;
    j["pair_lower_ok"] = v.pair_lower_ok;
    return j;
}

} // namespace detail

// Generates exactly `count` matrices from the seed; instances failing the
// mode's filter are recorded as skipped. Any conjecture violation is a
// failure record carrying the full instance for audit.
inline SearchSummary search(const SearchConfig& cfg) {
    SplitMix64 rng(cfg.seed);
    SearchSummary summary;
    std::ofstream log;
    if (!cfg.log_path.empty()) {
        log.open(cfg.log_path, std::ios::app);
        if (!log) throw input_error("search: cannot open log path '" + cfg.log_path + "'");
    }
    auto timestamp = []() {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::system_clock::now().time_since_epoch())
            .count();
    };

    for (std::size_t index = 0; index < cfg.count; ++index) {
        std::size_t m = cfg.mode == SearchMode::simplicial ? cfg.n : cfg.m;
        IntMatrix a = random_matrix(rng, m, cfg.n, cfg.lo, cfg.hi);

        nlohmann::ordered_json rec;
        rec["index"] = index;
        rec["seed"] = std::to_string(cfg.seed);
        rec["mode"] = to_string(cfg.mode);
        rec["A"] = detail::matrix_json(a);
        nlohmann::ordered_json flags = nlohmann::ordered_json::array();

        std::string status = "pass";
        try {
            if (rank(a) != cfg.n) {
                status = "skip";
                flags.push_back("rank_deficient");
            } else if (cfg.mode == SearchMode::bimodular && minor_stats(a).delta_max != 2) {
                status = "skip";
                flags.push_back("delta_filter");
            } else if (cfg.mode == SearchMode::simplicial && determinant(a) == 0) {
                status = "skip";
                flags.push_back("singular");
            } else {
                Cone cone(a);
                nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
                nlohmann::ordered_json certificates = nlohmann::ordered_json::array();
                switch (cfg.mode) {
                    case SearchMode::shc: {
                        for (const auto& v : shc_check(cone)) {
                            verdicts.push_back(detail::verdict_json(v));
                            certificates.push_back(detail::vector_json(v.coefficients));
                            if (!v.holds) status = "fail";
                        }
                        break;
                    }
                    case SearchMode::bimodular: {
                        for (const auto& e : hilbert_basis_zn(cone)) {
                            auto v = shc_check(cone, e);
                            verdicts.push_back(detail::verdict_json(v));
                            nlohmann::ordered_json cert;
                            cert["lambda"] = detail::vector_json(v.coefficients);
                            if (!v.holds) status = "fail";
                            if (!e.trivial) {
                                auto pair = bimodular_decompose(cone, e); // throws on violation
                                cert["pair"] = {pair.i, pair.j};
                            }
                            certificates.push_back(cert);
                        }
                        break;
                    }
                    case SearchMode::simplicial: {
                        auto rep = simplicial_check(cone); // throws on violation
                        for (const auto& el : rep.elements) {
                            nlohmann::ordered_json ej;
                            ej["element"] = detail::vector_json(el.element.vector);
                            ej["height"] = to_string(el.height_value);
                            ej["support"] = el.support;
                            verdicts.push_back(ej);
                        }
                        break;
                    }
                    case SearchMode::weak_hc: {
                        // a deterministic dual vector: minus a positive row combination
                        IntVec dir(cfg.n, Int(0));
                        for (std::size_t i = 0; i < m; ++i) {
                            Int coef(rng.range(1, 3));
                            for (std::size_t j = 0; j < cfg.n; ++j) dir[j] -= coef * a(i, j);
                        }
                        for (const auto& e : hilbert_basis_zn(cone)) {
                            bool ok = weak_hc_check(cone, dir, e.vector);
                            nlohmann::ordered_json ej;
                            ej["element"] = detail::vector_json(e.vector);
                            ej["ok"] = ok;
                            verdicts.push_back(ej);
                            if (!ok) status = "fail";
                        }
                        break;
                    }
                }
                rec["verdict"] = verdicts;
                rec["certificate"] = certificates;
            }
        } catch (const check_error& e) {
            status = "fail";
            flags.push_back(std::string("critical: ") + e.what());
        }

        rec["status"] = status;
        rec["flags"] = flags;
        rec["timestamp_ms"] = timestamp();
        if (log) log << rec.dump() << "\n";

        if (status == "pass") ++summary.passed;
        else if (status == "fail") ++summary.failed;
        else ++summary.skipped;
    }
    return summary;
}

} // namespace latcone
