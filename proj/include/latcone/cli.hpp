#pragma once

// Command-line front end. Every subcommand reads an instance file (or
// inline flags), prints a human-readable report to stdout and optionally
// writes the same report as JSON. Exit codes: 0 success, 1 failed
// mathematical check, 2 usage or input errors.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latcone/appendix.hpp"
#include "latcone/io.hpp"
#include "latcone/pyramid.hpp"
#include "latcone/search.hpp"
#include "latcone/widths.hpp"

namespace latcone {
namespace cli {

namespace detail {

inline nlohmann::ordered_json json_vec(const IntVec& v) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline nlohmann::ordered_json json_vec(const RatVec& v) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

inline nlohmann::ordered_json json_factors(const AbelianGroup& g) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& s : g.invariant_factors) out.push_back(to_string(s));
    return out;
}

inline void emit(const Report& rep, std::ostream& out, const std::string& json_path) {
    rep.render(out);
    if (!json_path.empty()) {
        std::ofstream jf(json_path);
        if (!jf) throw input_error("cannot open '" + json_path + "' for the JSON report");
        jf << rep.to_json().dump(2) << "\n";
    }
}

inline RatMatrix lattice_basis_for(const InstanceFile& inst) {
    if (inst.lattice == LatticeChoice::zn) return RatMatrix::identity(inst.a.cols());
    return rhs_lattice(inst.a).basis;
}

} // namespace detail

inline int cmd_analyze(const InstanceFile& inst, std::ostream& out, const std::string& json_path) {
    Report rep{"analyze", instance_digest(inst)};
    auto st = minor_stats(inst.a);
    rep.results["rows"] = inst.a.rows();
    rep.results["cols"] = inst.a.cols();
    rep.results["rank"] = st.rank;
    rep.results["pointed_cone"] = st.rank == inst.a.cols();
    rep.results["delta_max"] = to_string(st.delta_max);
    rep.results["delta_min"] = to_string(st.delta_min);
    rep.results["gcd_minors"] = to_string(st.gcd_minors);
    detail::emit(rep, out, json_path);
    return 0;
}

inline int cmd_rays(const InstanceFile& inst, std::ostream& out, const std::string& json_path) {
    Report rep{"rays", instance_digest(inst)};
    Cone cone(inst.a);
    nlohmann::ordered_json prim = nlohmann::ordered_json::array();
    for (const auto& r : cone.primitive().rays) prim.push_back(detail::json_vec(r.vector));
    nlohmann::ordered_json norm = nlohmann::ordered_json::array();
    for (const auto& r : cone.normalized().rays) {
        nlohmann::ordered_json e;
        e["vector"] = detail::json_vec(r.vector);
        e["scale"] = to_string(r.scale);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (auto i : r.defining_rows) rows.push_back(i + 1); // 1-based row labels
        e["defining_rows"] = rows;
        norm.push_back(e);
    }
    rep.results["delta"] = to_string(cone.delta());
    rep.results["primitive"] = prim;
    rep.results["normalized"] = norm;
    detail::emit(rep, out, json_path);
    return 0;
}

inline int cmd_hilbert(const InstanceFile& inst, std::ostream& out, const std::string& json_path) {
    Report rep{"hilbert", instance_digest(inst)};
    Cone cone(inst.a);
    auto basis = hilbert_basis(cone, detail::lattice_basis_for(inst));
    rep.results["lattice"] = inst.lattice == LatticeChoice::zn ? "zn" : "rhs";
    nlohmann::ordered_json elems = nlohmann::ordered_json::array();
    for (const auto& e : basis) {
        nlohmann::ordered_json ej;
        ej["vector"] = detail::json_vec(e.vector);
        ej["trivial"] = e.trivial;
        ej["face_dim"] = e.face_dim;
        elems.push_back(ej);
    }
    rep.results["count"] = basis.size();
    rep.results["elements"] = elems;
    detail::emit(rep, out, json_path);
    return 0;
}

inline int cmd_shc(const InstanceFile& inst, std::ostream& out, const std::string& json_path) {
    Report rep{"shc", instance_digest(inst)};
    Cone cone(inst.a);
    auto verdicts = shc_check(cone);
    bool all_hold = true;
    nlohmann::ordered_json vj = nlohmann::ordered_json::array();
    for (const auto& v : verdicts) {
        nlohmann::ordered_json e;
        e["element"] = detail::json_vec(v.element.vector);
        e["holds"] = v.holds;
        e["coefficient_sum"] = to_string(v.coefficient_sum);
        e["lambda"] = detail::json_vec(v.coefficients);
        e["per_ray_upper_ok"] = v.per_ray_upper_ok;
        e["pair_lower_ok"] = v.pair_lower_ok;
        vj.push_back(e);
        if (!v.holds) all_hold = false;
    }
    rep.results["elements_checked"] = verdicts.size();
    rep.results["all_hold"] = all_hold;
    rep.results["verdicts"] = vj;
    if (!all_hold) rep.flags.push_back("height above one: serialized instance for audit");
    detail::emit(rep, out, json_path);
    return all_hold ? 0 : 1;
}

inline int cmd_width(const InstanceFile& inst, const Int& radius, std::ostream& out,
                     const std::string& json_path) {
    if (!inst.b) throw input_error("width requires a right-hand side 'b'");
    Report rep{"width", instance_digest(inst)};
    Polytope p(inst.a, *inst.b);
    auto rel = width_relation_report(p, radius);
    rep.results["lattice_width"] = to_string(rel.lattice.width);
    rep.results["lattice_direction"] = detail::json_vec(rel.lattice.direction);
    rep.results["facet_width"] = to_string(rel.facet.width);
    rep.results["facet_direction"] = detail::json_vec(rel.facet.direction);
    rep.results["delta"] = to_string(rel.delta);
    rep.results["radius"] = to_string(radius);
    rep.results["chain_ok"] = rel.chain_ok;
    rep.results["delta1_equality_ok"] = rel.delta1_equality_ok;
    rep.results["radius_stable"] = rel.radius_stable;
    if (!rel.lattice.exhaustive) rep.flags.push_back("radius-limited width: value is an upper bound");
    if (!rel.radius_stable) rep.flags.push_back("search at radius+1 improved the width");
    if (!rel.facets_in_radius) rep.flags.push_back("some facet normal lies outside the radius");
    detail::emit(rep, out, json_path);
    return rel.chain_ok && rel.delta1_equality_ok ? 0 : 1;
}

inline int cmd_group(const InstanceFile& inst, std::ostream& out, const std::string& json_path) {
    Report rep{"group", instance_digest(inst)};
    auto lattice = rhs_lattice(inst.a);
    auto g = quotient_group(lattice);
    rep.results["det_lambda"] = to_string(lattice.det);
    rep.results["invariant_factors"] = detail::json_factors(g);
    rep.results["order"] = to_string(g.order());
    rep.results["diam_formula"] = to_string(diam_formula(g));
    if (g.order() <= 16) {
        Int bfs = diam_bfs(g);
        rep.results["diam_bfs"] = to_string(bfs);
        if (bfs != diam_formula(g))
            rep.flags.push_back("formula and definitional diameters disagree on this group");
    } else {
        rep.flags.push_back("order above the exhaustive limit: definitional diameter skipped");
    }
    detail::emit(rep, out, json_path);
    return 0;
}

inline int cmd_pyramid(const InstanceFile& inst, std::ostream& out, const std::string& json_path) {
    if (!inst.facet || !inst.b || !inst.facet_rhs)
        throw input_error("pyramid requires 'a', 'b' and 'b_a'");
    IntVec b_int(inst.b->size());
    for (std::size_t i = 0; i < inst.b->size(); ++i) {
        if (!is_integral((*inst.b)[i])) throw input_error("pyramid requires an integral 'b'");
        b_int[i] = numerator((*inst.b)[i]);
    }
    Report rep{"pyramid", instance_digest(inst)};
    Pyramid p = build_pyramid(inst.a, *inst.facet, b_int, *inst.facet_rhs);
    rep.results["apex"] = detail::json_vec(p.apex);
    try {
        auto br = pyramid_bound_report(p);
        rep.results["w_a"] = to_string(br.w_a);
        rep.results["bound_group"] = to_string(br.bound_group);
        rep.results["bound_delta"] = to_string(br.bound_delta);
        rep.results["delta"] = to_string(br.delta);
        rep.results["gcd"] = to_string(br.gcd_a);
        rep.results["hilbert_height"] = to_string(br.hilbert_height);
        rep.results["invariant_factors"] = detail::json_factors(br.group);
        rep.results["diam"] = to_string(br.diam);
        rep.results["diam_source"] = br.diam_source == DiamSource::bfs ? "bfs" : "formula";
        rep.results["tight"] = br.tight;
        if (br.diam_source == DiamSource::formula)
            rep.flags.push_back("diameter from the invariant-factor formula, not the definition");
        if (!br.tight) rep.flags.push_back("group bound not reported as tight");
        detail::emit(rep, out, json_path);
        return 0;
    } catch (const not_lattice_free_error& e) {
        rep.results["lattice_free"] = false;
        rep.results["witness"] = detail::json_vec(e.witness);
        rep.flags.push_back("pyramid contains an integer point");
        detail::emit(rep, out, json_path);
        return 1;
    }
}

inline int cmd_sg(const std::vector<Int>& factors, bool with_report, std::ostream& out,
                  const std::string& json_path) {
    Pyramid p = generate_sg(factors);
    InstanceFile inst{p.a, to_rational(p.rhs), p.facet, p.facet_rhs, LatticeChoice::rhs};
    Report rep{"sg", instance_digest(inst)};
    rep.results["instance"] = serialize_instance(inst);
    if (with_report) {
        auto br = pyramid_bound_report(p);
        rep.results["w_a"] = to_string(br.w_a);
        rep.results["bound_group"] = to_string(br.bound_group);
        rep.results["bound_delta"] = to_string(br.bound_delta);
        rep.results["diam"] = to_string(br.diam);
        rep.results["diam_source"] = br.diam_source == DiamSource::bfs ? "bfs" : "formula";
        rep.results["tight"] = br.tight;
        if (!br.tight)
            rep.flags.push_back("group bound not tight: expected for non-cyclic factor chains");
    }
    detail::emit(rep, out, json_path);
    return 0;
}

inline int cmd_search(const SearchConfig& cfg, std::ostream& out, const std::string& json_path) {
    auto summary = search(cfg);
    Report rep{"search", ""};
    rep.results["mode"] = to_string(cfg.mode);
    rep.results["count"] = cfg.count;
    rep.results["seed"] = std::to_string(cfg.seed);
    rep.results["passed"] = summary.passed;
    rep.results["failed"] = summary.failed;
    rep.results["skipped"] = summary.skipped;
    if (!cfg.log_path.empty()) rep.results["log"] = cfg.log_path;
    if (summary.failed > 0) rep.flags.push_back("critical findings recorded in the log");
    detail::emit(rep, out, json_path);
    return summary.failed == 0 ? 0 : 1;
}

inline int cmd_appendix(std::ostream& out, const std::string& json_path) {
    auto checks = run_appendix_checks();
    Report rep{"appendix", ""};
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& c : checks.checks) {
        out << (c.ok ? "PASS" : "FAIL") << "  " << c.name << "\n";
        nlohmann::ordered_json e;
        e["check"] = c.name;
        e["ok"] = c.ok;
        list.push_back(e);
    }
    rep.results["checks"] = list;
    rep.results["all_ok"] = checks.all_ok();
    out << (checks.all_ok() ? "PASS" : "FAIL") << "  overall\n";
    if (!json_path.empty()) {
        std::ofstream jf(json_path);
        if (!jf) throw input_error("cannot open '" + json_path + "' for the JSON report");
        jf << rep.to_json().dump(2) << "\n";
    }
    return checks.all_ok() ? 0 : 1;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact lattice geometry of pointed cones and lattice-free polyhedra"};
    app.require_subcommand(1);

    std::string file, json_path, log_path, lattice = "zn", mode = "shc", factors_csv;
    long long radius = 3, lo = -3, hi = 3;
    std::size_t n = 2, m = 3, count = 10;
    std::uint64_t seed = 1;
    bool with_report = false;

    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "instance JSON file")->required();
        sub->add_option("--json", json_path, "write the report as JSON to this path");
    };

    auto* analyze = app.add_subcommand("analyze", "minor statistics and rank");
    add_file(analyze);
    auto* rays = app.add_subcommand("rays", "primitive and normalized generators");
    add_file(rays);
    auto* hilbert = app.add_subcommand("hilbert", "Hilbert basis of the cone");
    add_file(hilbert);
    hilbert->add_option("--lattice", lattice, "zn or rhs")->check(CLI::IsMember({"zn", "rhs"}));
    auto* shc = app.add_subcommand("shc", "height-one check for every basis element");
    add_file(shc);
    auto* width = app.add_subcommand("width", "lattice and facet width relations");
    add_file(width);
    width->add_option("--radius", radius, "direction search radius (default 3)");
    auto* group = app.add_subcommand("group", "right-hand-side lattice and quotient diameters");
    add_file(group);
    auto* pyramid = app.add_subcommand("pyramid", "bound report for a pyramid instance");
    add_file(pyramid);
    auto* sg = app.add_subcommand("sg", "generate a diagonal family member");
    sg->add_option("--factors", factors_csv, "comma-separated invariant factors")->required();
    sg->add_flag("--report", with_report, "also run the bound report");
    sg->add_option("--json", json_path, "write the report as JSON to this path");
    auto* search_cmd = app.add_subcommand("search", "seeded random instance search");
    search_cmd->add_option("--mode", mode, "shc, bimodular, simplicial or weak_hc")
        ->check(CLI::IsMember({"shc", "bimodular", "simplicial", "weak_hc"}));
    search_cmd->add_option("--n", n, "columns");
    search_cmd->add_option("--m", m, "rows");
    search_cmd->add_option("--lo", lo, "smallest entry");
    search_cmd->add_option("--hi", hi, "largest entry");
    search_cmd->add_option("--count", count, "number of instances");
    search_cmd->add_option("--seed", seed, "generator seed");
    search_cmd->add_option("--log", log_path, "JSONL log path");
    search_cmd->add_option("--json", json_path, "write the report as JSON to this path");
    auto* appendix = app.add_subcommand("appendix", "re-derive the bundled worked example");
    appendix->add_option("--json", json_path, "write the report as JSON to this path");

    std::vector<const char*> argv;
    argv.push_back("latcone");
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(parse_instance(file), out, json_path);
        if (rays->parsed()) return cmd_rays(parse_instance(file), out, json_path);
        if (hilbert->parsed()) {
            auto inst = parse_instance(file);
            inst.lattice = lattice == "rhs" ? LatticeChoice::rhs : LatticeChoice::zn;
            return cmd_hilbert(inst, out, json_path);
        }
        if (shc->parsed()) return cmd_shc(parse_instance(file), out, json_path);
        if (width->parsed()) return cmd_width(parse_instance(file), Int(radius), out, json_path);
        if (group->parsed()) return cmd_group(parse_instance(file), out, json_path);
        if (pyramid->parsed()) return cmd_pyramid(parse_instance(file), out, json_path);
        if (sg->parsed()) {
            std::vector<Int> factors;
            std::stringstream ss(factors_csv);
            std::string tok;
            while (std::getline(ss, tok, ',')) factors.push_back(parse_int(tok));
            return cmd_sg(factors, with_report, out, json_path);
        }
        if (search_cmd->parsed()) {
            SearchConfig cfg;
            cfg.mode = parse_search_mode(mode);
            cfg.n = n;
            cfg.m = m;
            cfg.lo = lo;
            cfg.hi = hi;
            cfg.count = count;
            cfg.seed = seed;
            cfg.log_path = log_path;
            return cmd_search(cfg, out, json_path);
        }
        if (appendix->parsed()) return cmd_appendix(out, json_path);
    } catch (const not_lattice_free_error& e) {
        err << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const check_error& e) {
        err << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace cli
} // namespace latcone
