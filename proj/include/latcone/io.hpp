#pragma once

// Instance files and reports. Instances are JSON with every integer as a
// decimal string and rationals as "p/q", so arbitrary precision survives
// any consumer. Reports render both machine JSON and human text from the
// same values.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latcone/matrix.hpp"

namespace latcone {

enum class LatticeChoice { zn, rhs };

struct InstanceFile {
    IntMatrix a;
    std::optional<RatVec> b;
    std::optional<IntVec> facet;  // the direction named "a" in instance files
    std::optional<Int> facet_rhs; // "b_a"
    LatticeChoice lattice = LatticeChoice::zn;
};

namespace detail {

inline IntMatrix parse_matrix(const nlohmann::json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) throw input_error("'" + key + "' must be a non-empty array of rows");
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.empty())
            throw input_error("'" + key + "' row " + std::to_string(i) + " must be a non-empty array");
        std::vector<Int> out;
        for (const auto& cell : row) {
            if (!cell.is_string())
                throw input_error("'" + key + "' row " + std::to_string(i) +
                                  ": entries must be decimal strings");
            out.push_back(parse_int(cell.get<std::string>()));
        }
        if (!rows.empty() && out.size() != rows.front().size())
            throw input_error("'" + key + "' row " + std::to_string(i) + " has ragged length");
        rows.push_back(std::move(out));
    }
    return IntMatrix::from_rows(rows);
}

inline IntVec parse_int_vector(const nlohmann::json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) throw input_error("'" + key + "' must be a non-empty array");
    IntVec out;
    for (const auto& cell : j) {
        if (!cell.is_string()) throw input_error("'" + key + "': entries must be decimal strings");
        out.push_back(parse_int(cell.get<std::string>()));
    }
    return out;
}

inline RatVec parse_rat_vector(const nlohmann::json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) throw input_error("'" + key + "' must be a non-empty array");
    RatVec out;
    for (const auto& cell : j) {
        if (!cell.is_string()) throw input_error("'" + key + "': entries must be 'p' or 'p/q' strings");
        out.push_back(parse_rat(cell.get<std::string>()));
    }
    return out;
}

} // namespace detail

inline InstanceFile parse_instance_json(const nlohmann::json& j) {
    if (!j.is_object()) throw input_error("instance file must be a JSON object");
    if (!j.contains("A")) throw input_error("instance file is missing the matrix field 'A'");
    InstanceFile inst{detail::parse_matrix(j.at("A"), "A"), std::nullopt, std::nullopt, std::nullopt,
                      LatticeChoice::zn};
    if (j.contains("b")) {
        auto b = detail::parse_rat_vector(j.at("b"), "b");
        if (b.size() != inst.a.rows())
            throw input_error("'b' length does not match the number of rows of 'A'");
        inst.b = std::move(b);
    }
    if (j.contains("a")) {
        auto dir = detail::parse_int_vector(j.at("a"), "a");
        if (dir.size() != inst.a.cols())
            throw input_error("'a' length does not match the number of columns of 'A'");
        inst.facet = std::move(dir);
    }
    if (j.contains("b_a")) {
        if (!j.at("b_a").is_string()) throw input_error("'b_a' must be a decimal string");
        inst.facet_rhs = parse_int(j.at("b_a").get<std::string>());
    }
    if (j.contains("lattice")) {
        std::string s = j.at("lattice").get<std::string>();
        if (s == "zn") inst.lattice = LatticeChoice::zn;
        else if (s == "rhs") inst.lattice = LatticeChoice::rhs;
        else throw input_error("'lattice' must be \"zn\" or \"rhs\"");
    }
    return inst;
}

inline InstanceFile parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open instance file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error("malformed JSON in '" + path + "': " + e.what());
    }
    return parse_instance_json(j);
}

inline nlohmann::ordered_json serialize_instance(const InstanceFile& inst) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < inst.a.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < inst.a.cols(); ++k) row.push_back(to_string(inst.a(i, k)));
        rows.push_back(row);
    }
    j["A"] = rows;
    if (inst.b) {
        nlohmann::ordered_json b = nlohmann::ordered_json::array();
        for (const auto& x : *inst.b) b.push_back(to_string(x));
        j["b"] = b;
    }
    if (inst.facet) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& x : *inst.facet) a.push_back(to_string(x));
        j["a"] = a;
    }
    if (inst.facet_rhs) j["b_a"] = to_string(*inst.facet_rhs);
    j["lattice"] = inst.lattice == LatticeChoice::zn ? "zn" : "rhs";
    return j;
}

// FNV-1a over the canonical serialization; identifies inputs in reports.
inline std::string instance_digest(const InstanceFile& inst) {
    std::string data = serialize_instance(inst).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

// One report per CLI run: a machine-readable body plus flags, rendered to
// text from the same JSON values so the two views cannot drift apart.
struct Report {
    std::string command;
    std::string digest;
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    std::vector<std::string> flags;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["inputs_digest"] = digest;
        j["results"] = results;
        j["flags"] = flags;
        return j;
    }

    void render(std::ostream& os) const {
        os << "command: " << command << "\n";
        if (!digest.empty()) os << "inputs: " << digest << "\n";
        render_value(os, results, 0);
        for (const auto& f : flags) os << "flag: " << f << "\n";
    }

private:
    static void render_value(std::ostream& os, const nlohmann::ordered_json& j, int depth) {
        std::string pad(2 * static_cast<std::size_t>(depth), ' ');
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                os << pad << key << ":\n";
                render_value(os, value, depth + 1);
            } else if (value.is_array()) {
                os << pad << key << ": " << value.dump() << "\n";
            } else if (value.is_string()) {
                os << pad << key << ": " << value.get<std::string>() << "\n";
            } else {
                os << pad << key << ": " << value.dump() << "\n";
            }
        }
    }
};

} // namespace latcone
