#pragma once
// The fourteen competency questions, shipped as parameterized query files.
// CQ1 and CQ2 are answered by the Core module, CQ3-CQ8 by Structure, CQ9 and
// CQ10 by Calculation, CQ11-CQ14 by Provenance.

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdo/graph.hpp"
#include "mdo/query.hpp"

namespace mdo {

class CqError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CqEntry {
    std::string id;      // "CQ1"
    std::string module;  // "Core" | "Structure" | "Calculation" | "Provenance"
    std::string file;    // relative to the query directory
    std::map<std::string, std::string> defaults;  // parameter name -> default value
};

inline const std::vector<CqEntry>& cq_registry() {
    static const std::vector<CqEntry> entries = {
        {"CQ1", "Core", "cq01.rq", {}},
        {"CQ2", "Core", "cq02.rq", {}},
        {"CQ3", "Structure", "cq03.rq", {}},
        {"CQ4", "Structure", "cq04.rq", {}},
        {"CQ5", "Structure", "cq05.rq", {}},
        {"CQ6", "Structure", "cq06.rq", {{"min", "5"}, {"property_name", "band_gap"}}},
        {"CQ7", "Structure", "cq07.rq",
         {{"formula", "Rb2Li1Ti1Cl6"}, {"property_name", "band_gap"}, {"min", "1"}}},
        {"CQ8", "Structure", "cq08.rq", {{"formula", "Rb2Li1Ti1Cl6"}, {"lattice_type", "cubic"}}},
        {"CQ9", "Calculation", "cq09.rq", {}},
        {"CQ10", "Calculation", "cq10.rq", {{"parameter_name", "cutoff_energy"}}},
        {"CQ11", "Provenance", "cq11.rq", {}},
        {"CQ12", "Provenance", "cq12.rq", {}},
        {"CQ13", "Provenance", "cq13.rq", {}},
        {"CQ14", "Provenance", "cq14.rq", {}},
    };
    return entries;
}

inline const CqEntry& cq_lookup(const std::string& id) {
    for (const CqEntry& e : cq_registry())
        if (e.id == id) return e;
    throw CqError("unknown competency question id: " + id);
}

namespace cq_detail {

inline bool numeric_looking(const std::string& v) {
    if (v.empty()) return false;
    std::size_t i = (v[0] == '+' || v[0] == '-') ? 1 : 0;
    bool digits = false, dot = false, exp = false;
    for (; i < v.size(); ++i) {
        char c = v[i];
        if (c >= '0' && c <= '9') digits = true;
        else if (c == '.' && !dot && !exp) dot = true;
        else if ((c == 'e' || c == 'E') && !exp && digits) {
            exp = true;
            if (i + 1 < v.size() && (v[i + 1] == '+' || v[i + 1] == '-')) ++i;
        } else return false;
    }
    return digits;
}

inline std::string quoted(const std::string& v) {
    std::string out = "\"";
    for (char c : v) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace cq_detail

/// Substitute ${name}-style parameters (written as $name) into a query text.
/// Numeric-looking values are inserted bare, everything else as a quoted
/// string. Unknown parameters and leftover placeholders are errors.
inline std::string substitute_params(const std::string& text,
                                     const std::map<std::string, std::string>& params) {
    std::string out;
    std::set<std::string> used;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c != '$') {
            out += c;
            ++i;
            continue;
        }
        std::size_t start = ++i;
        while (i < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
            ++i;
        std::string name = text.substr(start, i - start);
        auto it = params.find(name);
        if (it == params.end()) throw CqError("query parameter $" + name + " has no value");
        used.insert(name);
        out += cq_detail::numeric_looking(it->second) ? it->second : cq_detail::quoted(it->second);
    }
    for (const auto& [name, value] : params)
        if (!used.count(name)) throw CqError("unknown query parameter: " + name);
    return out;
}

/// Load, parameterize and parse one competency-question query.
inline Query load_cq(const std::string& id, const std::string& query_dir,
                     std::map<std::string, std::string> overrides = {}) {
    const CqEntry& entry = cq_lookup(id);
    std::ifstream in(query_dir + "/" + entry.file);
    if (!in) throw CqError("cannot open query file for " + id + ": " + entry.file);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::map<std::string, std::string> params = entry.defaults;
    for (auto& [k, v] : overrides) {
        if (!params.count(k)) throw CqError(id + " takes no parameter named " + k);
        params[k] = v;
    }
    std::string text = substitute_params(ss.str(), params);
    QueryParseResult r = parse_query(text);
    if (!r.ok)
        throw CqError(id + " failed to parse: " + r.diagnostics[0].message + " at line " +
                      std::to_string(r.diagnostics[0].line));
    return std::move(r.query);
}

/// Evaluate one competency question over a graph.
inline SolutionTable run_cq(const std::string& id, const Graph& g, const std::string& query_dir,
                            std::map<std::string, std::string> overrides = {}) {
    return evaluate(load_cq(id, query_dir, std::move(overrides)), g);
}

}  // namespace mdo
