#pragma once
// N-Triples and Turtle writers. Output is deterministic: blank node labels
// are reassigned in first-appearance order over the graph's canonical triple
// order, and N-Triples lines are sorted.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mdo/graph.hpp"
#include "mdo/prefix_map.hpp"
#include "mdo/term.hpp"

namespace mdo {

namespace serialize_detail {

inline std::map<std::string, std::string> canonical_blank_labels(const Graph& g) {
    std::map<std::string, std::string> relabel;
    std::size_t n = 0;
    auto note = [&](const Term& t) {
        if (t.is_blank() && !relabel.count(t.value))
            relabel.emplace(t.value, "b" + std::to_string(n++));
    };
    for (const Triple& t : g.triples()) {
        note(t.subject);
        note(t.object);
    }
    return relabel;
}

inline Term relabeled(const Term& t, const std::map<std::string, std::string>& relabel) {
    if (!t.is_blank()) return t;
    return Term::blank(relabel.at(t.value));
}

inline bool is_integer_lexical(const std::string& s) {
    std::size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

inline bool is_decimal_lexical(const std::string& s) {
    std::size_t i = (s.size() > 0 && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    std::size_t digits = 0, dots = 0;
    bool digit_after_dot = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (++dots > 1) return false;
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            ++digits;
            if (seen_dot) digit_after_dot = true;
        } else {
            return false;
        }
    }
    return digits > 0 && dots == 1 && digit_after_dot;
}

inline bool is_double_lexical(const std::string& s) {
    std::size_t e = s.find_first_of("eE");
    if (e == std::string::npos || e == 0 || e + 1 == s.size()) return false;
    std::string mantissa = s.substr(0, e);
    std::string exponent = s.substr(e + 1);
    if (!is_integer_lexical(exponent)) return false;
    return is_integer_lexical(mantissa) || is_decimal_lexical(mantissa);
}

// Bare Turtle shorthand is only used when re-parsing would reproduce the
// literal exactly (same lexical form and datatype).
inline bool shorthand_ok(const Term& t) {
    if (t.datatype == xsd_iri("integer")) return is_integer_lexical(t.value);
    if (t.datatype == xsd_iri("decimal")) return is_decimal_lexical(t.value);
    if (t.datatype == xsd_iri("double")) return is_double_lexical(t.value);
    if (t.datatype == xsd_iri("boolean")) return t.value == "true" || t.value == "false";
    return false;
}

inline bool valid_pn_local(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
        if (!ok) return false;
    }
    return true;
}

inline std::string turtle_term(const Term& t, const PrefixMap& prefixes,
                               bool verb_position = false) {
    switch (t.kind) {
        case TermKind::BlankNode: return "_:" + t.value;
        case TermKind::Iri: {
            if (verb_position && t.value == rdf_type_iri()) return "a";
            if (auto c = prefixes.compact(t.value); c && valid_pn_local(c->second))
                return c->first + ":" + c->second;
            return "<" + t.value + ">";
        }
        case TermKind::Literal: break;
    }
    if (t.lang.empty() && shorthand_ok(t)) return t.value;
    std::string out = "\"" + escape_ntriples_string(t.value) + "\"";
    if (!t.lang.empty()) return out + "@" + t.lang;
    if (t.datatype == xsd_iri("string")) return out;
    if (auto c = prefixes.compact(t.datatype); c && valid_pn_local(c->second))
        return out + "^^" + c->first + ":" + c->second;
    return out + "^^<" + t.datatype + ">";
}

}  // namespace serialize_detail

/// One triple per line, lines sorted lexicographically, "\n" endings.
inline std::string serialize_ntriples(const Graph& g) {
    auto relabel = serialize_detail::canonical_blank_labels(g);
    std::vector<std::string> lines;
    lines.reserve(g.size());
    for (const Triple& t : g.triples()) {
        Triple r{serialize_detail::relabeled(t.subject, relabel), t.predicate,
                 serialize_detail::relabeled(t.object, relabel)};
        lines.push_back(to_ntriples(r));
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

/// Prefix declarations first, then triples grouped by subject. Re-parsing
/// the output yields an isomorphic graph.
inline std::string serialize_turtle(const Graph& g, const PrefixMap& prefixes) {
    auto relabel = serialize_detail::canonical_blank_labels(g);
    std::ostringstream out;
    for (const auto& [label, iri] : prefixes.entries())
        out << "@prefix " << label << ": <" << iri << "> .\n";
    if (!prefixes.entries().empty() && !g.empty()) out << "\n";

    // subject -> predicate -> objects, all in canonical term order
    std::map<Term, std::map<Term, std::vector<Term>>> grouped;
    for (const Triple& t : g.triples()) {
        grouped[serialize_detail::relabeled(t.subject, relabel)][t.predicate].push_back(
            serialize_detail::relabeled(t.object, relabel));
    }
    const Term rdf_type = Term::iri(rdf_type_iri());
    for (auto& [subj, preds] : grouped) {
        out << serialize_detail::turtle_term(subj, prefixes);
        bool first_pred = true;
        // rdf:type leads when present, matching common Turtle style
        std::vector<const std::pair<const Term, std::vector<Term>>*> ordered;
        for (auto& kv : preds) ordered.push_back(&kv);
        std::stable_partition(ordered.begin(), ordered.end(),
                              [&](auto* kv) { return kv->first == rdf_type; });
        for (auto* kv : ordered) {
            out << (first_pred ? " " : " ;\n    ");
            first_pred = false;
            out << serialize_detail::turtle_term(kv->first, prefixes, /*verb_position=*/true);
            bool first_obj = true;
            for (const Term& o : kv->second) {
                out << (first_obj ? " " : ", ");
                first_obj = false;
                out << serialize_detail::turtle_term(o, prefixes);
            }
        }
        out << " .\n";
    }
    return out.str();
}

}  // namespace mdo
