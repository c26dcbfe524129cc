#pragma once
// RDF terms and triples. Lexical forms are stored verbatim; no value
// normalization happens at this layer.

#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

namespace mdo {

// Well-known namespaces used across the toolkit.
namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
}  // namespace ns

inline std::string rdf_type_iri() { return std::string(ns::rdf) + "type"; }
inline std::string rdf_lang_string_iri() { return std::string(ns::rdf) + "langString"; }
inline std::string xsd_iri(std::string_view local) { return std::string(ns::xsd) + std::string(local); }

class TermError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// True if `iri` is absolute, i.e. starts with a scheme followed by ":".
inline bool is_absolute_iri(std::string_view iri) {
    if (iri.empty()) return false;
    char c = iri.front();
    bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (!alpha) return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
        char d = iri[i];
        if (d == ':') return true;
        bool ok = (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') ||
                  (d >= '0' && d <= '9') || d == '+' || d == '-' || d == '.';
        if (!ok) return false;
    }
    return false;
}

enum class TermKind { Iri, BlankNode, Literal };

// One RDF term. `value` holds the IRI string, the blank-node label, or the
// literal's lexical form depending on `kind`.
struct Term {
    TermKind kind = TermKind::Iri;
    std::string value;
    std::string datatype;  // literals only
    std::string lang;      // language-tagged literals only

    static Term iri(std::string v) {
        if (!is_absolute_iri(v)) throw TermError("IRI is not absolute: <" + v + ">");
        Term t;
        t.kind = TermKind::Iri;
        t.value = std::move(v);
        return t;
    }

    static Term blank(std::string label) {
        if (label.empty()) throw TermError("blank node label must be non-empty");
        Term t;
        t.kind = TermKind::BlankNode;
        t.value = std::move(label);
        return t;
    }

    static Term literal(std::string lexical, std::string datatype_iri) {
        if (!is_absolute_iri(datatype_iri))
            throw TermError("literal datatype is not an absolute IRI: " + datatype_iri);
        if (datatype_iri == rdf_lang_string_iri())
            throw TermError("rdf:langString literal requires a language tag");
        Term t;
        t.kind = TermKind::Literal;
        t.value = std::move(lexical);
        t.datatype = std::move(datatype_iri);
        return t;
    }

    static Term string_literal(std::string lexical) {
        return literal(std::move(lexical), xsd_iri("string"));
    }

    static Term lang_literal(std::string lexical, std::string language) {
        if (language.empty()) throw TermError("language tag must be non-empty");
        Term t;
        t.kind = TermKind::Literal;
        t.value = std::move(lexical);
        t.datatype = rdf_lang_string_iri();
        t.lang = std::move(language);
        return t;
    }

    bool is_iri() const { return kind == TermKind::Iri; }
    bool is_blank() const { return kind == TermKind::BlankNode; }
    bool is_literal() const { return kind == TermKind::Literal; }

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind == b.kind && a.value == b.value && a.datatype == b.datatype &&
               a.lang == b.lang;
    }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
    friend bool operator<(const Term& a, const Term& b) {
        return std::tie(a.kind, a.value, a.datatype, a.lang) <
               std::tie(b.kind, b.value, b.datatype, b.lang);
    }
};

// An RDF statement. Invariants (non-literal subject, IRI predicate) are
// enforced by Graph::insert rather than the aggregate itself.
struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend bool operator==(const Triple& a, const Triple& b) {
        return a.subject == b.subject && a.predicate == b.predicate && a.object == b.object;
    }
    friend bool operator!=(const Triple& a, const Triple& b) { return !(a == b); }
    friend bool operator<(const Triple& a, const Triple& b) {
        return std::tie(a.subject, a.predicate, a.object) <
               std::tie(b.subject, b.predicate, b.object);
    }
};

/// Escape a string for the N-Triples quoted form.
inline std::string escape_ntriples_string(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    static const char* hex = "0123456789ABCDEF";
                    out += "\\u00";
                    out += hex[(c >> 4) & 0xF];
                    out += hex[c & 0xF];
                } else {
                    out += static_cast<char>(c);
                }
        }
    }
    return out;
}

/// Render a term in N-Triples syntax. Also used as the canonical sort key
/// wherever the contract calls for "sorted by term serialization".
inline std::string to_ntriples(const Term& t) {
    switch (t.kind) {
        case TermKind::Iri: return "<" + t.value + ">";
        case TermKind::BlankNode: return "_:" + t.value;
        case TermKind::Literal: break;
    }
    std::string out = "\"" + escape_ntriples_string(t.value) + "\"";
    if (!t.lang.empty()) {
        out += "@" + t.lang;
    } else if (t.datatype != xsd_iri("string")) {
        out += "^^<" + t.datatype + ">";
    }
    return out;
}

inline std::string to_ntriples(const Triple& t) {
    return to_ntriples(t.subject) + " " + to_ntriples(t.predicate) + " " + to_ntriples(t.object) +
           " .";
}

}  // namespace mdo
