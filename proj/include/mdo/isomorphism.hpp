#pragma once
// RDF graph isomorphism: equality of triple sets up to a bijective renaming
// of blank node labels. Exhaustive backtracking with signature pruning;
// fixture graphs stay well under 50 blank nodes.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mdo/graph.hpp"
#include "mdo/term.hpp"

namespace mdo {

/// How literals are compared during isomorphism checks.
enum class LiteralEquality {
    Lexical,       // (lexical form, datatype, language) must match exactly
    NumericValue,  // numeric literals compare by value ("1.5623" == "1.5623e0")
};

inline bool is_numeric_datatype(const std::string& dt) {
    return dt == xsd_iri("integer") || dt == xsd_iri("decimal") || dt == xsd_iri("double") ||
           dt == xsd_iri("float");
}

inline std::optional<long double> parse_numeric_literal(const Term& t) {
    if (!t.is_literal() || !is_numeric_datatype(t.datatype)) return std::nullopt;
    const char* begin = t.value.c_str();
    char* end = nullptr;
    long double v = std::strtold(begin, &end);
    if (end == begin || *end != '\0') return std::nullopt;
    return v;
}

namespace detail {

// Canonicalize a term under a literal-equality mode so exact comparison can
// be used afterwards.
inline Term canon_term(const Term& t, LiteralEquality mode) {
    if (mode == LiteralEquality::Lexical || !t.is_literal()) return t;
    auto v = parse_numeric_literal(t);
    if (!v) return t;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.21Lg", *v);
    Term out = t;
    out.value = buf;
    out.datatype = xsd_iri("double");  // erased: numeric value identity only
    return out;
}

inline Triple canon_triple(const Triple& t, LiteralEquality mode) {
    return Triple{canon_term(t.subject, mode), t.predicate, canon_term(t.object, mode)};
}

struct SplitGraph {
    std::set<Triple> ground;
    std::vector<Triple> with_blanks;
    std::vector<std::string> labels;

    explicit SplitGraph(const Graph& g, LiteralEquality mode) {
        std::set<std::string> label_set;
        for (const Triple& raw : g.triples()) {
            Triple t = canon_triple(raw, mode);
            if (t.subject.is_blank() || t.object.is_blank()) {
                if (t.subject.is_blank()) label_set.insert(t.subject.value);
                if (t.object.is_blank()) label_set.insert(t.object.value);
                with_blanks.push_back(std::move(t));
            } else {
                ground.insert(std::move(t));
            }
        }
        labels.assign(label_set.begin(), label_set.end());
    }
};

// Per-blank-node signature: sorted serializations of its incident triples
// with every blank replaced by a placeholder. Bijection candidates must have
// identical signatures.
inline std::map<std::string, std::vector<std::string>> signatures(const SplitGraph& sg) {
    std::map<std::string, std::vector<std::string>> sig;
    for (const std::string& l : sg.labels) sig[l];  // ensure entry
    auto masked = [](const Term& t) {
        return t.is_blank() ? std::string("_:*") : to_ntriples(t);
    };
    for (const Triple& t : sg.with_blanks) {
        std::string line = masked(t.subject) + " " + to_ntriples(t.predicate) + " " +
                           masked(t.object);
        if (t.subject.is_blank()) sig[t.subject.value].push_back("S " + line);
        if (t.object.is_blank()) sig[t.object.value].push_back("O " + line);
    }
    for (auto& [l, v] : sig) std::sort(v.begin(), v.end());
    return sig;
}

}  // namespace detail

/// True iff some bijection between blank node labels makes the triple sets
/// equal. Ground triples must match exactly (up to the literal mode).
inline bool isomorphic(const Graph& g1, const Graph& g2,
                       LiteralEquality mode = LiteralEquality::Lexical) {
    if (g1.size() != g2.size()) return false;
    detail::SplitGraph a(g1, mode), b(g2, mode);
    if (a.ground != b.ground) return false;
    if (a.labels.size() != b.labels.size()) return false;
    if (a.with_blanks.size() != b.with_blanks.size()) return false;

    auto sig_a = detail::signatures(a);
    auto sig_b = detail::signatures(b);
    {
        // Signature histograms must agree before any search is worthwhile.
        std::vector<std::vector<std::string>> ha, hb;
        for (auto& [l, s] : sig_a) ha.push_back(s);
        for (auto& [l, s] : sig_b) hb.push_back(s);
        std::sort(ha.begin(), ha.end());
        std::sort(hb.begin(), hb.end());
        if (ha != hb) return false;
    }

    // Order the search by most-constrained label first (largest signature).
    std::vector<std::string> order = a.labels;
    std::sort(order.begin(), order.end(), [&](const std::string& x, const std::string& y) {
        return sig_a[x].size() > sig_a[y].size();
    });

    std::set<Triple> target(b.with_blanks.begin(), b.with_blanks.end());
    std::map<std::string, std::string> assign;
    std::set<std::string> used;

    auto rename = [&](const Term& t) -> std::optional<Term> {
        if (!t.is_blank()) return t;
        auto it = assign.find(t.value);
        if (it == assign.end()) return std::nullopt;
        return Term::blank(it->second);
    };

    // Checks every triple of `a` whose blanks are all assigned.
    auto consistent = [&]() {
        for (const Triple& t : a.with_blanks) {
            auto s = rename(t.subject);
            auto o = rename(t.object);
            if (!s || !o) continue;
            if (!target.count(Triple{*s, t.predicate, *o})) return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
        if (i == order.size()) return consistent();
        const std::string& la = order[i];
        for (const std::string& lb : b.labels) {
            if (used.count(lb) || sig_a[la] != sig_b[lb]) continue;
            assign[la] = lb;
            used.insert(lb);
            if (consistent() && search(i + 1)) return true;
            assign.erase(la);
            used.erase(lb);
        }
        return false;
    };
    return search(0);
}

}  // namespace mdo
