#pragma once
// Integrity-constraint validation of an instance graph against the MDO
// axioms, closed-world: a missing required successor is a violation, not an
// unknown. Successor-type checks run over a copy with subclass inferences
// materialized. SubClassOf rules themselves are checked against the graph as
// passed, requiring the explicit supertype triple; callers validating raw
// ingestion output should materialize first (the CLI does).

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mdo/graph.hpp"
#include "mdo/term.hpp"
#include "mdo/vocab.hpp"

namespace mdo {

struct Violation {
    std::string rule_id;   // "Core6a"
    std::string axiom_id;  // "Core6"
    Term focus;
    std::string message;
    Severity severity = Severity::Error;
};

struct ValidationReport {
    std::vector<Violation> violations;  // severity error
    std::vector<Violation> warnings;    // e.g. untyped nodes

    bool conforming() const { return violations.empty(); }

    std::map<std::string, std::size_t> counts_by_axiom() const {
        std::map<std::string, std::size_t> c;
        for (const Violation& v : violations) ++c[v.axiom_id];
        return c;
    }
};

/// Adds (x, rdf:type, D) for every (x, rdf:type, C) with C subclass-of D.
/// Idempotent; the closure is precomputed so one pass reaches the fixpoint.
inline Graph materialize_types(const Graph& g) {
    Graph out = g;
    const Term rdf_type = Term::iri(rdf_type_iri());
    const auto& closure = vocab::subclass_closure();
    for (const Triple& t : g.triples()) {
        if (t.predicate != rdf_type || !t.object.is_iri()) continue;
        auto it = closure.find(t.object.value);
        if (it == closure.end()) continue;
        for (const std::string& super : it->second)
            if (super != t.object.value) out.insert(t.subject, rdf_type, Term::iri(super));
    }
    return out;
}

namespace validator_detail {

struct TypeIndex {
    // class IRI -> nodes carrying that rdf:type
    std::map<std::string, std::vector<Term>> instances;
    // node -> class IRIs
    std::map<Term, std::set<std::string>> types;

    explicit TypeIndex(const Graph& g) {
        const Term rdf_type = Term::iri(rdf_type_iri());
        for (const Triple& t : g.triples()) {
            if (t.predicate == rdf_type && t.object.is_iri()) {
                instances[t.object.value].push_back(t.subject);
                types[t.subject].insert(t.object.value);
            }
        }
    }

    bool has_type(const Term& node, const std::string& cls) const {
        auto it = types.find(node);
        return it != types.end() && it->second.count(cls) > 0;
    }
};

inline std::vector<Term> successors(const Graph& g, const Term& node, const std::string& prop) {
    std::set<Term> out;
    for (const Binding& b :
         g.match({PatternSlot(node), PatternSlot(Term::iri(prop)), PatternSlot::var("o")}))
        out.insert(b.at("o"));
    return {out.begin(), out.end()};
}

inline std::size_t count_typed(const std::vector<Term>& succ, const TypeIndex& types,
                               const std::string& filler) {
    std::size_t n = 0;
    for (const Term& s : succ)
        if (types.has_type(s, filler)) ++n;
    return n;
}

inline std::string curie(const std::string& iri) { return vocab::curie_or_iri(iri); }

inline void check_rule(const vocab::AxiomRule& r, const Graph& mat,
                       const TypeIndex& input_types, const TypeIndex& mat_types,
                       std::vector<Violation>& out) {
    using vocab::RuleKind;
    auto violation = [&](const Term& focus, std::string msg) {
        out.push_back({r.id, r.axiom_id, focus, std::move(msg)});
    };

    if (r.kind == RuleKind::SubClassOf) {
        // explicit supertype required in the graph as passed
        auto it = input_types.instances.find(r.subject_class);
        if (it == input_types.instances.end()) return;
        for (const Term& node : it->second) {
            if (!input_types.has_type(node, r.filler))
                violation(node, "node typed " + curie(r.subject_class) +
                                    " lacks explicit type " + curie(r.filler));
        }
        return;
    }

    auto it = mat_types.instances.find(r.subject_class);
    if (it == mat_types.instances.end()) return;
    for (const Term& node : it->second) {
        switch (r.kind) {
            case RuleKind::Disjoint: {
                if (mat_types.has_type(node, r.filler))
                    violation(node, "node typed both " + curie(r.subject_class) + " and " +
                                        curie(r.filler));
                break;
            }
            case RuleKind::SomeValuesFrom: {
                auto succ = successors(mat, node, r.property);
                if (count_typed(succ, mat_types, r.filler) == 0)
                    violation(node, "missing required " + curie(r.property) + " successor typed " +
                                        curie(r.filler));
                break;
            }
            case RuleKind::AllValuesFrom: {
                for (const Term& s : successors(mat, node, r.property)) {
                    if (!mat_types.has_type(s, r.filler))
                        violation(node, curie(r.property) + " successor " + to_ntriples(s) +
                                            " is not typed " + curie(r.filler));
                }
                break;
            }
            case RuleKind::ExactCardinality:
            case RuleKind::MaxCardinality:
            case RuleKind::MinCardinality: {
                auto succ = successors(mat, node, r.property);
                std::size_t n = count_typed(succ, mat_types, r.filler);
                std::size_t want = static_cast<std::size_t>(r.cardinality);
                bool bad = (r.kind == RuleKind::ExactCardinality && n != want) ||
                           (r.kind == RuleKind::MaxCardinality && n > want) ||
                           (r.kind == RuleKind::MinCardinality && n < want);
                if (bad) {
                    const char* rel = r.kind == RuleKind::ExactCardinality ? "exactly "
                                      : r.kind == RuleKind::MaxCardinality ? "at most "
                                                                           : "at least ";
                    violation(node, "expected " + std::string(rel) + std::to_string(want) + " " +
                                        curie(r.property) + " successor(s) typed " +
                                        curie(r.filler) + ", found " + std::to_string(n));
                }
                break;
            }
            case RuleKind::UnionCardinality: {
                bool any_alt = false;
                for (const auto& alt : r.alternatives) {
                    bool all = true;
                    for (const vocab::CardAtom& atom : alt) {
                        auto succ = successors(mat, node, atom.property);
                        if (count_typed(succ, mat_types, atom.filler) !=
                            static_cast<std::size_t>(atom.n)) {
                            all = false;
                            break;
                        }
                    }
                    if (all) {
                        any_alt = true;
                        break;
                    }
                }
                if (!any_alt)
                    violation(node, "no identification alternative satisfied for " +
                                        curie(r.subject_class));
                break;
            }
            case RuleKind::SubClassOf: break;  // handled above
        }
    }
}

inline void sort_report(std::vector<Violation>& v) {
    std::sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.rule_id, a.focus, a.message) < std::tie(b.rule_id, b.focus, b.message);
    });
}

}  // namespace validator_detail

/// Validate against a specific rule set (used by validate / validate_axiom).
inline ValidationReport validate_rules(const Graph& g, const std::vector<vocab::AxiomRule>& rules,
                                       bool report_untyped = false) {
    ValidationReport report;
    Graph mat = materialize_types(g);
    validator_detail::TypeIndex input_types(g);
    validator_detail::TypeIndex mat_types(mat);
    for (const vocab::AxiomRule& r : rules)
        validator_detail::check_rule(r, mat, input_types, mat_types, report.violations);
    if (report_untyped) {
        std::set<Term> subjects;
        for (const Triple& t : g.triples()) subjects.insert(t.subject);
        for (const Term& s : subjects) {
            if (!mat_types.types.count(s))
                report.warnings.push_back({"untyped-node", "untyped-node", s,
                                           "subject node has no rdf:type", Severity::Warning});
        }
    }
    validator_detail::sort_report(report.violations);
    validator_detail::sort_report(report.warnings);
    return report;
}

/// Full validation against every MDO axiom.
inline ValidationReport validate(const Graph& g) {
    return validate_rules(g, vocab::axioms(), /*report_untyped=*/true);
}

/// Validation restricted to one numbered axiom. Throws UnknownAxiomError for
/// an id outside the tables.
inline ValidationReport validate_axiom(const Graph& g, const std::string& id) {
    return validate_rules(g, vocab::rules_for(id));
}

/// Human-readable report: one line per violation plus a summary.
inline std::string report_text(const ValidationReport& r) {
    std::ostringstream out;
    for (const Violation& v : r.violations)
        out << "error\t" << v.rule_id << "\t" << to_ntriples(v.focus) << "\t" << v.message << "\n";
    for (const Violation& v : r.warnings)
        out << "warning\t" << v.rule_id << "\t" << to_ntriples(v.focus) << "\t" << v.message
            << "\n";
    auto counts = r.counts_by_axiom();
    if (!counts.empty()) {
        out << "# violations by axiom:";
        for (const auto& [id, n] : counts) out << " " << id << "=" << n;
        out << "\n";
    }
    out << (r.conforming() ? "# conforming\n" : "# not conforming\n");
    return out.str();
}

/// Structured report: strictly one tab-separated record per violation.
inline std::string report_structured(const ValidationReport& r) {
    std::ostringstream out;
    for (const Violation& v : r.violations)
        out << v.axiom_id << "\t" << v.rule_id << "\t" << to_ntriples(v.focus) << "\t" << v.message
            << "\n";
    return out.str();
}

}  // namespace mdo
