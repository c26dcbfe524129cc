#pragma once
// The Materials Design Ontology vocabulary: class and property IRIs across
// the Core, Structure, Calculation and Provenance modules plus the external
// terms MDO reuses, and the numbered description-logic axioms encoded as
// data. Core1-Core8, Struc1-Struc13, Cal1-Cal11 and Prov1-Prov4; compound
// axioms decompose into suffixed rules (Core6a, Core6b, ...).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdo/prefix_map.hpp"
#include "mdo/term.hpp"

namespace mdo::vocab {

// Namespace IRIs. core and structure are the published w3id prefixes;
// calculation and provenance follow the same pattern. The prov, emmo and
// chebi namespaces are conventional placeholders: MDO reuses individual
// terms from those ontologies, not their full vocabularies.
namespace ns {
inline constexpr std::string_view core = "https://w3id.org/mdo/core/";
inline constexpr std::string_view structure = "https://w3id.org/mdo/structure/";
inline constexpr std::string_view calculation = "https://w3id.org/mdo/calculation/";
inline constexpr std::string_view provenance = "https://w3id.org/mdo/provenance/";
inline constexpr std::string_view qudt = "http://qudt.org/schema/qudt/";
inline constexpr std::string_view qudt_unit = "http://qudt.org/vocab/unit/";
inline constexpr std::string_view prov = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view emmo = "https://w3id.org/emmo#";
inline constexpr std::string_view chebi = "http://purl.obolibrary.org/obo/chebi/";
}  // namespace ns

enum class TermRole { Class, ObjectProperty, DataProperty, Individual };

struct VocabTerm {
    std::string local;
    std::string ns_label;  // "core", "structure", ...
    std::string ns_iri;
    TermRole role;

    std::string iri() const { return ns_iri + local; }
    std::string curie() const { return ns_label + ":" + local; }
};

enum class RuleKind {
    SubClassOf,
    Disjoint,
    SomeValuesFrom,
    AllValuesFrom,
    ExactCardinality,
    MaxCardinality,
    MinCardinality,
    UnionCardinality,
};

struct CardAtom {
    std::string property;  // absolute IRI
    std::string filler;    // absolute IRI
    int n;
};

// One machine-checkable rule. A compound axiom contributes several rules
// sharing `axiom_id` and distinguished by the letter suffix in `id`.
struct AxiomRule {
    std::string id;        // "Core6a"
    std::string axiom_id;  // "Core6"
    RuleKind kind;
    std::string subject_class;  // absolute IRI
    std::string property;       // empty for SubClassOf / Disjoint
    std::string filler;         // superclass, disjoint partner, or successor type
    int cardinality = -1;
    std::vector<std::vector<CardAtom>> alternatives;  // UnionCardinality only
};

class UnknownAxiomError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string iri(std::string_view ns_iri, std::string_view local) {
    return std::string(ns_iri) + std::string(local);
}

inline std::vector<VocabTerm> build_vocabulary() {
    std::vector<VocabTerm> v;
    auto add = [&](std::string_view ns_label, std::string_view ns_iri, TermRole role,
                   std::initializer_list<const char*> names) {
        for (const char* n : names)
            v.push_back({n, std::string(ns_label), std::string(ns_iri), role});
    };

    add("core", ns::core, TermRole::Class,
        {"Calculation", "Structure", "Property", "CalculatedProperty", "PhysicalProperty"});
    add("core", ns::core, TermRole::ObjectProperty,
        {"hasInputStructure", "hasOutputStructure", "hasInputProperty",
         "hasOutputCalculatedProperty", "relatesToStructure", "relatesToMaterial"});
    add("core", ns::core, TermRole::DataProperty, {"hasPropertyName"});

    add("structure", ns::structure, TermRole::Class,
        {"Composition", "Occupancy", "Species", "Site", "Basis", "Lattice", "AxisVectors",
         "LengthTriple", "AngleTriple", "CoordinateVector", "SpaceGroup", "PointGroup"});
    add("structure", ns::structure, TermRole::ObjectProperty,
        {"hasComposition", "hasOccupancy", "hasSpecies", "hasSite", "hasElement",
         "hasCartesianCoordinates", "hasFractionalCoordinates", "hasBasis", "hasLattice",
         "hasAxisVectors", "hasLengthTriple", "hasAngleTriple", "has_a_axisVector",
         "has_b_axisVector", "has_c_axisVector", "hasSpaceGroup", "hasPointGroup"});
    // data properties beyond hasDescriptiveFormula carry instance payloads
    // (coordinates, cell geometry, symmetry symbols)
    add("structure", ns::structure, TermRole::DataProperty,
        {"hasDescriptiveFormula", "hasSpaceGroupSymbol", "hasPointGroupSymbol", "hasLatticeType",
         "hasCoordinate_x", "hasCoordinate_y", "hasCoordinate_z", "hasLength_a", "hasLength_b",
         "hasLength_c", "hasAngle_alpha", "hasAngle_beta", "hasAngle_gamma"});

    add("calculation", ns::calculation, TermRole::Class,
        {"ComputationalMethod", "ComputationalMethodParameter", "DensityFunctionalTheoryMethod",
         "HartreeFockMethod", "ExchangeCorrelationEnergyFunctional",
         "GeneralizedGradientApproximation", "LocalDensityApproximation",
         "metaGeneralizedGradientApproximation", "HybridFunctional",
         "HybridGeneralizedGradientApproximation", "HybridmetaGeneralizedGradientApproximation"});
    add("calculation", ns::calculation, TermRole::ObjectProperty,
        {"hasComputationalMethod", "hasParameter", "hasXCFunctional"});
    add("calculation", ns::calculation, TermRole::DataProperty, {"hasParameterName"});

    add("provenance", ns::provenance, TermRole::Class, {"ReferenceAgent"});

    // Reused external terms. Prov4 is sometimes quoted as "wasAssociatedwith";
    // PROV-O's conventional camel case is used here.
    add("prov", ns::prov, TermRole::Class, {"Agent", "SoftwareAgent"});
    add("prov", ns::prov, TermRole::ObjectProperty, {"wasAttributedTo", "wasAssociatedWith"});
    add("prov", ns::prov, TermRole::DataProperty, {"generatedAtTime"});
    add("qudt", ns::qudt, TermRole::Class, {"Quantity", "QuantityValue"});
    add("qudt", ns::qudt, TermRole::ObjectProperty, {"quantityValue", "unit"});
    add("qudt", ns::qudt, TermRole::DataProperty, {"numericValue"});
    add("emmo", ns::emmo, TermRole::Class, {"Material"});
    add("chebi", ns::chebi, TermRole::Class, {"Atom"});
    return v;
}

inline std::vector<AxiomRule> build_axioms() {
    const std::string core(ns::core), st(ns::structure), cal(ns::calculation),
        pr(ns::provenance), prov(ns::prov), qudt(ns::qudt), emmo(ns::emmo), chebi(ns::chebi);
    std::vector<AxiomRule> rules;

    auto sub = [&](const char* id, std::string c, std::string super) {
        rules.push_back({id, id, RuleKind::SubClassOf, std::move(c), "", std::move(super), -1, {}});
    };
    auto split_id = [](const std::string& full) {
        std::string axiom = full;
        while (!axiom.empty() && axiom.back() >= 'a' && axiom.back() <= 'z' &&
               full.size() > 4)  // trailing lowercase letter = rule suffix
            axiom.pop_back();
        return axiom;
    };
    auto rule = [&](const char* id, RuleKind kind, std::string c, std::string p, std::string f,
                    int n = -1) {
        AxiomRule r{id, split_id(id), kind, std::move(c), std::move(p), std::move(f), n, {}};
        rules.push_back(std::move(r));
    };

    // Core module
    sub("Core1", core + "CalculatedProperty", core + "Property");
    sub("Core2", core + "PhysicalProperty", core + "Property");
    rules.push_back({"Core3", "Core3", RuleKind::Disjoint, core + "CalculatedProperty", "",
                     core + "PhysicalProperty", -1, {}});
    sub("Core4", core + "Property", qudt + "Quantity");
    rule("Core5", RuleKind::AllValuesFrom, core + "Property", core + "relatesToStructure",
         core + "Structure");
    rule("Core6a", RuleKind::SomeValuesFrom, core + "Calculation", core + "hasInputStructure",
         core + "Structure");
    rule("Core6b", RuleKind::AllValuesFrom, core + "Calculation", core + "hasInputStructure",
         core + "Structure");
    rule("Core6c", RuleKind::AllValuesFrom, core + "Calculation", core + "hasOutputStructure",
         core + "Structure");
    rule("Core7a", RuleKind::SomeValuesFrom, core + "Calculation", core + "hasInputProperty",
         core + "Property");
    rule("Core7b", RuleKind::AllValuesFrom, core + "Calculation", core + "hasInputProperty",
         core + "Property");
    rule("Core7c", RuleKind::AllValuesFrom, core + "Calculation",
         core + "hasOutputCalculatedProperty", core + "CalculatedProperty");
    rule("Core8a", RuleKind::SomeValuesFrom, core + "Structure", core + "relatesToMaterial",
         emmo + "Material");
    rule("Core8b", RuleKind::AllValuesFrom, core + "Structure", core + "relatesToMaterial",
         emmo + "Material");

    // Structure module
    rule("Struc1a", RuleKind::ExactCardinality, core + "Structure", st + "hasComposition",
         st + "Composition", 1);
    rule("Struc1b", RuleKind::AllValuesFrom, core + "Structure", st + "hasComposition",
         st + "Composition");
    rule("Struc2a", RuleKind::SomeValuesFrom, core + "Structure", st + "hasOccupancy",
         st + "Occupancy");
    rule("Struc2b", RuleKind::AllValuesFrom, core + "Structure", st + "hasOccupancy",
         st + "Occupancy");
    rule("Struc3a", RuleKind::SomeValuesFrom, st + "Occupancy", st + "hasSpecies", st + "Species");
    rule("Struc3b", RuleKind::AllValuesFrom, st + "Occupancy", st + "hasSpecies", st + "Species");
    rule("Struc4a", RuleKind::SomeValuesFrom, st + "Occupancy", st + "hasSite", st + "Site");
    rule("Struc4b", RuleKind::AllValuesFrom, st + "Occupancy", st + "hasSite", st + "Site");
    rule("Struc5", RuleKind::ExactCardinality, st + "Species", st + "hasElement", chebi + "Atom",
         1);
    rule("Struc6a", RuleKind::MaxCardinality, st + "Site", st + "hasCartesianCoordinates",
         st + "CoordinateVector", 1);
    rule("Struc6b", RuleKind::AllValuesFrom, st + "Site", st + "hasCartesianCoordinates",
         st + "CoordinateVector");
    rule("Struc7a", RuleKind::MaxCardinality, st + "Site", st + "hasFractionalCoordinates",
         st + "CoordinateVector", 1);
    rule("Struc7b", RuleKind::AllValuesFrom, st + "Site", st + "hasFractionalCoordinates",
         st + "CoordinateVector");
    rule("Struc8a", RuleKind::SomeValuesFrom, core + "Structure", st + "hasBasis", st + "Basis");
    rule("Struc8b", RuleKind::AllValuesFrom, core + "Structure", st + "hasBasis", st + "Basis");
    rule("Struc8c", RuleKind::AllValuesFrom, core + "Structure", st + "hasLattice",
         st + "Lattice");
    auto union_rule = [&](const char* id, std::string subject) {
        AxiomRule r{id, id, RuleKind::UnionCardinality, std::move(subject), "", "", -1, {}};
        r.alternatives.push_back({{st + "hasAxisVectors", st + "AxisVectors", 1}});
        r.alternatives.push_back({{st + "hasLengthTriple", st + "LengthTriple", 1},
                                  {st + "hasAngleTriple", st + "AngleTriple", 1}});
        rules.push_back(std::move(r));
    };
    union_rule("Struc9", st + "Basis");
    union_rule("Struc10", st + "Lattice");
    rule("Struc11a", RuleKind::ExactCardinality, st + "AxisVectors", st + "has_a_axisVector",
         st + "CoordinateVector", 1);
    rule("Struc11b", RuleKind::ExactCardinality, st + "AxisVectors", st + "has_b_axisVector",
         st + "CoordinateVector", 1);
    rule("Struc11c", RuleKind::ExactCardinality, st + "AxisVectors", st + "has_c_axisVector",
         st + "CoordinateVector", 1);
    rule("Struc12a", RuleKind::ExactCardinality, core + "Structure", st + "hasSpaceGroup",
         st + "SpaceGroup", 1);
    rule("Struc12b", RuleKind::AllValuesFrom, core + "Structure", st + "hasSpaceGroup",
         st + "SpaceGroup");
    rule("Struc13a", RuleKind::SomeValuesFrom, st + "SpaceGroup", st + "hasPointGroup",
         st + "PointGroup");
    rule("Struc13b", RuleKind::AllValuesFrom, st + "SpaceGroup", st + "hasPointGroup",
         st + "PointGroup");

    // Calculation module
    rule("Cal1", RuleKind::ExactCardinality, core + "Calculation", cal + "hasComputationalMethod",
         cal + "ComputationalMethod", 1);
    rule("Cal2a", RuleKind::SomeValuesFrom, cal + "ComputationalMethod", cal + "hasParameter",
         cal + "ComputationalMethodParameter");
    rule("Cal2b", RuleKind::AllValuesFrom, cal + "ComputationalMethod", cal + "hasParameter",
         cal + "ComputationalMethodParameter");
    sub("Cal3", cal + "DensityFunctionalTheoryMethod", cal + "ComputationalMethod");
    sub("Cal4", cal + "HartreeFockMethod", cal + "ComputationalMethod");
    rule("Cal5a", RuleKind::SomeValuesFrom, cal + "DensityFunctionalTheoryMethod",
         cal + "hasXCFunctional", cal + "ExchangeCorrelationEnergyFunctional");
    rule("Cal5b", RuleKind::AllValuesFrom, cal + "DensityFunctionalTheoryMethod",
         cal + "hasXCFunctional", cal + "ExchangeCorrelationEnergyFunctional");
    sub("Cal6", cal + "GeneralizedGradientApproximation",
        cal + "ExchangeCorrelationEnergyFunctional");
    sub("Cal7", cal + "LocalDensityApproximation", cal + "ExchangeCorrelationEnergyFunctional");
    sub("Cal8", cal + "metaGeneralizedGradientApproximation",
        cal + "ExchangeCorrelationEnergyFunctional");
    sub("Cal9", cal + "HybridFunctional", cal + "ExchangeCorrelationEnergyFunctional");
    sub("Cal10", cal + "HybridGeneralizedGradientApproximation", cal + "HybridFunctional");
    sub("Cal11", cal + "HybridmetaGeneralizedGradientApproximation", cal + "HybridFunctional");

    // Provenance module
    sub("Prov1", pr + "ReferenceAgent", prov + "Agent");
    rule("Prov2", RuleKind::AllValuesFrom, core + "Structure", prov + "wasAttributedTo",
         pr + "ReferenceAgent");
    rule("Prov3", RuleKind::AllValuesFrom, core + "Property", prov + "wasAttributedTo",
         pr + "ReferenceAgent");
    rule("Prov4", RuleKind::SomeValuesFrom, core + "Calculation", prov + "wasAssociatedWith",
         prov + "SoftwareAgent");

    return rules;
}

}  // namespace detail

inline const std::vector<VocabTerm>& vocabulary() {
    static const std::vector<VocabTerm> v = detail::build_vocabulary();
    return v;
}

inline const std::vector<AxiomRule>& axioms() {
    static const std::vector<AxiomRule> a = detail::build_axioms();
    return a;
}

inline std::optional<VocabTerm> lookup(std::string_view local) {
    for (const VocabTerm& t : vocabulary())
        if (t.local == local) return t;
    return std::nullopt;
}

inline std::optional<VocabTerm> lookup(std::string_view ns_label, std::string_view local) {
    for (const VocabTerm& t : vocabulary())
        if (t.ns_label == ns_label && t.local == local) return t;
    return std::nullopt;
}

/// Rules belonging to one numbered axiom ("Core6" selects Core6a..Core6c;
/// an exact rule id like "Core6a" selects just that rule).
inline std::vector<AxiomRule> rules_for(const std::string& id) {
    std::vector<AxiomRule> out;
    for (const AxiomRule& r : axioms())
        if (r.axiom_id == id || r.id == id) out.push_back(r);
    if (out.empty()) throw UnknownAxiomError("unknown axiom id: " + id);
    return out;
}

/// Sorted list of the numbered axiom ids.
inline std::vector<std::string> axiom_ids() {
    std::set<std::string> ids;
    for (const AxiomRule& r : axioms()) ids.insert(r.axiom_id);
    return {ids.begin(), ids.end()};
}

namespace detail {

inline std::map<std::string, std::set<std::string>> closure_from(
    const std::vector<AxiomRule>& rules) {
    std::map<std::string, std::set<std::string>> up;  // class -> direct superclasses
    std::set<std::string> classes;
    for (const AxiomRule& r : rules) {
        if (r.kind != RuleKind::SubClassOf) continue;
        up[r.subject_class].insert(r.filler);
        classes.insert(r.subject_class);
        classes.insert(r.filler);
    }
    std::map<std::string, std::set<std::string>> closure;
    for (const std::string& c : classes) {
        std::set<std::string> seen{c};
        std::vector<std::string> stack{c};
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            auto it = up.find(cur);
            if (it == up.end()) continue;
            for (const std::string& super : it->second) {
                if (super == c) throw std::runtime_error("subclass cycle through " + c);
                if (seen.insert(super).second) stack.push_back(super);
            }
        }
        closure[c] = std::move(seen);
    }
    return closure;
}

}  // namespace detail

/// Reflexive-transitive closure of the SubClassOf axioms, as a map from
/// class IRI to the set of its superclasses (including itself). Throws on a
/// cycle; the MDO hierarchy is acyclic.
inline const std::map<std::string, std::set<std::string>>& subclass_closure() {
    static const auto c = detail::closure_from(axioms());
    return c;
}

inline bool is_subclass_of(const std::string& sub, const std::string& super) {
    if (sub == super) return true;
    auto it = subclass_closure().find(sub);
    return it != subclass_closure().end() && it->second.count(super) > 0;
}

/// Prefix map covering every namespace the vocabulary uses, in a fixed
/// order. Handy for serializing fixtures and reports.
inline PrefixMap standard_prefixes() {
    PrefixMap p;
    p.bind("rdf", std::string(mdo::ns::rdf));
    p.bind("xsd", std::string(mdo::ns::xsd));
    p.bind("core", std::string(ns::core));
    p.bind("structure", std::string(ns::structure));
    p.bind("calculation", std::string(ns::calculation));
    p.bind("provenance", std::string(ns::provenance));
    p.bind("qudt", std::string(ns::qudt));
    p.bind("qudt_unit", std::string(ns::qudt_unit));
    p.bind("prov", std::string(ns::prov));
    p.bind("emmo", std::string(ns::emmo));
    p.bind("chebi", std::string(ns::chebi));
    return p;
}

inline std::string curie_or_iri(const std::string& iri) {
    static const PrefixMap p = standard_prefixes();
    if (auto c = p.compact(iri)) return c->first + ":" + c->second;
    return "<" + iri + ">";
}

namespace detail {

inline const char* rule_kind_name(RuleKind k) {
    switch (k) {
        case RuleKind::SubClassOf: return "subclass-of";
        case RuleKind::Disjoint: return "disjoint";
        case RuleKind::SomeValuesFrom: return "some-values-from";
        case RuleKind::AllValuesFrom: return "all-values-from";
        case RuleKind::ExactCardinality: return "exact-cardinality";
        case RuleKind::MaxCardinality: return "max-cardinality";
        case RuleKind::MinCardinality: return "min-cardinality";
        case RuleKind::UnionCardinality: return "union-cardinality";
    }
    return "?";
}

inline const char* role_name(TermRole r) {
    switch (r) {
        case TermRole::Class: return "class";
        case TermRole::ObjectProperty: return "object-property";
        case TermRole::DataProperty: return "data-property";
        case TermRole::Individual: return "individual";
    }
    return "?";
}

}  // namespace detail

/// Tab-separated manifest of the vocabulary and axiom tables, one record per
/// line, so non-code consumers can diff it against the published ontology.
inline std::string manifest() {
    std::ostringstream out;
    std::vector<VocabTerm> terms = vocabulary();
    std::sort(terms.begin(), terms.end(), [](const VocabTerm& a, const VocabTerm& b) {
        return std::tie(a.ns_label, a.local) < std::tie(b.ns_label, b.local);
    });
    for (const VocabTerm& t : terms)
        out << "term\t" << detail::role_name(t.role) << "\t" << t.curie() << "\t" << t.iri()
            << "\n";
    for (const AxiomRule& r : axioms()) {
        if (r.kind == RuleKind::UnionCardinality) {
            for (std::size_t alt = 0; alt < r.alternatives.size(); ++alt)
                for (const CardAtom& atom : r.alternatives[alt])
                    out << "axiom\t" << r.id << "\tunion-alt" << (alt + 1) << "\t"
                        << curie_or_iri(r.subject_class) << "\t" << curie_or_iri(atom.property)
                        << "\t" << curie_or_iri(atom.filler) << "\t" << atom.n << "\n";
            continue;
        }
        out << "axiom\t" << r.id << "\t" << detail::rule_kind_name(r.kind) << "\t"
            << curie_or_iri(r.subject_class) << "\t"
            << (r.property.empty() ? "-" : curie_or_iri(r.property)) << "\t"
            << curie_or_iri(r.filler) << "\t" << (r.cardinality < 0 ? std::string("-")
                                                                    : std::to_string(r.cardinality))
            << "\n";
    }
    return out.str();
}

}  // namespace mdo::vocab
