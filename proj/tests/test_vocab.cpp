#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mdo/vocab.hpp"

using namespace mdo;
using namespace mdo::vocab;

TEST_CASE("lookup finds classes and properties in their namespaces") {
    auto cp = lookup("CalculatedProperty");
    REQUIRE(cp);
    CHECK(cp->role == TermRole::Class);
    CHECK(cp->ns_label == "core");
    CHECK(cp->iri() == "https://w3id.org/mdo/core/CalculatedProperty");

    auto df = lookup("hasDescriptiveFormula");
    REQUIRE(df);
    CHECK(df->role == TermRole::DataProperty);
    CHECK(df->ns_label == "structure");
    CHECK(df->iri() == "https://w3id.org/mdo/structure/hasDescriptiveFormula");

    CHECK_FALSE(lookup("nonexistent"));
    CHECK(lookup("qudt", "QuantityValue"));
    CHECK_FALSE(lookup("core", "QuantityValue"));
}

TEST_CASE("namespace IRIs match the published prefixes") {
    CHECK(vocab::ns::core == "https://w3id.org/mdo/core/");
    CHECK(vocab::ns::structure == "https://w3id.org/mdo/structure/");
    CHECK(vocab::ns::qudt == "http://qudt.org/schema/qudt/");
    CHECK(vocab::ns::qudt_unit == "http://qudt.org/vocab/unit/");
}

TEST_CASE("the published class and property names are all present") {
    for (const char* cls :
         {"Calculation", "Structure", "Property", "CalculatedProperty", "PhysicalProperty",
          "Material", "Composition", "Occupancy", "Species", "Site", "Basis", "Lattice",
          "AxisVectors", "LengthTriple", "AngleTriple", "CoordinateVector", "SpaceGroup",
          "PointGroup", "ComputationalMethod", "ComputationalMethodParameter",
          "DensityFunctionalTheoryMethod", "HartreeFockMethod",
          "ExchangeCorrelationEnergyFunctional", "GeneralizedGradientApproximation",
          "LocalDensityApproximation", "metaGeneralizedGradientApproximation", "HybridFunctional",
          "HybridGeneralizedGradientApproximation", "HybridmetaGeneralizedGradientApproximation",
          "ReferenceAgent", "Agent", "SoftwareAgent", "Quantity", "QuantityValue", "Atom"}) {
        auto t = lookup(cls);
        CAPTURE(cls);
        REQUIRE(t);
        CHECK(t->role == TermRole::Class);
    }
    for (const char* prop :
         {"hasInputStructure", "hasOutputStructure", "hasInputProperty",
          "hasOutputCalculatedProperty", "relatesToStructure", "relatesToMaterial",
          "hasComposition", "hasOccupancy", "hasSpecies", "hasSite", "hasElement",
          "hasCartesianCoordinates", "hasFractionalCoordinates", "hasBasis", "hasLattice",
          "hasAxisVectors", "hasLengthTriple", "hasAngleTriple", "has_a_axisVector",
          "has_b_axisVector", "has_c_axisVector", "hasSpaceGroup", "hasPointGroup",
          "hasComputationalMethod", "hasParameter", "hasXCFunctional", "wasAttributedTo",
          "wasAssociatedWith", "quantityValue", "unit"}) {
        auto t = lookup(prop);
        CAPTURE(prop);
        REQUIRE(t);
        CHECK(t->role == TermRole::ObjectProperty);
    }
    for (const char* prop : {"hasPropertyName", "hasDescriptiveFormula", "numericValue"}) {
        auto t = lookup(prop);
        CAPTURE(prop);
        REQUIRE(t);
        CHECK(t->role == TermRole::DataProperty);
    }
}

TEST_CASE("every numbered axiom id has at least one rule") {
    std::set<std::string> want;
    for (int i = 1; i <= 8; ++i) want.insert("Core" + std::to_string(i));
    for (int i = 1; i <= 13; ++i) want.insert("Struc" + std::to_string(i));
    for (int i = 1; i <= 11; ++i) want.insert("Cal" + std::to_string(i));
    for (int i = 1; i <= 4; ++i) want.insert("Prov" + std::to_string(i));
    REQUIRE(want.size() == 36);

    std::set<std::string> have;
    for (const AxiomRule& r : axioms()) have.insert(r.axiom_id);
    CHECK(have == want);

    // rule ids are unique
    std::set<std::string> rule_ids;
    for (const AxiomRule& r : axioms()) CHECK(rule_ids.insert(r.id).second);
}

TEST_CASE("Core3 is the disjointness of calculated and physical properties") {
    auto rules = rules_for("Core3");
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].kind == RuleKind::Disjoint);
    CHECK(rules[0].subject_class == "https://w3id.org/mdo/core/CalculatedProperty");
    CHECK(rules[0].filler == "https://w3id.org/mdo/core/PhysicalProperty");
}

TEST_CASE("Cal1 is an exact-cardinality restriction") {
    auto rules = rules_for("Cal1");
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].kind == RuleKind::ExactCardinality);
    CHECK(rules[0].subject_class == "https://w3id.org/mdo/core/Calculation");
    CHECK(rules[0].property == "https://w3id.org/mdo/calculation/hasComputationalMethod");
    CHECK(rules[0].filler == "https://w3id.org/mdo/calculation/ComputationalMethod");
    CHECK(rules[0].cardinality == 1);
}

TEST_CASE("Struc9 offers the axis-vectors or length-and-angle alternatives") {
    auto rules = rules_for("Struc9");
    REQUIRE(rules.size() == 1);
    const AxiomRule& r = rules[0];
    CHECK(r.kind == RuleKind::UnionCardinality);
    REQUIRE(r.alternatives.size() == 2);
    REQUIRE(r.alternatives[0].size() == 1);
    CHECK(r.alternatives[0][0].property == "https://w3id.org/mdo/structure/hasAxisVectors");
    CHECK(r.alternatives[0][0].n == 1);
    REQUIRE(r.alternatives[1].size() == 2);
    CHECK(r.alternatives[1][0].property == "https://w3id.org/mdo/structure/hasLengthTriple");
    CHECK(r.alternatives[1][1].property == "https://w3id.org/mdo/structure/hasAngleTriple");
}

TEST_CASE("compound axioms decompose into suffixed rules") {
    auto core6 = rules_for("Core6");
    CHECK(core6.size() == 3);
    auto core6a = rules_for("Core6a");
    REQUIRE(core6a.size() == 1);
    CHECK(core6a[0].kind == RuleKind::SomeValuesFrom);
    CHECK_THROWS_AS(rules_for("Core99"), UnknownAxiomError);
}

TEST_CASE("subclass closure follows the functional hierarchy") {
    std::string hgga = "https://w3id.org/mdo/calculation/HybridGeneralizedGradientApproximation";
    std::string xcf = "https://w3id.org/mdo/calculation/ExchangeCorrelationEnergyFunctional";
    CHECK(is_subclass_of(hgga, xcf));  // via HybridFunctional
    CHECK(is_subclass_of("https://w3id.org/mdo/core/CalculatedProperty",
                         "http://qudt.org/schema/qudt/Quantity"));  // via Property
    CHECK(is_subclass_of("https://w3id.org/mdo/provenance/ReferenceAgent",
                         "http://www.w3.org/ns/prov#Agent"));
    CHECK_FALSE(is_subclass_of("https://w3id.org/mdo/core/Structure",
                               "https://w3id.org/mdo/core/Calculation"));
    // reflexive
    CHECK(is_subclass_of(xcf, xcf));
}

TEST_CASE("subclass closure is antisymmetric on distinct classes") {
    for (const auto& [c, supers] : subclass_closure()) {
        for (const std::string& s : supers) {
            if (s == c) continue;
            CHECK_FALSE(is_subclass_of(s, c));
        }
    }
}

TEST_CASE("a subclass cycle is a hard error") {
    std::vector<AxiomRule> bad;
    bad.push_back({"X1", "X1", RuleKind::SubClassOf, "http://e/A", "", "http://e/B", -1, {}});
    bad.push_back({"X2", "X2", RuleKind::SubClassOf, "http://e/B", "", "http://e/A", -1, {}});
    CHECK_THROWS(vocab::detail::closure_from(bad));
}

TEST_CASE("axiom rules never reference properties missing from the vocabulary") {
    std::set<std::string> known;
    for (const VocabTerm& t : vocabulary()) known.insert(t.iri());
    for (const AxiomRule& r : axioms()) {
        CHECK(known.count(r.subject_class) == 1);
        if (!r.property.empty()) CHECK(known.count(r.property) == 1);
        if (r.kind != RuleKind::UnionCardinality && !r.filler.empty())
            CHECK(known.count(r.filler) == 1);
        for (const auto& alt : r.alternatives) {
            for (const CardAtom& atom : alt) {
                CHECK(known.count(atom.property) == 1);
                CHECK(known.count(atom.filler) == 1);
            }
        }
    }
}

TEST_CASE("the manifest is deterministic and carries both tables") {
    std::string m1 = manifest();
    CHECK(m1 == manifest());
    CHECK(m1.find("term\tclass\tcore:Calculation\thttps://w3id.org/mdo/core/Calculation\n") !=
          std::string::npos);
    CHECK(m1.find("axiom\tCore3\tdisjoint\tcore:CalculatedProperty\t-\tcore:PhysicalProperty\t-") !=
          std::string::npos);
    CHECK(m1.find("axiom\tStruc9\tunion-alt1\tstructure:Basis\tstructure:hasAxisVectors\t"
                  "structure:AxisVectors\t1") != std::string::npos);
}
