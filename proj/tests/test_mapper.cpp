#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mdo/isomorphism.hpp"
#include "mdo/mapping.hpp"
#include "mdo/serialize.hpp"
#include "mdo/turtle.hpp"
#include "mdo/validator.hpp"
#include "mdo/vocab.hpp"

#include "test_support.hpp"

using namespace mdo;
namespace ts = test_support;

namespace {

JsonValue json(const std::string& text) {
    auto r = parse_json(text);
    REQUIRE(r.ok);
    return std::move(r.value);
}

MappingTemplate load_template(const std::string& name) {
    auto r = parse_template(ts::slurp(ts::data_path("templates/" + name)));
    if (!r.ok)
        UNSCOPED_INFO("parse failed: " << r.diagnostics[0].message << " at line "
                                        << r.diagnostics[0].line);
    REQUIRE(r.ok);
    return std::move(r.tmpl);
}

std::size_t count_instances(const Graph& g, const std::string& class_iri) {
    return g.match({PatternSlot::var("x"), PatternSlot(Term::iri(rdf_type_iri())),
                    PatternSlot(Term::iri(class_iri))})
        .size();
}

}  // namespace

// --- path evaluation --------------------------------------------------------

TEST_CASE("eval_path selects scalar fields") {
    JsonValue doc = json(R"({"band_gap": 1.5623})");
    auto hits = eval_path(doc, parse_path("$.band_gap"));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0]->kind == JsonValue::Kind::Number);
    CHECK(hits[0]->text == "1.5623");
}

TEST_CASE("eval_path on a missing field is empty, not an error") {
    JsonValue doc = json("{}");
    CHECK(eval_path(doc, parse_path("$.band_gap")).empty());
    CHECK(eval_path(doc, parse_path("$.a.b[3].c")).empty());
}

TEST_CASE("wildcards fan out over arrays") {
    JsonValue doc = json(R"({"sites":[{"xyz":[0,0,0]},{"xyz":[1,1,1]}]})");
    auto hits = eval_path(doc, parse_path("$.sites[*].xyz"));
    REQUIRE(hits.size() == 2);
    CHECK(hits[0]->kind == JsonValue::Kind::Array);
    auto first = eval_path(doc, parse_path("$.sites[0].xyz[2]"));
    REQUIRE(first.size() == 1);
    CHECK(first[0]->text == "0");
}

TEST_CASE("number lexical forms are preserved from the source") {
    JsonValue doc = json(R"({"a": 1.50, "b": 1e3, "c": 42})");
    CHECK(eval_path(doc, parse_path("$.a"))[0]->text == "1.50");
    CHECK(eval_path(doc, parse_path("$.b"))[0]->text == "1e3");
    CHECK(eval_path(doc, parse_path("$.c"))[0]->text == "42");
}

TEST_CASE("unsupported path syntax is rejected with a position") {
    CHECK_THROWS_AS(parse_path("$..x"), PathError);
    CHECK_THROWS_AS(parse_path("$.a[?(@.b)]"), PathError);
    CHECK_THROWS_AS(parse_path("x.y"), PathError);
    CHECK_THROWS_AS(parse_path("$.a["), PathError);
    try {
        parse_path("$..x");
    } catch (const PathError& e) {
        CHECK(e.column == 3);
    }
}

// --- template parsing -------------------------------------------------------

TEST_CASE("the band-gap template parses to one nested block and three bindings") {
    MappingTemplate t = load_template("band_gap.tmpl");
    CHECK(t.root.binds.size() == 3);
    REQUIRE(t.root.children.size() == 1);
    CHECK_FALSE(t.root.children[0].has_iterator);
    CHECK(t.root.triples.size() == 3);
    CHECK(t.root.children[0].triples.size() == 3);
    CHECK(t.source_var == "source");
}

TEST_CASE("use of an undeclared variable is a static error") {
    auto r = parse_template(
        "PREFIX x: <http://e/>\n"
        "GENERATE { ?node x:p \"v\" . }\n"
        "SOURCE <*> AS ?source\n"
        "WHERE { BIND(JSONPATH(?source, \"$.a\") AS ?other) }");
    REQUIRE_FALSE(r.ok);
    CHECK(r.diagnostics[0].message.find("unbound variable ?node") != std::string::npos);
}

TEST_CASE("rebinding a variable in one scope is a static error") {
    auto r = parse_template(
        "GENERATE { }\n"
        "SOURCE <*> AS ?source\n"
        "WHERE { BIND(BNODE() AS ?x) BIND(BNODE() AS ?x) }");
    REQUIRE_FALSE(r.ok);
    CHECK(r.diagnostics[0].message.find("bound more than once") != std::string::npos);
}

TEST_CASE("syntax errors carry a position") {
    auto r = parse_template("GENERATE { ?a ?b ?c }");  // variable predicate unsupported
    REQUIRE_FALSE(r.ok);
    CHECK(r.diagnostics[0].line == 1);
}

TEST_CASE("an empty template body emits nothing on any input") {
    auto r = parse_template("GENERATE { }\nSOURCE <*> AS ?source");
    REQUIRE(r.ok);
    CHECK(apply_template(r.tmpl, json("{}"), "d1").empty());
    CHECK(apply_template(r.tmpl, json(R"({"band_gap": 2})"), "d2").empty());
}

TEST_CASE("templates round-trip through the pretty printer") {
    for (const char* name : {"band_gap.tmpl", "materials_project.tmpl", "optimade.tmpl"}) {
        CAPTURE(name);
        MappingTemplate t = load_template(name);
        std::string printed = print_template(t);
        auto again = parse_template(printed);
        REQUIRE(again.ok);
        CHECK(print_template(again.tmpl) == printed);
    }
}

// --- application ------------------------------------------------------------

TEST_CASE("the band-gap template reproduces the golden graph") {
    MappingTemplate t = load_template("band_gap.tmpl");
    JsonValue doc = json(ts::slurp(ts::fixture_path("docs/mp-989579.json")));
    Graph g = apply_template(t, doc, "mp-989579");
    CHECK(g.size() == 6);

    auto golden = parse_turtle(ts::slurp(ts::fixture_path("band_gap_golden.ttl")));
    REQUIRE(golden.ok);
    CHECK_FALSE(isomorphic(g, golden.graph));  // "1.5623" vs "1.5623e0" lexically
    CHECK(isomorphic(g, golden.graph, LiteralEquality::NumericValue));
}

TEST_CASE("a template applied to an empty document emits nothing and reports soft errors") {
    MappingTemplate t = load_template("band_gap.tmpl");
    Graph out;
    IngestionStats stats;
    std::vector<SoftError> soft;
    apply_template_into(t, json("{}"), "mp-0", out, stats, soft);
    CHECK(out.empty());
    REQUIRE(soft.size() == 1);  // one entry for the one payload variable group
    CHECK(soft[0].variable == "band_gap");
    CHECK(stats.bindings_failed == 1);
}

TEST_CASE("a two-site document yields two sites with one cartesian vector each") {
    MappingTemplate t = load_template("materials_project.tmpl");
    JsonValue doc = json(R"({
      "band_gap": 0.8,
      "output": {"structure": {
        "formula": "Xy2",
        "spacegroup": {"symbol": "P1", "point_group": "1", "crystal_system": "triclinic"},
        "lattice": {"a": 1.0, "b": 1.0, "c": 1.0, "alpha": 90.0, "beta": 90.0, "gamma": 90.0,
                     "matrix": [[1.0,0.0,0.0],[0.0,1.0,0.0],[0.0,0.0,1.0]]},
        "sites": [
          {"species": [{"element": "X", "occu": 1.0}], "abc": [0.0,0.0,0.0], "xyz": [0.0,0.0,0.0]},
          {"species": [{"element": "Y", "occu": 1.0}], "abc": [0.5,0.5,0.5], "xyz": [0.5,0.5,0.5]}
        ]
      }}
    })");
    Graph g = apply_template(t, doc, "toy");
    std::string site_cls = std::string(vocab::ns::structure) + "Site";
    auto sites = g.match({PatternSlot::var("s"), PatternSlot(Term::iri(rdf_type_iri())),
                          PatternSlot(Term::iri(site_cls))});
    REQUIRE(sites.size() == 2);
    for (const Binding& b : sites) {
        auto carts = g.match({PatternSlot(b.at("s")),
                              PatternSlot(Term::iri(std::string(vocab::ns::structure) +
                                                    "hasCartesianCoordinates")),
                              PatternSlot::var("c")});
        CHECK(carts.size() == 1);
    }
}

TEST_CASE("every shipped template maps its sample document to a conforming graph") {
    struct Case {
        const char* tmpl;
        const char* doc;
        const char* doc_id;
    };
    for (const Case& c : {Case{"band_gap.tmpl", "docs/mp-989579.json", "mp-989579"},
                          Case{"materials_project.tmpl", "docs/batch/mp-989579.json", "mp-989579"},
                          Case{"optimade.tmpl", "docs/optimade_sample.json", "optimade"}}) {
        CAPTURE(c.tmpl);
        MappingTemplate t = load_template(c.tmpl);
        Graph g = apply_template(t, json(ts::slurp(ts::fixture_path(c.doc))), c.doc_id);
        REQUIRE_FALSE(g.empty());
        ValidationReport r = validate(materialize_types(g));
        CAPTURE(report_text(r));
        CHECK(r.conforming());
    }
}

TEST_CASE("batch ingestion of zero documents is empty") {
    std::vector<MappingTemplate> templates{load_template("band_gap.tmpl")};
    IngestionResult r = ingest_batch(templates, {});
    CHECK(r.graph.empty());
    CHECK(r.totals.documents_read == 0);
    CHECK(r.totals.triples_emitted == 0);
    CHECK(r.soft_errors.empty());
}

TEST_CASE("three copies of the band-gap document stay disjoint per doc id") {
    std::vector<MappingTemplate> templates{load_template("band_gap.tmpl")};
    std::string text = ts::slurp(ts::fixture_path("docs/mp-989579.json"));
    IngestionResult r =
        ingest_batch(templates, {{"mp-1", text}, {"mp-2", text}, {"mp-3", text}});
    CHECK(r.totals.documents_read == 3);
    CHECK(r.graph.size() == 18);
    CHECK(count_instances(r.graph, std::string(vocab::ns::core) + "CalculatedProperty") == 3);
    // three distinct quantity-value blank nodes
    CHECK(r.graph.blank_labels().size() == 3);
    // the invariant: emitted triples equal graph growth from empty
    CHECK(r.totals.triples_emitted == r.graph.size());
}

TEST_CASE("unreadable documents are recorded and the batch continues") {
    std::vector<MappingTemplate> templates{load_template("band_gap.tmpl")};
    IngestionResult r = ingest_batch(
        templates, {{"bad", "{not json"}, {"good", R"({"band_gap": 2.5})"}});
    CHECK(r.totals.documents_failed == 1);
    CHECK(r.totals.documents_read == 1);
    REQUIRE_FALSE(r.soft_errors.empty());
    CHECK(r.soft_errors[0].doc_id == "bad");
    CHECK(r.graph.size() == 6);
}

TEST_CASE("ingestion is deterministic for a fixed input order") {
    std::vector<MappingTemplate> templates{load_template("materials_project.tmpl")};
    std::string text = ts::slurp(ts::fixture_path("docs/batch/mp-b001.json"));
    IngestionResult a = ingest_batch(templates, {{"mp-b001", text}});
    IngestionResult b = ingest_batch(templates, {{"mp-b001", text}});
    CHECK(serialize_ntriples(a.graph) == serialize_ntriples(b.graph));
    CHECK(isomorphic(a.graph, b.graph));
}

TEST_CASE("iteration scopes do not leak bindings across siblings") {
    auto r = parse_template(
        "PREFIX x: <http://e/>\n"
        "BASE <http://e/>\n"
        "GENERATE {\n"
        "  GENERATE {\n"
        "    ?outer_node x:kind \"outer\" .\n"
        "    GENERATE {\n"
        "      ?outer_node x:inner ?inner_node .\n"
        "      ?inner_node x:value ?v .\n"
        "    } ITERATOR JSONPATH(?o, \"$.inner[*]\") AS ?in INDEX ?j\n"
        "    WHERE {\n"
        "      BIND(IRI(\"n_{i}_{j}\") AS ?inner_node)\n"
        "      BIND(JSONPATH(?in, \"$.v\") AS ?v)\n"
        "    } .\n"
        "  } ITERATOR JSONPATH(?source, \"$.outer[*]\") AS ?o INDEX ?i\n"
        "  WHERE { BIND(IRI(\"o_{i}\") AS ?outer_node) } .\n"
        "}\n"
        "SOURCE <*> AS ?source\n");
    REQUIRE(r.ok);
    JsonValue doc = json(R"({"outer": [
        {"inner": [{"v": "a"}]},
        {"inner": [{"v": "b"}, {"v": "c"}]}
    ]})");
    Graph g = apply_template(r.tmpl, doc, "d");
    auto edge = [&](const std::string& s, const std::string& o) {
        return g.contains({Term::iri("http://e/" + s), Term::iri("http://e/inner"),
                           Term::iri("http://e/" + o)});
    };
    CHECK(edge("o_0", "n_0_0"));
    CHECK(edge("o_1", "n_1_0"));
    CHECK(edge("o_1", "n_1_1"));
    CHECK_FALSE(edge("o_0", "n_1_0"));
    CHECK_FALSE(edge("o_1", "n_0_0"));
    CHECK(g.contains({Term::iri("http://e/n_1_1"), Term::iri("http://e/value"),
                      Term::string_literal("c")}));
    // 2 outer kind triples + 3 inner edges + 3 value triples
    CHECK(g.size() == 8);
}

TEST_CASE("DATATYPE casts the bound literal") {
    auto r = parse_template(
        "PREFIX x: <http://e/>\n"
        "PREFIX xsd: <http://www.w3.org/2001/XMLSchema#>\n"
        "BASE <http://e/>\n"
        "GENERATE { ?n x:date ?d . }\n"
        "SOURCE <*> AS ?source\n"
        "WHERE {\n"
        "  BIND(IRI(\"node\") AS ?n)\n"
        "  BIND(DATATYPE(JSONPATH(?source, \"$.created\"), xsd:date) AS ?d)\n"
        "}");
    REQUIRE(r.ok);
    Graph g = apply_template(r.tmpl, json(R"({"created": "2016-07-15"})"), "d");
    CHECK(g.contains({Term::iri("http://e/node"), Term::iri("http://e/date"),
                      Term::literal("2016-07-15", xsd_iri("date"))}));
}
