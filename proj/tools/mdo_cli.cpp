// mdo: ingest materials-database JSON into RDF, validate graphs against the
// ontology's axioms, and answer queries over the result.
//
// Exit codes: 0 success (and, for validate, conforming), 1 validation
// violations, 2 unreadable inputs or parse errors.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdo/cq.hpp"
#include "mdo/graph.hpp"
#include "mdo/mapping.hpp"
#include "mdo/query.hpp"
#include "mdo/serialize.hpp"
#include "mdo/turtle.hpp"
#include "mdo/validator.hpp"
#include "mdo/vocab.hpp"

#ifndef MDO_DEFAULT_QUERY_DIR
#define MDO_DEFAULT_QUERY_DIR ""
#endif

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kError = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

mdo::Graph load_graph(const std::string& path) {
    auto r = mdo::parse_turtle(slurp(path));
    if (!r.ok) {
        const auto& d = r.diagnostics.front();
        throw std::runtime_error(path + ":" + std::to_string(d.line) + ":" +
                                 std::to_string(d.column) + ": " + d.message);
    }
    return std::move(r.graph);
}

mdo::MappingTemplate load_template(const std::string& path) {
    auto r = mdo::parse_template(slurp(path));
    if (!r.ok) {
        const auto& d = r.diagnostics.front();
        throw std::runtime_error(path + ":" + std::to_string(d.line) + ":" +
                                 std::to_string(d.column) + ": " + d.message);
    }
    return std::move(r.tmpl);
}

std::string serialize_graph(const mdo::Graph& g, const std::string& format) {
    if (format == "ntriples") return mdo::serialize_ntriples(g);
    return mdo::serialize_turtle(g, mdo::vocab::standard_prefixes());
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, std::string> params;
    for (const std::string& p : raw) {
        auto eq = p.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--param expects name=value, got: " + p);
        params[p.substr(0, eq)] = p.substr(eq + 1);
    }
    return params;
}

// --- subcommands ------------------------------------------------------------

int cmd_ingest(const std::vector<std::string>& template_paths, const std::string& input,
               const std::string& doc_id_flag, const std::string& manifest,
               const std::string& output, const std::string& format, bool verbose) {
    std::vector<mdo::MappingTemplate> templates;
    for (const std::string& p : template_paths) templates.push_back(load_template(p));

    std::vector<std::pair<std::string, std::string>> docs;
    bool unreadable = false;
    auto add_doc = [&](const std::string& doc_id, const std::string& path) {
        try {
            docs.emplace_back(doc_id, slurp(path));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            unreadable = true;
        }
    };
    if (!input.empty()) {
        std::string doc_id = doc_id_flag.empty() ? fs::path(input).stem().string() : doc_id_flag;
        add_doc(doc_id, input);
    }
    if (!manifest.empty()) {
        std::istringstream in(slurp(manifest));
        fs::path base = fs::path(manifest).parent_path();
        for (std::string line; std::getline(in, line);) {
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw std::runtime_error("manifest line without a tab: " + line);
            fs::path doc_path = line.substr(tab + 1);
            if (doc_path.is_relative()) doc_path = base / doc_path;
            add_doc(line.substr(0, tab), doc_path.string());
        }
    }

    mdo::IngestionResult result = mdo::ingest_batch(templates, docs);
    write_out(output, serialize_graph(result.graph, format));
    std::cerr << "triples: " << result.graph.size() << "\n"
              << "soft errors: " << result.soft_errors.size() << "\n";
    if (verbose) {
        for (std::size_t i = 0; i < templates.size(); ++i)
            std::cerr << "template " << template_paths[i] << ": documents "
                      << result.per_template[i].documents_read << ", triples "
                      << result.per_template[i].triples_emitted << ", failed bindings "
                      << result.per_template[i].bindings_failed << "\n";
        for (const mdo::SoftError& e : result.soft_errors)
            std::cerr << "soft: [" << e.doc_id << "] "
                      << (e.variable.empty() ? "" : "?" + e.variable + ": ") << e.message << "\n";
    }
    if (unreadable || result.totals.documents_failed > 0) return kError;
    return kOk;
}

int cmd_validate(const std::string& input, const std::string& axiom, const std::string& output,
                 const std::string& format) {
    mdo::Graph g = mdo::materialize_types(load_graph(input));
    mdo::ValidationReport report =
        axiom.empty() ? mdo::validate(g) : mdo::validate_axiom(g, axiom);
    write_out(output, format == "report-structured" ? mdo::report_structured(report)
                                                    : mdo::report_text(report));
    return report.conforming() ? kOk : kViolations;
}

int cmd_query(const std::string& input, const std::string& query_path, const std::string& output,
              const std::string& format) {
    mdo::Graph g = load_graph(input);
    auto parsed = mdo::parse_query(slurp(query_path));
    if (!parsed.ok) {
        const auto& d = parsed.diagnostics.front();
        throw std::runtime_error(query_path + ":" + std::to_string(d.line) + ":" +
                                 std::to_string(d.column) + ": " + d.message);
    }
    mdo::SolutionTable table = mdo::evaluate(parsed.query, g);
    write_out(output, format == "table" ? mdo::to_aligned(table) : mdo::to_tsv(table));
    return kOk;
}

int cmd_cq(const std::string& id, const std::string& input, const std::string& query_dir,
           const std::vector<std::string>& raw_params, const std::string& output,
           const std::string& format) {
    mdo::Graph g = load_graph(input);
    mdo::SolutionTable table = mdo::run_cq(id, g, query_dir, parse_params(raw_params));
    write_out(output, format == "table" ? mdo::to_aligned(table) : mdo::to_tsv(table));
    return kOk;
}

int cmd_export(const std::string& input, const std::string& output, const std::string& format) {
    write_out(output, serialize_graph(load_graph(input), format));
    return kOk;
}

int cmd_vocab(const std::string& output) {
    write_out(output, mdo::vocab::manifest());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Materials Design Ontology toolkit"};
    app.require_subcommand(1);

    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "per-template statistics and soft-error detail");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "map JSON documents to RDF");
    std::vector<std::string> templates;
    std::string input, doc_id, manifest, output, format = "turtle";
    ingest->add_option("--template", templates, "mapping template file")->required();
    ingest->add_option("--input", input, "single JSON document");
    ingest->add_option("--doc-id", doc_id, "document id for --input (default: file stem)");
    ingest->add_option("--manifest", manifest, "TSV manifest: doc_id <TAB> path");
    ingest->add_option("--output", output, "output file (default: stdout)");
    ingest->add_option("--format", format, "turtle | ntriples")
        ->check(CLI::IsMember({"turtle", "ntriples"}));

    // validate
    auto* validate = app.add_subcommand("validate", "check a graph against the ontology axioms");
    std::string v_input, v_axiom, v_output, v_format = "report-text";
    validate->add_option("--input", v_input, "graph file (Turtle or N-Triples)")->required();
    validate->add_option("--axiom", v_axiom, "restrict the check to one axiom id");
    validate->add_option("--output", v_output, "output file (default: stdout)");
    validate->add_option("--format", v_format, "report-text | report-structured")
        ->check(CLI::IsMember({"report-text", "report-structured"}));

    // query
    auto* query = app.add_subcommand("query", "evaluate a SELECT query over a graph");
    std::string q_input, q_query, q_output, q_format = "tsv";
    query->add_option("--input", q_input, "graph file")->required();
    query->add_option("--query", q_query, "query file")->required();
    query->add_option("--output", q_output, "output file (default: stdout)");
    query->add_option("--format", q_format, "tsv | table")
        ->check(CLI::IsMember({"tsv", "table"}));

    // cq
    auto* cq = app.add_subcommand("cq", "run a shipped competency question");
    std::string c_id, c_input, c_output, c_format = "tsv";
    std::string c_dir = MDO_DEFAULT_QUERY_DIR;
    std::vector<std::string> c_params;
    cq->add_option("--cq", c_id, "competency question id (CQ1..CQ14)")->required();
    cq->add_option("--input", c_input, "graph file")->required();
    cq->add_option("--param", c_params, "parameter override, name=value");
    cq->add_option("--queries", c_dir, "directory holding the cqNN.rq files");
    cq->add_option("--output", c_output, "output file (default: stdout)");
    cq->add_option("--format", c_format, "tsv | table")->check(CLI::IsMember({"tsv", "table"}));

    // export
    auto* exp = app.add_subcommand("export", "re-serialize a graph");
    std::string e_input, e_output, e_format = "ntriples";
    exp->add_option("--input", e_input, "graph file")->required();
    exp->add_option("--output", e_output, "output file (default: stdout)");
    exp->add_option("--format", e_format, "turtle | ntriples")
        ->check(CLI::IsMember({"turtle", "ntriples"}));

    // vocab
    auto* vocab = app.add_subcommand("vocab", "emit the vocabulary and axiom manifest");
    std::string vb_output;
    vocab->add_option("--output", vb_output, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return cmd_ingest(templates, input, doc_id, manifest, output, format, verbose);
        if (*validate) return cmd_validate(v_input, v_axiom, v_output, v_format);
        if (*query) return cmd_query(q_input, q_query, q_output, q_format);
        if (*cq) return cmd_cq(c_id, c_input, c_dir, c_params, c_output, c_format);
        if (*exp) return cmd_export(e_input, e_output, e_format);
        if (*vocab) return cmd_vocab(vb_output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
