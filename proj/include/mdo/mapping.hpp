#pragma once
// Template-driven JSON-to-RDF mapping. The template language is a restricted
// redesign of the GENERATE/SOURCE/WHERE/BIND pipeline: one JSON document per
// application, JSONPATH bindings, BNODE() and IRI(...) generators, and
// nested GENERATE blocks iterating over array selections. Data gaps are soft
// errors; only a malformed template is a hard error.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mdo/graph.hpp"
#include "mdo/json_value.hpp"
#include "mdo/jsonpath.hpp"
#include "mdo/prefix_map.hpp"
#include "mdo/serialize.hpp"
#include "mdo/term.hpp"
#include "mdo/turtle.hpp"

namespace mdo {

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

struct BindExpr {
    enum class Kind { JsonPath, Bnode, IriTemplate };
    Kind kind = Kind::Bnode;
    std::string scope_var;                // JsonPath: variable holding the JSON scope
    PathExpr path;                        // JsonPath
    std::string iri_pattern;              // IriTemplate: "{var}" and "{doc_id}" substitutions
    std::optional<std::string> datatype;  // DATATYPE(expr, iri) wrapper
};

struct TemplateBinding {
    std::string var;
    BindExpr expr;
};

struct TemplateSlot {
    bool is_var = false;
    std::string var;
    Term term;

    static TemplateSlot of_var(std::string name) {
        TemplateSlot s;
        s.is_var = true;
        s.var = std::move(name);
        return s;
    }
    static TemplateSlot of_term(Term t) {
        TemplateSlot s;
        s.term = std::move(t);
        return s;
    }
};

struct TripleTemplate {
    TemplateSlot subject, predicate, object;
};

// One GENERATE scope. Nested scopes optionally iterate over a JSON array
// selection of an enclosing scope's value.
struct TemplateNode {
    std::vector<TemplateBinding> binds;
    std::vector<TripleTemplate> triples;

    bool has_iterator = false;  // nested nodes only
    std::string iter_scope_var;
    PathExpr iter_path;
    std::string iter_var;
    std::string index_var;  // empty when absent

    std::vector<TemplateNode> children;
};

struct MappingTemplate {
    PrefixMap prefixes;
    std::string source_selector = "*";  // informative; the applied document is used
    std::string source_var = "source";
    TemplateNode root;
};

struct TemplateParseResult {
    bool ok = false;
    MappingTemplate tmpl;
    std::vector<ParseDiagnostic> diagnostics;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace mapping_detail {

enum class Tok {
    Eof, Iri, PName, Var, String, Integer, Decimal, Double, Word,
    LBrace, RBrace, LParen, RParen, Dot, Semicolon, Comma,
};

struct Token {
    Tok kind = Tok::Eof;
    std::string text, aux;
    int line = 1, column = 1;
};

struct Error {
    int line, column;
    std::string message;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= text_.size()) return t;
        char c = text_[pos_];
        switch (c) {
            case '{': get(); t.kind = Tok::LBrace; return t;
            case '}': get(); t.kind = Tok::RBrace; return t;
            case '(': get(); t.kind = Tok::LParen; return t;
            case ')': get(); t.kind = Tok::RParen; return t;
            case ';': get(); t.kind = Tok::Semicolon; return t;
            case ',': get(); t.kind = Tok::Comma; return t;
            case '.': get(); t.kind = Tok::Dot; return t;
            case '<': return iri(t);
            case '"': return str(t);
            case '?': return var(t);
            default: break;
        }
        if (c == '+' || c == '-' || (c >= '0' && c <= '9')) return number(t);
        return word(t);
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') get();
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                get();
            } else {
                break;
            }
        }
    }
    char get() {
        char c = text_[pos_++];
        if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
        return c;
    }
    [[noreturn]] void fail(const Token& t, std::string msg) { throw Error{t.line, t.column, std::move(msg)}; }

    static bool word_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-';
    }

    Token iri(Token t) {
        get();
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) fail(t, "unterminated IRI");
            char c = get();
            if (c == '>') break;
            out += c;
        }
        t.kind = Tok::Iri;
        t.text = std::move(out);
        return t;
    }

    Token str(Token t) {
        get();
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) fail(t, "unterminated string");
            char c = get();
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= text_.size()) fail(t, "truncated escape");
                char e = get();
                switch (e) {
                    case 't': out += '\t'; break;
                    case 'n': out += '\n'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail(t, std::string("invalid escape '\\") + e + "'");
                }
            } else {
                out += c;
            }
        }
        t.kind = Tok::String;
        t.text = std::move(out);
        return t;
    }

    Token var(Token t) {
        get();
        std::string name;
        while (pos_ < text_.size() && word_char(text_[pos_])) name += get();
        if (name.empty()) fail(t, "empty variable name after '?'");
        t.kind = Tok::Var;
        t.text = std::move(name);
        return t;
    }

    Token number(Token t) {
        std::string out;
        bool dot = false, exp = false;
        if (text_[pos_] == '+' || text_[pos_] == '-') out += get();
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c >= '0' && c <= '9') out += get();
            else if (c == '.' && !dot && !exp && pos_ + 1 < text_.size() &&
                     text_[pos_ + 1] >= '0' && text_[pos_ + 1] <= '9') { dot = true; out += get(); }
            else if ((c == 'e' || c == 'E') && !exp) {
                exp = true;
                out += get();
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) out += get();
            } else break;
        }
        t.kind = exp ? Tok::Double : (dot ? Tok::Decimal : Tok::Integer);
        t.text = std::move(out);
        return t;
    }

    Token word(Token t) {
        std::string head;
        while (pos_ < text_.size() && word_char(text_[pos_])) head += get();
        if (pos_ < text_.size() && text_[pos_] == ':') {
            get();
            std::string local;
            while (pos_ < text_.size() && word_char(text_[pos_])) local += get();
            t.kind = Tok::PName;
            t.text = std::move(head);
            t.aux = std::move(local);
            return t;
        }
        if (head.empty()) fail(t, std::string("unexpected character '") + text_[pos_] + "'");
        t.kind = Tok::Word;
        t.text = std::move(head);
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) { advance(); }

    MappingTemplate run() {
        MappingTemplate t;
        while (at_word("BASE") || at_word("PREFIX")) {
            bool is_base = cur_.text == "BASE";
            advance();
            if (is_base) {
                require(Tok::Iri, "base IRI");
                safely([&] { t.prefixes.set_base(cur_.text); });
                advance();
            } else {
                if (cur_.kind != Tok::PName || !cur_.aux.empty())
                    fail("expected prefix label ending in ':'");
                std::string label = cur_.text;
                advance();
                require(Tok::Iri, "namespace IRI");
                safely([&] { t.prefixes.bind(label, cur_.text); });
                advance();
            }
        }
        prefixes_ = &t.prefixes;
        if (!at_word("GENERATE")) fail("expected GENERATE block");
        t.root = generate_body();
        if (at_word("SOURCE")) {
            advance();
            if (cur_.kind == Tok::Iri) {
                t.source_selector = cur_.text;
                advance();
            }
            expect_word("AS");
            t.source_var = take_var();
        }
        if (at_word("WHERE")) t.root.binds = where_block();
        if (cur_.kind != Tok::Eof) fail("trailing content after template");
        check_static(t);
        return t;
    }

private:
    void advance() { cur_ = lexer_.next(); }
    bool at_word(const char* w) const { return cur_.kind == Tok::Word && cur_.text == w; }
    [[noreturn]] void fail(std::string msg) const { throw Error{cur_.line, cur_.column, std::move(msg)}; }
    void require(Tok k, const char* what) const {
        if (cur_.kind != k) fail(std::string("expected ") + what);
    }
    void expect(Tok k, const char* what) {
        require(k, what);
        advance();
    }
    void expect_word(const char* w) {
        if (!at_word(w)) fail(std::string("expected ") + w);
        advance();
    }
    std::string take_var() {
        require(Tok::Var, "variable");
        std::string v = cur_.text;
        advance();
        return v;
    }
    template <class F>
    void safely(F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }

    // GENERATE '{' (triple | nested)* '}'
    TemplateNode generate_body() {
        expect_word("GENERATE");
        expect(Tok::LBrace, "'{'");
        TemplateNode node;
        while (cur_.kind != Tok::RBrace) {
            if (cur_.kind == Tok::Eof) fail("unterminated GENERATE block");
            if (at_word("GENERATE")) {
                node.children.push_back(nested());
            } else {
                triples_statement(node);
            }
        }
        advance();  // '}'
        return node;
    }

    TemplateNode nested() {
        TemplateNode child = generate_body();
        if (at_word("ITERATOR")) {
            advance();
            expect_word("JSONPATH");
            expect(Tok::LParen, "'('");
            child.iter_scope_var = take_var();
            expect(Tok::Comma, "','");
            require(Tok::String, "path string");
            safely([&] { child.iter_path = parse_path(cur_.text); });
            advance();
            expect(Tok::RParen, "')'");
            expect_word("AS");
            child.iter_var = take_var();
            if (at_word("INDEX")) {
                advance();
                child.index_var = take_var();
            }
            child.has_iterator = true;
        }
        if (at_word("WHERE")) child.binds = where_block();
        if (cur_.kind == Tok::Dot) advance();
        return child;
    }

    std::vector<TemplateBinding> where_block() {
        expect_word("WHERE");
        expect(Tok::LBrace, "'{'");
        std::vector<TemplateBinding> binds;
        while (cur_.kind != Tok::RBrace) {
            if (cur_.kind == Tok::Eof) fail("unterminated WHERE block");
            expect_word("BIND");
            expect(Tok::LParen, "'('");
            BindExpr e = bind_expr();
            expect_word("AS");
            std::string var = take_var();
            expect(Tok::RParen, "')'");
            if (cur_.kind == Tok::Dot) advance();
            binds.push_back({std::move(var), std::move(e)});
        }
        advance();  // '}'
        return binds;
    }

    BindExpr bind_expr() {
        BindExpr e;
        if (at_word("JSONPATH")) {
            advance();
            expect(Tok::LParen, "'('");
            e.kind = BindExpr::Kind::JsonPath;
            e.scope_var = take_var();
            expect(Tok::Comma, "','");
            require(Tok::String, "path string");
            safely([&] { e.path = parse_path(cur_.text); });
            advance();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (at_word("BNODE")) {
            advance();
            expect(Tok::LParen, "'('");
            expect(Tok::RParen, "')'");
            e.kind = BindExpr::Kind::Bnode;
            return e;
        }
        if (at_word("IRI")) {
            advance();
            expect(Tok::LParen, "'('");
            require(Tok::String, "IRI template string");
            e.kind = BindExpr::Kind::IriTemplate;
            e.iri_pattern = cur_.text;
            safely([&] { validate_pattern(e.iri_pattern); });
            advance();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (at_word("DATATYPE")) {
            advance();
            expect(Tok::LParen, "'('");
            BindExpr inner = bind_expr();
            expect(Tok::Comma, "','");
            inner.datatype = iri_token();
            expect(Tok::RParen, "')'");
            return inner;
        }
        fail("expected JSONPATH, BNODE, IRI or DATATYPE");
    }

    std::string iri_token() {
        if (cur_.kind == Tok::Iri) {
            std::string iri = cur_.text;
            advance();
            return iri;
        }
        if (cur_.kind == Tok::PName) {
            auto ns = prefixes_->expand(cur_.text);
            if (!ns) fail("undefined prefix '" + cur_.text + ":'");
            std::string iri = *ns + cur_.aux;
            advance();
            return iri;
        }
        fail("expected IRI");
    }

    static void validate_pattern(const std::string& pattern) {
        std::size_t i = 0;
        while (i < pattern.size()) {
            if (pattern[i] == '}') throw std::invalid_argument("unbalanced '}' in IRI template");
            if (pattern[i] == '{') {
                std::size_t end = pattern.find('}', i);
                if (end == std::string::npos)
                    throw std::invalid_argument("unbalanced '{' in IRI template");
                if (end == i + 1) throw std::invalid_argument("empty substitution in IRI template");
                i = end;
            }
            ++i;
        }
    }

    TemplateSlot subject_or_object(bool object_position) {
        switch (cur_.kind) {
            case Tok::Var: return TemplateSlot::of_var(take_var());
            case Tok::Iri:
            case Tok::PName: {
                std::string iri = iri_token();
                TemplateSlot s;
                safely([&] { s = TemplateSlot::of_term(Term::iri(iri)); });
                return s;
            }
            case Tok::String: {
                if (!object_position) fail("literal subject in triple template");
                std::string lex = cur_.text;
                advance();
                return TemplateSlot::of_term(Term::string_literal(lex));
            }
            case Tok::Integer:
            case Tok::Decimal:
            case Tok::Double: {
                if (!object_position) fail("literal subject in triple template");
                const char* dt = cur_.kind == Tok::Double ? "double"
                                 : cur_.kind == Tok::Decimal ? "decimal" : "integer";
                Term t = Term::literal(cur_.text, xsd_iri(dt));
                advance();
                return TemplateSlot::of_term(t);
            }
            case Tok::Word:
                if (object_position && (cur_.text == "true" || cur_.text == "false")) {
                    Term t = Term::literal(cur_.text, xsd_iri("boolean"));
                    advance();
                    return TemplateSlot::of_term(t);
                }
                [[fallthrough]];
            default: fail("expected term or variable");
        }
    }

    TemplateSlot verb() {
        if (cur_.kind == Tok::Word && cur_.text == "a") {
            advance();
            return TemplateSlot::of_term(Term::iri(rdf_type_iri()));
        }
        TemplateSlot s;
        std::string iri = iri_token();
        safely([&] { s = TemplateSlot::of_term(Term::iri(iri)); });
        return s;
    }

    void triples_statement(TemplateNode& node) {
        TemplateSlot subj = subject_or_object(false);
        while (true) {
            TemplateSlot pred = verb();
            while (true) {
                TemplateSlot obj = subject_or_object(true);
                node.triples.push_back({subj, pred, obj});
                if (cur_.kind != Tok::Comma) break;
                advance();
            }
            if (cur_.kind != Tok::Semicolon) break;
            while (cur_.kind == Tok::Semicolon) advance();
            if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBrace || at_word("GENERATE")) break;
        }
        if (cur_.kind == Tok::Dot) advance();
    }

    // ----- static analysis: binding scopes ---------------------------------

    void check_static(const MappingTemplate& t) {
        std::set<std::string> scope{t.source_var};
        check_node(t.root, scope);
    }

    void check_node(const TemplateNode& node, std::set<std::string> scope) {
        for (const TemplateBinding& b : node.binds) {
            check_expr(b.expr, scope);
            if (!scope.insert(b.var).second)
                fail_static("variable ?" + b.var + " bound more than once in scope");
        }
        for (const TripleTemplate& tt : node.triples) {
            for (const TemplateSlot* s : {&tt.subject, &tt.predicate, &tt.object}) {
                if (s->is_var && !scope.count(s->var))
                    fail_static("use of unbound variable ?" + s->var);
            }
        }
        for (const TemplateNode& c : node.children) {
            std::set<std::string> child_scope = scope;
            if (c.has_iterator) {
                if (!scope.count(c.iter_scope_var))
                    fail_static("ITERATOR over unbound variable ?" + c.iter_scope_var);
                if (!child_scope.insert(c.iter_var).second)
                    fail_static("variable ?" + c.iter_var + " bound more than once in scope");
                if (!c.index_var.empty() && !child_scope.insert(c.index_var).second)
                    fail_static("variable ?" + c.index_var + " bound more than once in scope");
            }
            check_node(c, std::move(child_scope));
        }
    }

    void check_expr(const BindExpr& e, const std::set<std::string>& scope) {
        if (e.kind == BindExpr::Kind::JsonPath && !scope.count(e.scope_var))
            fail_static("JSONPATH over unbound variable ?" + e.scope_var);
        if (e.kind == BindExpr::Kind::IriTemplate) {
            for (const std::string& ref : pattern_refs(e.iri_pattern))
                if (ref != "doc_id" && !scope.count(ref))
                    fail_static("IRI template references unbound variable ?" + ref);
        }
    }

    [[noreturn]] void fail_static(std::string msg) const { throw Error{1, 1, std::move(msg)}; }

public:
    static std::vector<std::string> pattern_refs(const std::string& pattern) {
        std::vector<std::string> refs;
        std::size_t i = 0;
        while ((i = pattern.find('{', i)) != std::string::npos) {
            std::size_t end = pattern.find('}', i);
            refs.push_back(pattern.substr(i + 1, end - i - 1));
            i = end + 1;
        }
        return refs;
    }

private:
    Lexer lexer_;
    Token cur_;
    const PrefixMap* prefixes_ = nullptr;
};

}  // namespace mapping_detail

inline TemplateParseResult parse_template(std::string_view text) {
    TemplateParseResult out;
    try {
        mapping_detail::Parser p(text);
        out.tmpl = p.run();
        out.ok = true;
    } catch (const mapping_detail::Error& e) {
        out.diagnostics.push_back({e.line, e.column, e.message, Severity::Error});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pretty printer (canonical template text; parse . print is a fixpoint)
// ---------------------------------------------------------------------------

namespace mapping_detail {

inline std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

inline std::string slot_text(const TemplateSlot& s, const PrefixMap& prefixes, bool verb) {
    if (s.is_var) return "?" + s.var;
    return serialize_detail::turtle_term(s.term, prefixes, verb);
}

inline std::string expr_text(const BindExpr& e) {
    std::string inner;
    switch (e.kind) {
        case BindExpr::Kind::JsonPath:
            inner = "JSONPATH(?" + e.scope_var + ", " + quoted(e.path.text) + ")";
            break;
        case BindExpr::Kind::Bnode: inner = "BNODE()"; break;
        case BindExpr::Kind::IriTemplate: inner = "IRI(" + quoted(e.iri_pattern) + ")"; break;
    }
    if (e.datatype) inner = "DATATYPE(" + inner + ", <" + *e.datatype + ">)";
    return inner;
}

inline void print_where(std::ostringstream& out, const std::vector<TemplateBinding>& binds,
                        const std::string& indent) {
    out << indent << "WHERE {\n";
    for (const TemplateBinding& b : binds)
        out << indent << "  BIND(" << expr_text(b.expr) << " AS ?" << b.var << ")\n";
    out << indent << "}";
}

inline void print_node(std::ostringstream& out, const TemplateNode& node,
                       const PrefixMap& prefixes, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    for (const TripleTemplate& t : node.triples) {
        out << indent << slot_text(t.subject, prefixes, false) << " "
            << slot_text(t.predicate, prefixes, true) << " "
            << slot_text(t.object, prefixes, false) << " .\n";
    }
    for (const TemplateNode& c : node.children) {
        out << indent << "GENERATE {\n";
        print_node(out, c, prefixes, depth + 1);
        out << indent << "}";
        if (c.has_iterator) {
            out << " ITERATOR JSONPATH(?" << c.iter_scope_var << ", " << quoted(c.iter_path.text)
                << ") AS ?" << c.iter_var;
            if (!c.index_var.empty()) out << " INDEX ?" << c.index_var;
        }
        if (!c.binds.empty()) {
            out << "\n";
            print_where(out, c.binds, indent);
        }
        out << " .\n";
    }
}

}  // namespace mapping_detail

inline std::string print_template(const MappingTemplate& t) {
    std::ostringstream out;
    if (t.prefixes.base()) out << "BASE <" << *t.prefixes.base() << ">\n";
    for (const auto& [label, iri] : t.prefixes.entries())
        out << "PREFIX " << label << ": <" << iri << ">\n";
    out << "\nGENERATE {\n";
    mapping_detail::print_node(out, t.root, t.prefixes, 1);
    out << "}\n";
    out << "SOURCE <" << t.source_selector << "> AS ?" << t.source_var << "\n";
    if (!t.root.binds.empty()) {
        mapping_detail::print_where(out, t.root.binds, "");
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct SoftError {
    std::string doc_id;
    std::string variable;  // or context
    std::string message;
};

struct IngestionStats {
    std::size_t documents_read = 0;
    std::size_t documents_failed = 0;
    std::size_t triples_emitted = 0;
    std::size_t bindings_failed = 0;
};

struct IngestionResult {
    Graph graph;
    std::vector<IngestionStats> per_template;
    IngestionStats totals;
    std::vector<SoftError> soft_errors;
};

namespace mapping_detail {

struct BoundValue {
    const JsonValue* json = nullptr;  // present for SOURCE / iterator / path values
    std::optional<Term> term;
};

using Env = std::map<std::string, BoundValue>;

struct EvalContext {
    const MappingTemplate* tmpl;
    std::string doc_id;
    Graph* out;
    IngestionStats* stats;
    std::vector<SoftError>* soft;

    void soft_error(const std::string& var, std::string msg) {
        ++stats->bindings_failed;
        soft->push_back({doc_id, var, std::move(msg)});
    }
};

inline std::optional<Term> json_scalar_term(const JsonValue& v) {
    switch (v.kind) {
        case JsonValue::Kind::String: return Term::string_literal(v.text);
        case JsonValue::Kind::Number: return Term::literal(v.text, xsd_iri("double"));
        case JsonValue::Kind::Boolean: return Term::literal(v.text, xsd_iri("boolean"));
        default: return std::nullopt;  // null, array, object
    }
}

inline std::optional<std::string> substitution_text(const BoundValue& v) {
    if (v.term) return v.term->value;
    if (v.json && v.json->is_scalar()) return v.json->text;
    return std::nullopt;
}

inline BoundValue eval_bind(const BindExpr& e, const Env& env, EvalContext& cx,
                            const std::string& var) {
    BoundValue out;
    switch (e.kind) {
        case BindExpr::Kind::Bnode: out.term = cx.out->fresh_blank(); break;
        case BindExpr::Kind::JsonPath: {
            auto scope = env.find(e.scope_var);
            if (scope == env.end() || !scope->second.json) {
                cx.soft_error(var, "no JSON value bound to ?" + e.scope_var);
                return out;
            }
            auto values = eval_path(*scope->second.json, e.path);
            if (values.empty()) {
                cx.soft_error(var, "path " + e.path.text + " selected nothing");
                return out;
            }
            out.json = values.front();  // first match; [*] fan-out belongs to ITERATOR
            out.term = json_scalar_term(*out.json);
            break;
        }
        case BindExpr::Kind::IriTemplate: {
            std::string iri;
            const std::string& p = e.iri_pattern;
            std::size_t i = 0;
            while (i < p.size()) {
                if (p[i] != '{') {
                    iri += p[i++];
                    continue;
                }
                std::size_t end = p.find('}', i);
                std::string name = p.substr(i + 1, end - i - 1);
                i = end + 1;
                if (name == "doc_id") {
                    iri += cx.doc_id;
                    continue;
                }
                auto it = env.find(name);
                auto text = it == env.end() ? std::nullopt : substitution_text(it->second);
                if (!text) {
                    cx.soft_error(var, "IRI template needs unbound variable ?" + name);
                    return out;
                }
                iri += *text;
            }
            iri = resolve_iri(iri, cx.tmpl->prefixes.base());
            if (!is_absolute_iri(iri)) {
                cx.soft_error(var, "IRI template produced a relative IRI: " + iri);
                return out;
            }
            out.term = Term::iri(iri);
            break;
        }
    }
    if (e.datatype && out.term && out.term->is_literal()) {
        if (*e.datatype == rdf_lang_string_iri()) {
            cx.soft_error(var, "DATATYPE cannot produce language-tagged literals");
            out.term.reset();
        } else {
            out.term = Term::literal(out.term->value, *e.datatype);
        }
    }
    return out;
}

inline void eval_node(const TemplateNode& node, Env env, EvalContext& cx) {
    std::set<std::string> failed;
    std::size_t path_binds = 0, path_failures = 0;
    for (const TemplateBinding& b : node.binds) {
        BoundValue v = eval_bind(b.expr, env, cx, b.var);
        if (b.expr.kind == BindExpr::Kind::JsonPath) {
            ++path_binds;
            if (!v.term && !v.json) ++path_failures;
        }
        if (!v.term && !v.json) failed.insert(b.var);
        env[b.var] = std::move(v);
    }
    // A scope whose payload bindings all came up empty maps no data at all:
    // skip it rather than emit nodes minted for nothing.
    if (path_binds > 0 && path_failures == path_binds) return;
    for (const TripleTemplate& tt : node.triples) {
        Term terms[3];
        bool ok = true;
        const TemplateSlot* slots[3] = {&tt.subject, &tt.predicate, &tt.object};
        for (int i = 0; i < 3 && ok; ++i) {
            if (!slots[i]->is_var) {
                terms[i] = slots[i]->term;
                continue;
            }
            auto it = env.find(slots[i]->var);
            if (it == env.end() || !it->second.term) {
                // the bind's own soft error covers this variable; a bound
                // non-scalar (array/object) in a triple slot is its own fault
                if (it != env.end() && it->second.json && !failed.count(slots[i]->var) &&
                    !it->second.json->is_scalar())
                    cx.soft_error(slots[i]->var,
                                  "non-scalar JSON value used in a triple slot");
                ok = false;
            } else {
                terms[i] = *it->second.term;
            }
        }
        if (!ok) continue;
        try {
            if (cx.out->insert(terms[0], terms[1], terms[2])) ++cx.stats->triples_emitted;
        } catch (const TermError& e) {
            cx.soft_error("", std::string("skipped malformed triple: ") + e.what());
        }
    }
    for (const TemplateNode& c : node.children) {
        if (!c.has_iterator) {
            eval_node(c, env, cx);
            continue;
        }
        auto scope = env.find(c.iter_scope_var);
        if (scope == env.end() || !scope->second.json) {
            cx.soft_error(c.iter_var, "ITERATOR over unbound ?" + c.iter_scope_var);
            continue;
        }
        auto values = eval_path(*scope->second.json, c.iter_path);
        std::size_t index = 0;
        for (const JsonValue* v : values) {
            Env child_env = env;
            BoundValue item;
            item.json = v;
            item.term = json_scalar_term(*v);
            child_env[c.iter_var] = std::move(item);
            if (!c.index_var.empty()) {
                BoundValue idx;
                idx.term = Term::literal(std::to_string(index), xsd_iri("integer"));
                child_env[c.index_var] = std::move(idx);
            }
            eval_node(c, std::move(child_env), cx);
            ++index;
        }
    }
}

}  // namespace mapping_detail

/// Apply one template to one parsed document, accumulating into `out`.
inline void apply_template_into(const MappingTemplate& t, const JsonValue& doc,
                                const std::string& doc_id, Graph& out, IngestionStats& stats,
                                std::vector<SoftError>& soft) {
    mapping_detail::EvalContext cx{&t, doc_id, &out, &stats, &soft};
    mapping_detail::Env env;
    mapping_detail::BoundValue src;
    src.json = &doc;
    env[t.source_var] = std::move(src);
    mapping_detail::eval_node(t.root, std::move(env), cx);
}

/// Convenience wrapper returning just the emitted graph.
inline Graph apply_template(const MappingTemplate& t, const JsonValue& doc,
                            const std::string& doc_id) {
    Graph g;
    IngestionStats stats;
    std::vector<SoftError> soft;
    apply_template_into(t, doc, doc_id, g, stats, soft);
    return g;
}

/// Batch ingestion over (doc_id, raw JSON text) pairs. Unreadable documents
/// are recorded and the batch continues. Deterministic given input order.
inline IngestionResult ingest_batch(const std::vector<MappingTemplate>& templates,
                                    const std::vector<std::pair<std::string, std::string>>& docs) {
    IngestionResult result;
    result.per_template.resize(templates.size());
    for (const auto& [doc_id, text] : docs) {
        JsonParseResult parsed = parse_json(text);
        if (!parsed.ok) {
            ++result.totals.documents_failed;
            for (auto& s : result.per_template) ++s.documents_failed;
            result.soft_errors.push_back({doc_id, "", parsed.error});
            continue;
        }
        ++result.totals.documents_read;
        for (std::size_t i = 0; i < templates.size(); ++i) {
            ++result.per_template[i].documents_read;
            IngestionStats stats;
            apply_template_into(templates[i], parsed.value, doc_id, result.graph, stats,
                                result.soft_errors);
            result.per_template[i].triples_emitted += stats.triples_emitted;
            result.per_template[i].bindings_failed += stats.bindings_failed;
            result.totals.triples_emitted += stats.triples_emitted;
            result.totals.bindings_failed += stats.bindings_failed;
        }
    }
    return result;
}

}  // namespace mdo
