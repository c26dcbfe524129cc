#pragma once
// SPARQL subset: SELECT over a basic graph pattern with FILTER expressions.
// Prefixed names, "a", ";" and "," abbreviations. No OPTIONAL, UNION,
// ORDER BY, LIMIT or aggregates. Bag semantics with a deterministic final
// sort by term serialization.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mdo/graph.hpp"
#include "mdo/isomorphism.hpp"
#include "mdo/prefix_map.hpp"
#include "mdo/term.hpp"
#include "mdo/turtle.hpp"

namespace mdo {

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

struct FilterExpr {
    enum class Kind { And, Or, Not, Compare };
    enum class Op { Lt, Gt, Eq, Ne, Le, Ge };
    struct Operand {
        enum class Kind { Var, Number, String } kind = Kind::Var;
        std::string text;  // variable name, numeric lexical, or string value
    };

    Kind kind = Kind::Compare;
    Op op = Op::Eq;
    Operand lhs, rhs;                               // Compare
    std::vector<FilterExpr> children;               // And / Or / Not
};

struct Query {
    PrefixMap prefixes;
    bool select_all = false;
    std::vector<std::string> projection;
    std::vector<TriplePattern> patterns;
    std::vector<FilterExpr> filters;  // implicitly conjoined

    std::set<std::string> pattern_variables() const {
        std::set<std::string> vars;
        for (const TriplePattern& p : patterns)
            for (const PatternSlot* s : {&p.subject, &p.predicate, &p.object})
                if (s->is_var()) vars.insert(s->var_name());
        return vars;
    }
};

struct QueryParseResult {
    bool ok = false;
    Query query;
    std::vector<ParseDiagnostic> diagnostics;
};

struct SolutionTable {
    std::vector<std::string> header;
    std::vector<std::vector<Term>> rows;  // each row binds exactly the header
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace query_detail {

enum class Tok {
    Eof, Iri, PName, Var, String, Integer, Decimal, Double, Word,
    LBrace, RBrace, LParen, RParen, Dot, Semicolon, Comma, Star,
    Lt, Gt, Le, Ge, Eq, Ne, AndAnd, OrOr, Bang,
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
            case '*': get(); t.kind = Tok::Star; return t;
            case '.': {
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] >= '0' && text_[pos_ + 1] <= '9')
                    return number(t);
                get();
                t.kind = Tok::Dot;
                return t;
            }
            case '<': {
                // '<' begins an IRI only when it closes with '>' before any
                // whitespace; otherwise it is the comparison operator.
                if (iri_ahead()) return iri(t);
                get();
                if (pos_ < text_.size() && text_[pos_] == '=') { get(); t.kind = Tok::Le; }
                else t.kind = Tok::Lt;
                return t;
            }
            case '>': get();
                if (pos_ < text_.size() && text_[pos_] == '=') { get(); t.kind = Tok::Ge; }
                else t.kind = Tok::Gt;
                return t;
            case '=': get(); t.kind = Tok::Eq; return t;
            case '!': get();
                if (pos_ < text_.size() && text_[pos_] == '=') { get(); t.kind = Tok::Ne; }
                else t.kind = Tok::Bang;
                return t;
            case '&': get();
                if (pos_ < text_.size() && text_[pos_] == '&') { get(); t.kind = Tok::AndAnd; return t; }
                throw Error{t.line, t.column, "expected '&&'"};
            case '|': get();
                if (pos_ < text_.size() && text_[pos_] == '|') { get(); t.kind = Tok::OrOr; return t; }
                throw Error{t.line, t.column, "expected '||'"};
            case '"': return str(t);
            case '?':
            case '$': return var(t);
            default: break;
        }
        if (c == '+' || c == '-' || (c >= '0' && c <= '9')) return number(t);
        return word(t);
    }

private:
    bool iri_ahead() const {
        for (std::size_t i = pos_ + 1; i < text_.size(); ++i) {
            char c = text_[i];
            if (c == '>') return true;
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<') return false;
        }
        return false;
    }
    char get() {
        char c = text_[pos_++];
        if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
        return c;
    }
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
    static bool word_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-';
    }

    Token iri(Token t) {
        get();  // '<'
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) throw Error{t.line, t.column, "unterminated IRI"};
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
            if (pos_ >= text_.size()) throw Error{t.line, t.column, "unterminated string"};
            char c = get();
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= text_.size()) throw Error{t.line, t.column, "truncated escape"};
                char e = get();
                switch (e) {
                    case 't': out += '\t'; break;
                    case 'n': out += '\n'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: throw Error{t.line, t.column, std::string("invalid escape '\\") + e + "'"};
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
        get();  // '?' or '$'
        std::string name;
        while (pos_ < text_.size() && word_char(text_[pos_])) name += get();
        if (name.empty()) throw Error{t.line, t.column, "empty variable name"};
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
        if (head.empty())
            throw Error{t.line, t.column,
                        std::string("unexpected character '") + text_[pos_] + "'"};
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

    Query run() {
        Query q;
        while (at_word("PREFIX")) {
            advance();
            if (cur_.kind != Tok::PName || !cur_.aux.empty())
                fail("expected prefix label ending in ':'");
            std::string label = cur_.text;
            advance();
            require(Tok::Iri, "namespace IRI");
            try {
                q.prefixes.bind(label, cur_.text);
            } catch (const TermError& e) {
                fail(e.what());
            }
            advance();
        }
        prefixes_ = &q.prefixes;
        expect_word("SELECT");
        if (cur_.kind == Tok::Star) {
            q.select_all = true;
            advance();
        } else {
            while (cur_.kind == Tok::Var) {
                q.projection.push_back(cur_.text);
                advance();
            }
            if (q.projection.empty()) fail("expected projection variables or '*'");
        }
        expect_word("WHERE");
        expect(Tok::LBrace, "'{'");
        while (cur_.kind != Tok::RBrace) {
            if (cur_.kind == Tok::Eof) fail("unterminated WHERE block");
            if (at_word("FILTER")) {
                advance();
                expect(Tok::LParen, "'('");
                q.filters.push_back(or_expr());
                expect(Tok::RParen, "')'");
                continue;
            }
            triples_block(q);
        }
        advance();
        if (cur_.kind != Tok::Eof) fail("trailing content after query");
        finish(q);
        return q;
    }

private:
    void advance() { cur_ = lexer_.next(); }
    bool at_word(const char* w) const { return cur_.kind == Tok::Word && cur_.text == w; }
    [[noreturn]] void fail(std::string msg) const {
        throw Error{cur_.line, cur_.column, std::move(msg)};
    }
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

    Term iri_term() {
        if (cur_.kind == Tok::Iri) {
            std::string iri = cur_.text;
            advance();
            try {
                return Term::iri(iri);
            } catch (const TermError& e) {
                fail(e.what());
            }
        }
        auto ns = prefixes_->expand(cur_.text);
        if (!ns) fail("undefined prefix '" + cur_.text + ":'");
        std::string iri = *ns + cur_.aux;
        advance();
        try {
            return Term::iri(iri);
        } catch (const TermError& e) {
            fail(e.what());
        }
    }

    PatternSlot subject_slot() {
        switch (cur_.kind) {
            case Tok::Var: {
                PatternSlot s = PatternSlot::var(cur_.text);
                advance();
                return s;
            }
            case Tok::Iri:
            case Tok::PName: return PatternSlot(iri_term());
            default: fail("expected subject");
        }
    }

    PatternSlot verb_slot() {
        if (cur_.kind == Tok::Word && cur_.text == "a") {
            advance();
            return PatternSlot(Term::iri(rdf_type_iri()));
        }
        if (cur_.kind == Tok::Var) {
            PatternSlot s = PatternSlot::var(cur_.text);
            advance();
            return s;
        }
        if (cur_.kind == Tok::Iri || cur_.kind == Tok::PName) return PatternSlot(iri_term());
        fail("expected predicate");
    }

    PatternSlot object_slot() {
        switch (cur_.kind) {
            case Tok::Var: {
                PatternSlot s = PatternSlot::var(cur_.text);
                advance();
                return s;
            }
            case Tok::Iri:
            case Tok::PName: return PatternSlot(iri_term());
            case Tok::String: {
                std::string lex = cur_.text;
                advance();
                if (cur_.kind == Tok::Word && cur_.text.empty()) fail("bad literal");
                // optional ^^datatype is not in this subset; language tags
                // and datatypes are matched through FILTERs instead
                return PatternSlot(Term::string_literal(lex));
            }
            case Tok::Integer:
            case Tok::Decimal:
            case Tok::Double: {
                const char* dt = cur_.kind == Tok::Double ? "double"
                                 : cur_.kind == Tok::Decimal ? "decimal" : "integer";
                PatternSlot s{Term::literal(cur_.text, xsd_iri(dt))};
                advance();
                return s;
            }
            case Tok::Word:
                if (cur_.text == "true" || cur_.text == "false") {
                    PatternSlot s{Term::literal(cur_.text, xsd_iri("boolean"))};
                    advance();
                    return s;
                }
                [[fallthrough]];
            default: fail("expected object");
        }
    }

    void triples_block(Query& q) {
        PatternSlot subj = subject_slot();
        while (true) {
            PatternSlot pred = verb_slot();
            while (true) {
                q.patterns.push_back({subj, pred, object_slot()});
                if (cur_.kind != Tok::Comma) break;
                advance();
            }
            if (cur_.kind != Tok::Semicolon) break;
            while (cur_.kind == Tok::Semicolon) advance();
            if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBrace || at_word("FILTER")) break;
        }
        if (cur_.kind == Tok::Dot) advance();
    }

    FilterExpr or_expr() {
        FilterExpr left = and_expr();
        while (cur_.kind == Tok::OrOr) {
            advance();
            FilterExpr node;
            node.kind = FilterExpr::Kind::Or;
            node.children.push_back(std::move(left));
            node.children.push_back(and_expr());
            left = std::move(node);
        }
        return left;
    }

    FilterExpr and_expr() {
        FilterExpr left = not_expr();
        while (cur_.kind == Tok::AndAnd) {
            advance();
            FilterExpr node;
            node.kind = FilterExpr::Kind::And;
            node.children.push_back(std::move(left));
            node.children.push_back(not_expr());
            left = std::move(node);
        }
        return left;
    }

    FilterExpr not_expr() {
        if (cur_.kind == Tok::Bang) {
            advance();
            FilterExpr node;
            node.kind = FilterExpr::Kind::Not;
            node.children.push_back(not_expr());
            return node;
        }
        if (cur_.kind == Tok::LParen) {
            advance();
            FilterExpr inner = or_expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        return comparison();
    }

    FilterExpr comparison() {
        FilterExpr node;
        node.kind = FilterExpr::Kind::Compare;
        node.lhs = operand();
        switch (cur_.kind) {
            case Tok::Lt: node.op = FilterExpr::Op::Lt; break;
            case Tok::Gt: node.op = FilterExpr::Op::Gt; break;
            case Tok::Eq: node.op = FilterExpr::Op::Eq; break;
            case Tok::Ne: node.op = FilterExpr::Op::Ne; break;
            case Tok::Le: node.op = FilterExpr::Op::Le; break;
            case Tok::Ge: node.op = FilterExpr::Op::Ge; break;
            default: fail("expected comparison operator");
        }
        advance();
        node.rhs = operand();
        return node;
    }

    FilterExpr::Operand operand() {
        FilterExpr::Operand o;
        switch (cur_.kind) {
            case Tok::Var: o.kind = FilterExpr::Operand::Kind::Var; break;
            case Tok::Integer:
            case Tok::Decimal:
            case Tok::Double: o.kind = FilterExpr::Operand::Kind::Number; break;
            case Tok::String: o.kind = FilterExpr::Operand::Kind::String; break;
            default: fail("expected variable, number or string in FILTER");
        }
        o.text = cur_.text;
        advance();
        return o;
    }

    void finish(Query& q) {
        std::set<std::string> vars = q.pattern_variables();
        for (const std::string& v : q.projection)
            if (!vars.count(v)) fail("projected variable ?" + v + " does not appear in the pattern");
        for (const FilterExpr& f : q.filters) check_filter_vars(f, vars);
        if (q.select_all) q.projection.assign(vars.begin(), vars.end());
    }

    void check_filter_vars(const FilterExpr& e, const std::set<std::string>& vars) {
        if (e.kind == FilterExpr::Kind::Compare) {
            for (const FilterExpr::Operand* o : {&e.lhs, &e.rhs})
                if (o->kind == FilterExpr::Operand::Kind::Var && !vars.count(o->text))
                    fail("FILTER variable ?" + o->text + " does not appear in the pattern");
            return;
        }
        for (const FilterExpr& c : e.children) check_filter_vars(c, vars);
    }

    Lexer lexer_;
    Token cur_;
    const PrefixMap* prefixes_ = nullptr;
};

}  // namespace query_detail

inline QueryParseResult parse_query(std::string_view text) {
    QueryParseResult out;
    try {
        query_detail::Parser p(text);
        out.query = p.run();
        out.ok = true;
    } catch (const query_detail::Error& e) {
        out.diagnostics.push_back({e.line, e.column, e.message, Severity::Error});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace query_detail {

enum class Truth { True, False, Error };

struct Value {
    enum class Kind { Number, String, Error } kind = Kind::Error;
    long double number = 0;
    std::string string;
};

inline Value operand_value(const FilterExpr::Operand& o, const Binding& row) {
    Value v;
    switch (o.kind) {
        case FilterExpr::Operand::Kind::Number:
            v.kind = Value::Kind::Number;
            v.number = std::strtold(o.text.c_str(), nullptr);
            return v;
        case FilterExpr::Operand::Kind::String:
            v.kind = Value::Kind::String;
            v.string = o.text;
            return v;
        case FilterExpr::Operand::Kind::Var: break;
    }
    auto it = row.find(o.text);
    if (it == row.end() || !it->second.is_literal()) return v;  // error
    const Term& t = it->second;
    if (is_numeric_datatype(t.datatype)) {
        auto parsed = parse_numeric_literal(t);
        if (!parsed) return v;
        v.kind = Value::Kind::Number;
        v.number = *parsed;
        return v;
    }
    v.kind = Value::Kind::String;
    v.string = t.value;  // lexical form
    return v;
}

inline Truth eval_compare(const FilterExpr& e, const Binding& row) {
    Value a = operand_value(e.lhs, row);
    Value b = operand_value(e.rhs, row);
    if (a.kind == Value::Kind::Error || b.kind == Value::Kind::Error) return Truth::Error;
    if (a.kind != b.kind) return Truth::Error;  // string vs number
    bool result = false;
    if (a.kind == Value::Kind::Number) {
        switch (e.op) {
            case FilterExpr::Op::Lt: result = a.number < b.number; break;
            case FilterExpr::Op::Gt: result = a.number > b.number; break;
            case FilterExpr::Op::Eq: result = a.number == b.number; break;
            case FilterExpr::Op::Ne: result = a.number != b.number; break;
            case FilterExpr::Op::Le: result = a.number <= b.number; break;
            case FilterExpr::Op::Ge: result = a.number >= b.number; break;
        }
        return result ? Truth::True : Truth::False;
    }
    // strings compare by lexical form, equality only
    switch (e.op) {
        case FilterExpr::Op::Eq: result = a.string == b.string; break;
        case FilterExpr::Op::Ne: result = a.string != b.string; break;
        default: return Truth::Error;
    }
    return result ? Truth::True : Truth::False;
}

inline Truth eval_filter(const FilterExpr& e, const Binding& row) {
    switch (e.kind) {
        case FilterExpr::Kind::Compare: return eval_compare(e, row);
        case FilterExpr::Kind::Not: {
            Truth t = eval_filter(e.children[0], row);
            if (t == Truth::Error) return t;
            return t == Truth::True ? Truth::False : Truth::True;
        }
        case FilterExpr::Kind::And: {
            Truth a = eval_filter(e.children[0], row);
            Truth b = eval_filter(e.children[1], row);
            if (a == Truth::False || b == Truth::False) return Truth::False;
            if (a == Truth::Error || b == Truth::Error) return Truth::Error;
            return Truth::True;
        }
        case FilterExpr::Kind::Or: {
            Truth a = eval_filter(e.children[0], row);
            Truth b = eval_filter(e.children[1], row);
            if (a == Truth::True || b == Truth::True) return Truth::True;
            if (a == Truth::Error || b == Truth::Error) return Truth::Error;
            return Truth::False;
        }
    }
    return Truth::Error;
}

inline TriplePattern substituted(const TriplePattern& p, const Binding& b) {
    auto slot = [&](const PatternSlot& s) -> PatternSlot {
        if (!s.is_var()) return s;
        auto it = b.find(s.var_name());
        if (it == b.end()) return s;
        return PatternSlot(it->second);
    };
    return {slot(p.subject), slot(p.predicate), slot(p.object)};
}

}  // namespace query_detail

/// Index-backed basic-graph-pattern join in pattern order, filters applied
/// to complete rows, then projection and a deterministic sort.
inline SolutionTable evaluate(const Query& q, const Graph& g) {
    std::vector<Binding> rows{Binding{}};
    for (const TriplePattern& p : q.patterns) {
        std::vector<Binding> next;
        for (const Binding& row : rows) {
            TriplePattern bound = query_detail::substituted(p, row);
            for (const Binding& extension : g.match(bound)) {
                Binding merged = row;
                merged.insert(extension.begin(), extension.end());
                next.push_back(std::move(merged));
            }
        }
        rows = std::move(next);
    }

    SolutionTable table;
    table.header = q.projection;
    for (const Binding& row : rows) {
        bool keep = true;
        for (const FilterExpr& f : q.filters) {
            if (query_detail::eval_filter(f, row) != query_detail::Truth::True) {
                keep = false;  // false or type error: row rejected
                break;
            }
        }
        if (!keep) continue;
        std::vector<Term> out;
        out.reserve(table.header.size());
        for (const std::string& v : table.header) out.push_back(row.at(v));
        table.rows.push_back(std::move(out));
    }

    std::sort(table.rows.begin(), table.rows.end(),
              [](const std::vector<Term>& a, const std::vector<Term>& b) {
                  for (std::size_t i = 0; i < a.size(); ++i) {
                      std::string ka = to_ntriples(a[i]), kb = to_ntriples(b[i]);
                      if (ka != kb) return ka < kb;
                  }
                  return false;
              });
    return table;
}

/// Term rendering for result tables: IRIs in angle brackets, blank nodes with
/// the "_:" prefix, literals as their bare lexical form.
inline std::string display_term(const Term& t) {
    switch (t.kind) {
        case TermKind::Iri: return "<" + t.value + ">";
        case TermKind::BlankNode: return "_:" + t.value;
        case TermKind::Literal: return t.value;
    }
    return {};
}

/// Header line plus one tab-separated line per row.
inline std::string to_tsv(const SolutionTable& t) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.header.size(); ++i)
        out << (i ? "\t" : "") << t.header[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "\t" : "") << display_term(row[i]);
        out << "\n";
    }
    return out.str();
}

/// Fixed-width rendering for terminals.
inline std::string to_aligned(const SolutionTable& t) {
    std::vector<std::size_t> width(t.header.size());
    for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : t.rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(display_term(row[i]));
            width[i] = std::max(width[i], line.back().size());
        }
        cells.push_back(std::move(line));
    }
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << line[i];
            if (i + 1 < line.size()) out << std::string(width[i] - line[i].size() + 2, ' ');
        }
        out << "\n";
    };
    emit(t.header);
    for (const auto& line : cells) emit(line);
    return out.str();
}

}  // namespace mdo
