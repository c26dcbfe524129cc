#pragma once
// Parser for the Turtle subset used by the toolkit's file formats, and for
// N-Triples (which this subset contains). Supported syntax: @prefix/@base,
// IRIs in angle brackets, prefixed names, the "a" keyword, ";" predicate
// lists, "," object lists, labeled and anonymous blank nodes, string /
// numeric / boolean literals, "^^" datatypes and language tags, comments.
// Not supported: collections "( )", triple-quoted strings, quoted triples.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdo/graph.hpp"
#include "mdo/prefix_map.hpp"
#include "mdo/term.hpp"

namespace mdo {

enum class Severity { Error, Warning };

struct ParseDiagnostic {
    int line = 1;
    int column = 1;
    std::string message;
    Severity severity = Severity::Error;
};

struct TurtleParseResult {
    bool ok = false;
    Graph graph;         // empty unless ok: no partial graph on error
    PrefixMap prefixes;  // declarations seen, in order
    std::vector<ParseDiagnostic> diagnostics;
};

namespace turtle_detail {

enum class Tok {
    Eof,
    IriRef,      // text = IRI content (unescaped, unresolved)
    PName,       // text = prefix label, aux = local part
    BlankLabel,  // text = label
    String,      // text = unescaped value
    Integer,
    Decimal,
    Double,      // numeric lexical kept verbatim in text
    Word,        // bare word: a / true / false
    LangTag,     // text = tag
    Dot,
    Semicolon,
    Comma,
    LBracket,
    RBracket,
    HatHat,
    PrefixDecl,
    BaseDecl,
};

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    std::string aux;
    int line = 1;
    int column = 1;
};

struct LexError {
    int line, column;
    std::string message;
};

inline void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp <= 0x7F) {
        out += static_cast<char>(cp);
    } else if (cp <= 0x7FF) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp <= 0xFFFF) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws_and_comments();
        Token t;
        t.line = line_;
        t.column = col_;
        if (at_end()) {
            t.kind = Tok::Eof;
            return t;
        }
        char c = peek();
        switch (c) {
            case '<': return lex_iriref(t);
            case '"': return lex_string(t);
            case '.': {
                // distinguish statement dot from a leading-dot decimal
                if (pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1])) return lex_number(t);
                get();
                t.kind = Tok::Dot;
                return t;
            }
            case ';': get(); t.kind = Tok::Semicolon; return t;
            case ',': get(); t.kind = Tok::Comma; return t;
            case '[': get(); t.kind = Tok::LBracket; return t;
            case ']': get(); t.kind = Tok::RBracket; return t;
            case '^':
                get();
                if (peek() != '^') fail(t.line, t.column, "expected '^^'");
                get();
                t.kind = Tok::HatHat;
                return t;
            case '@': return lex_at(t);
            case '_': return lex_blank(t);
            default: break;
        }
        if (c == '+' || c == '-' || is_digit(c)) return lex_number(t);
        return lex_word_or_pname(t);
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    char get() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_alpha(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    }
    static bool is_pn_char(char c) {
        return is_alpha(c) || is_digit(c) || c == '_' || c == '-' ||
               static_cast<unsigned char>(c) >= 0x80;
    }

    [[noreturn]] void fail(int line, int col, std::string msg) {
        throw LexError{line, col, std::move(msg)};
    }

    void skip_ws_and_comments() {
        while (!at_end()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                get();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') get();
            } else {
                break;
            }
        }
    }

    std::uint32_t lex_hex(int n, int line, int col) {
        std::uint32_t cp = 0;
        for (int i = 0; i < n; ++i) {
            if (at_end()) fail(line, col, "truncated \\u escape");
            char c = get();
            cp <<= 4;
            if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
            else fail(line, col, "bad hex digit in \\u escape");
        }
        return cp;
    }

    Token lex_iriref(Token t) {
        get();  // '<'
        std::string out;
        while (true) {
            if (at_end()) fail(t.line, t.column, "unterminated IRI");
            char c = get();
            if (c == '>') break;
            if (c == '\n') fail(t.line, t.column, "newline inside IRI");
            if (c == '\\') {
                if (at_end()) fail(t.line, t.column, "truncated escape in IRI");
                char e = get();
                if (e == 'u') append_utf8(out, lex_hex(4, t.line, t.column));
                else if (e == 'U') append_utf8(out, lex_hex(8, t.line, t.column));
                else fail(t.line, t.column, std::string("invalid IRI escape '\\") + e + "'");
            } else {
                out += c;
            }
        }
        t.kind = Tok::IriRef;
        t.text = std::move(out);
        return t;
    }

    Token lex_string(Token t) {
        get();  // '"'
        if (peek() == '"') {
            get();
            if (peek() == '"')
                fail(t.line, t.column, "triple-quoted strings are not supported");
            t.kind = Tok::String;  // empty string
            return t;
        }
        std::string out;
        while (true) {
            if (at_end()) fail(t.line, t.column, "unterminated string literal");
            char c = get();
            if (c == '"') break;
            if (c == '\n') fail(t.line, t.column, "newline inside string literal");
            if (c == '\\') {
                if (at_end()) fail(t.line, t.column, "truncated escape");
                char e = get();
                switch (e) {
                    case 't': out += '\t'; break;
                    case 'b': out += '\b'; break;
                    case 'n': out += '\n'; break;
                    case 'r': out += '\r'; break;
                    case 'f': out += '\f'; break;
                    case '"': out += '"'; break;
                    case '\'': out += '\''; break;
                    case '\\': out += '\\'; break;
                    case 'u': append_utf8(out, lex_hex(4, t.line, t.column)); break;
                    case 'U': append_utf8(out, lex_hex(8, t.line, t.column)); break;
                    default: fail(t.line, t.column, std::string("invalid escape '\\") + e + "'");
                }
            } else {
                out += c;
            }
        }
        t.kind = Tok::String;
        t.text = std::move(out);
        return t;
    }

    Token lex_number(Token t) {
        std::string out;
        bool has_dot = false, has_exp = false, digits = false;
        if (peek() == '+' || peek() == '-') out += get();
        while (!at_end()) {
            char c = peek();
            if (is_digit(c)) {
                digits = true;
                out += get();
            } else if (c == '.' && !has_dot && !has_exp) {
                // a trailing '.' is the statement terminator, not part of the number
                if (pos_ + 1 >= text_.size() || !is_digit(text_[pos_ + 1])) break;
                has_dot = true;
                out += get();
            } else if ((c == 'e' || c == 'E') && !has_exp && digits) {
                has_exp = true;
                out += get();
                if (peek() == '+' || peek() == '-') out += get();
            } else {
                break;
            }
        }
        if (!digits) fail(t.line, t.column, "malformed numeric literal");
        t.kind = has_exp ? Tok::Double : (has_dot ? Tok::Decimal : Tok::Integer);
        t.text = std::move(out);
        return t;
    }

    Token lex_at(Token t) {
        get();  // '@'
        std::string word;
        while (!at_end() && (is_alpha(peek()) || peek() == '-')) word += get();
        if (word == "prefix") {
            t.kind = Tok::PrefixDecl;
        } else if (word == "base") {
            t.kind = Tok::BaseDecl;
        } else if (!word.empty()) {
            t.kind = Tok::LangTag;
            t.text = std::move(word);
        } else {
            fail(t.line, t.column, "dangling '@'");
        }
        return t;
    }

    Token lex_blank(Token t) {
        get();  // '_'
        if (peek() != ':') fail(t.line, t.column, "expected ':' after '_'");
        get();
        std::string label;
        while (!at_end() && is_pn_char(peek())) label += get();
        if (label.empty()) fail(t.line, t.column, "empty blank node label");
        t.kind = Tok::BlankLabel;
        t.text = std::move(label);
        return t;
    }

    Token lex_word_or_pname(Token t) {
        std::string head;
        while (!at_end() && is_pn_char(peek())) head += get();
        if (peek() == ':') {
            get();
            std::string local;
            while (!at_end() && is_pn_char(peek())) local += get();
            t.kind = Tok::PName;
            t.text = std::move(head);
            t.aux = std::move(local);
            return t;
        }
        if (head.empty()) fail(t.line, t.column, std::string("unexpected character '") + peek() + "'");
        t.kind = Tok::Word;
        t.text = std::move(head);
        return t;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct ParseError {
    int line, column;
    std::string message;
};

class Parser {
public:
    Parser(std::string_view text, std::optional<std::string> base) : lexer_(text) {
        if (base) prefixes_.set_base(*base);
        advance();
    }

    void run() {
        while (cur_.kind != Tok::Eof) statement();
    }

    Graph& graph() { return graph_; }
    PrefixMap& prefixes() { return prefixes_; }

private:
    void advance() { cur_ = lexer_.next(); }

    [[noreturn]] void fail(std::string msg) { throw ParseError{cur_.line, cur_.column, std::move(msg)}; }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) fail(std::string("expected ") + what);
        advance();
    }

    void statement() {
        if (cur_.kind == Tok::PrefixDecl) {
            advance();
            if (cur_.kind != Tok::PName || !cur_.aux.empty())
                fail("expected prefix label ending in ':'");
            std::string label = cur_.text;
            advance();
            if (cur_.kind != Tok::IriRef) fail("expected namespace IRI");
            std::string iri = resolve_iri(cur_.text, prefixes_.base());
            advance();
            try {
                prefixes_.bind(label, iri);
            } catch (const TermError& e) {
                fail(e.what());
            }
            expect(Tok::Dot, "'.'");
            return;
        }
        if (cur_.kind == Tok::BaseDecl) {
            advance();
            if (cur_.kind != Tok::IriRef) fail("expected base IRI");
            try {
                prefixes_.set_base(resolve_iri(cur_.text, prefixes_.base()));
            } catch (const TermError& e) {
                fail(e.what());
            }
            advance();
            expect(Tok::Dot, "'.'");
            return;
        }
        Term subj = subject();
        // an anonymous subject "[ ... ]" may stand alone
        if (cur_.kind == Tok::Dot && subj.is_blank()) {
            advance();
            return;
        }
        predicate_object_list(subj);
        expect(Tok::Dot, "'.'");
    }

    Term subject() {
        switch (cur_.kind) {
            case Tok::IriRef:
            case Tok::PName: return iri_term();
            case Tok::BlankLabel: {
                Term t = Term::blank(cur_.text);
                advance();
                return t;
            }
            case Tok::LBracket: return blank_property_list();
            default: fail("expected subject (IRI or blank node)");
        }
    }

    Term iri_term() {
        if (cur_.kind == Tok::IriRef) {
            std::string iri = resolve_iri(cur_.text, prefixes_.base());
            advance();
            try {
                return Term::iri(iri);
            } catch (const TermError& e) {
                fail(e.what());
            }
        }
        auto ns = prefixes_.expand(cur_.text);
        if (!ns) fail("undefined prefix '" + cur_.text + ":'");
        std::string iri = *ns + cur_.aux;
        advance();
        try {
            return Term::iri(iri);
        } catch (const TermError& e) {
            fail(e.what());
        }
    }

    Term verb() {
        if (cur_.kind == Tok::Word && cur_.text == "a") {
            advance();
            return Term::iri(rdf_type_iri());
        }
        if (cur_.kind == Tok::IriRef || cur_.kind == Tok::PName) return iri_term();
        fail("expected predicate");
    }

    void predicate_object_list(const Term& subj) {
        while (true) {
            Term pred = verb();
            object_list(subj, pred);
            if (cur_.kind != Tok::Semicolon) break;
            while (cur_.kind == Tok::Semicolon) advance();
            // a trailing ';' before '.' or ']' closes the list
            if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBracket || cur_.kind == Tok::Eof)
                break;
        }
    }

    void object_list(const Term& subj, const Term& pred) {
        while (true) {
            Term obj = object();
            emit(subj, pred, obj);
            if (cur_.kind != Tok::Comma) break;
            advance();
        }
    }

    Term object() {
        switch (cur_.kind) {
            case Tok::IriRef:
            case Tok::PName: return iri_term();
            case Tok::BlankLabel: {
                Term t = Term::blank(cur_.text);
                advance();
                return t;
            }
            case Tok::LBracket: return blank_property_list();
            case Tok::String: return rdf_literal();
            case Tok::Integer:
            case Tok::Decimal:
            case Tok::Double: return numeric_literal();
            case Tok::Word:
                if (cur_.text == "true" || cur_.text == "false") {
                    Term t = Term::literal(cur_.text, xsd_iri("boolean"));
                    advance();
                    return t;
                }
                fail("unexpected word '" + cur_.text + "'");
            default: fail("expected object");
        }
    }

    Term rdf_literal() {
        std::string lexical = cur_.text;
        advance();
        if (cur_.kind == Tok::LangTag) {
            std::string lang = cur_.text;
            advance();
            return Term::lang_literal(std::move(lexical), std::move(lang));
        }
        if (cur_.kind == Tok::HatHat) {
            advance();
            if (cur_.kind != Tok::IriRef && cur_.kind != Tok::PName)
                fail("expected datatype IRI after '^^'");
            Term dt = iri_term();
            try {
                return Term::literal(std::move(lexical), dt.value);
            } catch (const TermError& e) {
                fail(e.what());
            }
        }
        return Term::string_literal(std::move(lexical));
    }

    // Bare numeric shorthands: integer -> xsd:integer, decimal -> xsd:decimal,
    // exponent form -> xsd:double. Lexical text is preserved verbatim.
    Term numeric_literal() {
        const char* dt = cur_.kind == Tok::Double ? "double"
                         : cur_.kind == Tok::Decimal ? "decimal"
                                                     : "integer";
        Term t = Term::literal(cur_.text, xsd_iri(dt));
        advance();
        return t;
    }

    Term blank_property_list() {
        advance();  // '['
        Term node = graph_.fresh_blank();
        if (cur_.kind != Tok::RBracket) predicate_object_list(node);
        expect(Tok::RBracket, "']'");
        return node;
    }

    void emit(const Term& s, const Term& p, const Term& o) {
        try {
            graph_.insert(s, p, o);
        } catch (const TermError& e) {
            fail(e.what());
        }
    }

    Lexer lexer_;
    Token cur_;
    Graph graph_;
    PrefixMap prefixes_;
};

}  // namespace turtle_detail

inline TurtleParseResult parse_turtle(std::string_view text,
                                      std::optional<std::string> base = std::nullopt) {
    TurtleParseResult result;
    try {
        turtle_detail::Parser p(text, std::move(base));
        p.run();
        result.ok = true;
        result.graph = std::move(p.graph());
        result.prefixes = std::move(p.prefixes());
    } catch (const turtle_detail::LexError& e) {
        result.diagnostics.push_back({e.line, e.column, e.message, Severity::Error});
    } catch (const turtle_detail::ParseError& e) {
        result.diagnostics.push_back({e.line, e.column, e.message, Severity::Error});
    }
    return result;
}

/// N-Triples documents are valid input to the Turtle subset; this entry
/// point exists for callers that want the format named explicitly.
inline TurtleParseResult parse_ntriples(std::string_view text) { return parse_turtle(text); }

}  // namespace mdo
