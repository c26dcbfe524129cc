#pragma once
// JSONPath subset for data extraction: "$" root, ".field", "[N]" and "[*]".
// No filters, unions or recursive descent. A missing field yields an empty
// selection rather than an error.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdo/json_value.hpp"

namespace mdo {

class PathError : public std::invalid_argument {
public:
    PathError(std::string msg, std::size_t column)
        : std::invalid_argument(std::move(msg)), column(column) {}
    std::size_t column;  // 1-based offset into the path text
};

struct PathStep {
    enum class Kind { Field, Index, Wildcard };
    Kind kind;
    std::string field;
    std::size_t index = 0;
};

struct PathExpr {
    std::string text;  // as written
    std::vector<PathStep> steps;
};

inline PathExpr parse_path(const std::string& text) {
    PathExpr p;
    p.text = text;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) { throw PathError(msg, i + 1); };
    if (text.empty() || text[0] != '$') fail("path must start with '$'");
    i = 1;
    while (i < text.size()) {
        char c = text[i];
        if (c == '.') {
            ++i;
            if (i < text.size() && text[i] == '.') fail("recursive descent is not supported");
            std::size_t start = i;
            while (i < text.size() && text[i] != '.' && text[i] != '[') ++i;
            if (i == start) fail("empty field name");
            p.steps.push_back({PathStep::Kind::Field, text.substr(start, i - start)});
        } else if (c == '[') {
            ++i;
            if (i < text.size() && text[i] == '*') {
                ++i;
                if (i >= text.size() || text[i] != ']') fail("expected ']'");
                ++i;
                p.steps.push_back({PathStep::Kind::Wildcard, ""});
            } else {
                std::size_t start = i;
                while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
                if (i == start) fail("expected array index or '*'");
                if (i >= text.size() || text[i] != ']') fail("expected ']'");
                PathStep s{PathStep::Kind::Index, ""};
                s.index = static_cast<std::size_t>(std::stoull(text.substr(start, i - start)));
                ++i;
                p.steps.push_back(s);
            }
        } else {
            fail(std::string("unexpected character '") + c + "' in path");
        }
    }
    return p;
}

/// All values reachable via the path; "[*]" fans out, absence is empty.
inline std::vector<const JsonValue*> eval_path(const JsonValue& doc, const PathExpr& p) {
    std::vector<const JsonValue*> cur{&doc};
    for (const PathStep& step : p.steps) {
        std::vector<const JsonValue*> next;
        for (const JsonValue* v : cur) {
            switch (step.kind) {
                case PathStep::Kind::Field:
                    if (const JsonValue* m = v->member(step.field)) next.push_back(m);
                    break;
                case PathStep::Kind::Index:
                    if (v->kind == JsonValue::Kind::Array && step.index < v->array.size())
                        next.push_back(&v->array[step.index]);
                    break;
                case PathStep::Kind::Wildcard:
                    if (v->kind == JsonValue::Kind::Array)
                        for (const JsonValue& e : v->array) next.push_back(&e);
                    break;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace mdo
