#pragma once
// JSON document model that keeps the source lexical form of numbers, fed by
// nlohmann's SAX parser. Mapped literals must reproduce the payload text
// ("1.5623" stays "1.5623", not a re-printed double).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace mdo {

struct JsonValue {
    enum class Kind { Null, Boolean, Number, String, Array, Object };

    Kind kind = Kind::Null;
    bool boolean = false;
    std::string text;  // number lexical form or string contents
    std::vector<JsonValue> array;
    std::vector<std::pair<std::string, JsonValue>> object;  // insertion order

    bool is_scalar() const {
        return kind == Kind::Boolean || kind == Kind::Number || kind == Kind::String;
    }

    const JsonValue* member(const std::string& key) const {
        if (kind != Kind::Object) return nullptr;
        for (const auto& [k, v] : object)
            if (k == key) return &v;
        return nullptr;
    }
};

struct JsonParseResult {
    bool ok = false;
    JsonValue value;
    std::string error;
};

namespace json_detail {

class LexicalSax {
public:
    using json = nlohmann::json;

    bool null() { return leaf(JsonValue{}); }
    bool boolean(bool v) {
        JsonValue j;
        j.kind = JsonValue::Kind::Boolean;
        j.boolean = v;
        j.text = v ? "true" : "false";
        return leaf(std::move(j));
    }
    bool number_integer(json::number_integer_t v) { return number(std::to_string(v)); }
    bool number_unsigned(json::number_unsigned_t v) { return number(std::to_string(v)); }
    bool number_float(json::number_float_t, const std::string& raw) { return number(raw); }
    bool string(std::string& v) {
        JsonValue j;
        j.kind = JsonValue::Kind::String;
        j.text = v;
        return leaf(std::move(j));
    }
    bool binary(json::binary_t&) { return false; }

    bool start_object(std::size_t) {
        JsonValue j;
        j.kind = JsonValue::Kind::Object;
        stack_.push_back(std::move(j));
        return true;
    }
    bool key(std::string& k) {
        keys_.push_back(k);
        return true;
    }
    bool end_object() { return pop(); }
    bool start_array(std::size_t) {
        JsonValue j;
        j.kind = JsonValue::Kind::Array;
        stack_.push_back(std::move(j));
        return true;
    }
    bool end_array() { return pop(); }

    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        error = "JSON parse error at byte " + std::to_string(position) + ": " + ex.what();
        return false;
    }

    JsonValue root;
    std::string error;

private:
    bool number(std::string raw) {
        JsonValue j;
        j.kind = JsonValue::Kind::Number;
        j.text = std::move(raw);
        return leaf(std::move(j));
    }

    bool leaf(JsonValue v) {
        if (stack_.empty()) {
            root = std::move(v);
            return true;
        }
        attach(std::move(v));
        return true;
    }

    void attach(JsonValue v) {
        JsonValue& top = stack_.back();
        if (top.kind == JsonValue::Kind::Object) {
            top.object.emplace_back(std::move(keys_.back()), std::move(v));
            keys_.pop_back();
        } else {
            top.array.push_back(std::move(v));
        }
    }

    bool pop() {
        JsonValue done = std::move(stack_.back());
        stack_.pop_back();
        return leaf(std::move(done));
    }

    std::vector<JsonValue> stack_;
    std::vector<std::string> keys_;
};

}  // namespace json_detail

inline JsonParseResult parse_json(std::string_view text) {
    JsonParseResult out;
    json_detail::LexicalSax sax;
    if (nlohmann::json::sax_parse(text, &sax)) {
        out.ok = true;
        out.value = std::move(sax.root);
    } else {
        out.error = sax.error.empty() ? "JSON parse error" : sax.error;
    }
    return out;
}

}  // namespace mdo
