#pragma once

// JSON plumbing shared by the serializers.

#include <json.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mixedab {

/// A well-formed JSON document that does not match the expected schema.
class FormatError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

inline const nlohmann::json& json_field(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

inline std::string json_string(const nlohmann::json& j, const std::string& path) {
    if (!j.is_string()) throw FormatError(path + ": expected a string");
    return j.get<std::string>();
}

inline long long json_int(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number_integer()) throw FormatError(path + ": expected an integer");
    return j.get<long long>();
}

struct TextPosition {
    std::size_t line = 1;
    std::size_t column = 1;
};

/// 1-based line and column of a byte offset.
inline TextPosition position_of(const std::string& text, std::size_t offset) {
    TextPosition pos;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
    }
    return pos;
}

/// Parses text, rethrowing syntax errors as FormatError with a line:column prefix.
inline nlohmann::json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte is one past the offending character
        const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
        const TextPosition pos = position_of(text, off);
        std::string msg = e.what();
        auto cut = msg.find("parse error");
        throw FormatError(source + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                          (cut == std::string::npos ? msg : msg.substr(cut)));
    }
}

}  // namespace mixedab
