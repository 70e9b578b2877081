// fmech — minimal TOML subset reader for scenario files
// Supports exactly what scenario files need: `[section]` and
// `[section.subsection]` headers, `key = value` pairs with number, quoted
// string, or single-line homogeneous array values, and `#` comments. Values
// land in a flat map keyed by dotted path ("system.params.m"), which is all
// the scenario loader wants. Anything outside the subset is rejected with a
// line-numbered configuration error rather than guessed at.
#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <fmech/errors.hpp>

namespace fmech {

/// One parsed configuration value.
struct TomlValue {
    enum class Kind { Number, String, NumberList, StringList, EmptyList };
    Kind kind{Kind::Number};
    double number{0.0};
    std::string text;
    std::vector<double> numbers;
    std::vector<std::string> texts;
};

/// Flat dotted-path map of every key in the file.
using TomlTable = std::map<std::string, TomlValue>;

namespace detail {

inline std::string toml_trim(const std::string &s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

[[noreturn]] inline void toml_fail(std::size_t line, const std::string &msg) {
    throw config_error("scenario",
                       "line " + std::to_string(line) + ": " + msg);
}

inline bool valid_key(const std::string &key) {
    if (key.empty())
        return false;
    for (char c : key)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

inline bool valid_section(const std::string &name) {
    if (name.empty() || name.front() == '.' || name.back() == '.')
        return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' &&
            c != '.')
            return false;
    return true;
}

/// Strip a trailing comment, honouring quoted strings.
inline std::string strip_comment(const std::string &line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"')
            quoted = !quoted;
        else if (line[i] == '#' && !quoted)
            return line.substr(0, i);
    }
    return line;
}

inline double parse_toml_number(const std::string &token, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size())
            toml_fail(line, "trailing characters after number `" + token + "`");
        return v;
    } catch (const config_error &) {
        throw;
    } catch (const std::exception &) {
        toml_fail(line, "not a number: `" + token + "`");
    }
}

/// Split a single-line `[ ... ]` body into raw element tokens, respecting
/// quoted strings.
inline std::vector<std::string> split_array(const std::string &body,
                                            std::size_t line) {
    std::vector<std::string> out;
    std::string current;
    bool quoted = false;
    for (char c : body) {
        if (c == '"') {
            quoted = !quoted;
            current.push_back(c);
        } else if (c == ',' && !quoted) {
            out.push_back(toml_trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (quoted)
        toml_fail(line, "unterminated string in array");
    const std::string tail = toml_trim(current);
    if (!tail.empty())
        out.push_back(tail);
    for (const std::string &elem : out)
        if (elem.empty())
            toml_fail(line, "empty array element");
    return out;
}

inline TomlValue parse_value(const std::string &raw, std::size_t line) {
    TomlValue value;
    if (raw.empty())
        toml_fail(line, "missing value");
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"')
            toml_fail(line, "unterminated string");
        const std::string body = raw.substr(1, raw.size() - 2);
        if (body.find('"') != std::string::npos)
            toml_fail(line, "embedded quote in string");
        value.kind = TomlValue::Kind::String;
        value.text = body;
        return value;
    }
    if (raw.front() == '[') {
        if (raw.back() != ']')
            toml_fail(line, "array must open and close on one line");
        const std::vector<std::string> elems =
            split_array(raw.substr(1, raw.size() - 2), line);
        if (elems.empty()) {
            value.kind = TomlValue::Kind::EmptyList;
            return value;
        }
        const bool strings = elems.front().front() == '"';
        value.kind = strings ? TomlValue::Kind::StringList
                             : TomlValue::Kind::NumberList;
        for (const std::string &elem : elems) {
            if ((elem.front() == '"') != strings)
                toml_fail(line, "array mixes strings and numbers");
            if (strings) {
                if (elem.size() < 2 || elem.back() != '"' ||
                    elem.substr(1, elem.size() - 2).find('"') !=
                        std::string::npos)
                    toml_fail(line, "malformed string in array");
                value.texts.push_back(elem.substr(1, elem.size() - 2));
            } else {
                value.numbers.push_back(parse_toml_number(elem, line));
            }
        }
        return value;
    }
    value.kind = TomlValue::Kind::Number;
    value.number = parse_toml_number(raw, line);
    return value;
}

} // namespace detail

/// Parse configuration text into a flat dotted-path table.
inline TomlTable parse_toml(const std::string &text) {
    TomlTable table;
    std::string prefix;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string raw =
            text.substr(pos, eol == std::string::npos ? std::string::npos
                                                      : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::string line = detail::toml_trim(detail::strip_comment(raw));
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                detail::toml_fail(line_no, "malformed section header");
            const std::string name =
                detail::toml_trim(line.substr(1, line.size() - 2));
            if (!detail::valid_section(name))
                detail::toml_fail(line_no, "invalid section name `" + name + "`");
            prefix = name + ".";
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            detail::toml_fail(line_no, "expected `key = value`");
        const std::string key = detail::toml_trim(line.substr(0, eq));
        if (!detail::valid_key(key))
            detail::toml_fail(line_no, "invalid key `" + key + "`");
        const std::string path = prefix + key;
        if (table.count(path))
            detail::toml_fail(line_no, "duplicate key `" + path + "`");
        table[path] =
            detail::parse_value(detail::toml_trim(line.substr(eq + 1)), line_no);
    }
    return table;
}

} // namespace fmech
