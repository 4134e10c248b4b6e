#include "dialoglab/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "dialoglab/error.hpp"

namespace dialoglab {

const std::string& TomlValue::as_string() const {
    if (!is_string()) throw ValidationError("toml: expected a string");
    return std::get<std::string>(value_);
}

std::int64_t TomlValue::as_integer() const {
    if (!is_integer()) throw ValidationError("toml: expected an integer");
    return std::get<std::int64_t>(value_);
}

double TomlValue::as_number() const {
    if (is_integer()) return static_cast<double>(std::get<std::int64_t>(value_));
    if (is_float()) return std::get<double>(value_);
    throw ValidationError("toml: expected a number");
}

bool TomlValue::as_boolean() const {
    if (!is_boolean()) throw ValidationError("toml: expected a boolean");
    return std::get<bool>(value_);
}

const TomlValue::Array& TomlValue::as_array() const {
    if (!is_array()) throw ValidationError("toml: expected an array");
    return std::get<Array>(value_);
}

const TomlValue::Table& TomlValue::as_table() const {
    if (!is_table()) throw ValidationError("toml: expected a table");
    return std::get<Table>(value_);
}

TomlValue::Table& TomlValue::table() {
    if (!is_table()) throw ValidationError("toml: expected a table");
    return std::get<Table>(value_);
}

TomlValue::Array& TomlValue::array() {
    if (!is_array()) throw ValidationError("toml: expected an array");
    return std::get<Array>(value_);
}

const TomlValue* TomlValue::find(std::string_view path) const {
    const TomlValue* node = this;
    while (!path.empty()) {
        if (!node->is_table()) return nullptr;
        auto dot = path.find('.');
        std::string key(path.substr(0, dot));
        const auto& table = std::get<Table>(node->value_);
        auto it = table.find(key);
        if (it == table.end()) return nullptr;
        node = &it->second;
        if (dot == std::string_view::npos) break;
        path.remove_prefix(dot + 1);
    }
    return node;
}

namespace {

struct Parser {
    std::string_view text;
    std::string origin;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ValidationError(origin + ":" + std::to_string(line_no) + ": " + msg);
    }

    static std::string_view trim(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    }

    // Strips a trailing comment, respecting quoted strings.
    static std::string_view strip_comment(std::string_view line) {
        bool in_string = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
            if (c == '#' && !in_string) return line.substr(0, i);
        }
        return line;
    }

    std::vector<std::string> split_key(std::string_view key) const {
        std::vector<std::string> parts;
        std::string part;
        for (char c : key) {
            if (c == '.') {
                if (part.empty()) fail("empty key segment");
                parts.push_back(part);
                part.clear();
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
                part.push_back(c);
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                fail(std::string("bad character '") + c + "' in key");
            }
        }
        if (part.empty()) fail("empty key segment");
        parts.push_back(part);
        return parts;
    }

    std::string parse_string(std::string_view& s) const {
        if (s.empty() || s.front() != '"') fail("expected a string");
        std::string out;
        std::size_t i = 1;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c == '\\') {
                if (++i >= s.size()) fail("dangling escape");
                switch (s[i]) {
                    case 'n': out.push_back('\n'); break;
                    case 't': out.push_back('\t'); break;
                    case '"': out.push_back('"'); break;
                    case '\\': out.push_back('\\'); break;
                    default: fail("unsupported escape");
                }
            } else if (c == '"') {
                s.remove_prefix(i + 1);
                return out;
            } else {
                out.push_back(c);
            }
        }
        fail("unterminated string");
    }

    TomlValue parse_value(std::string_view& s) const {
        s = trim(s);
        if (s.empty()) fail("missing value");
        if (s.front() == '"') return TomlValue(parse_string(s));
        if (s.front() == '[') {
            s.remove_prefix(1);
            TomlValue::Array items;
            while (true) {
                s = trim(s);
                if (s.empty()) fail("unterminated array");
                if (s.front() == ']') {
                    s.remove_prefix(1);
                    break;
                }
                items.push_back(parse_value(s));
                s = trim(s);
                if (!s.empty() && s.front() == ',') s.remove_prefix(1);
            }
            return TomlValue(std::move(items));
        }
        // bare scalar up to , or ]
        std::size_t end = 0;
        while (end < s.size() && s[end] != ',' && s[end] != ']') ++end;
        std::string token(trim(s.substr(0, end)));
        s.remove_prefix(end);
        if (token == "true") return TomlValue(true);
        if (token == "false") return TomlValue(false);
        if (token.empty()) fail("missing value");
        bool integer = true;
        for (std::size_t i = 0; i < token.size(); ++i) {
            char c = token[i];
            if (i == 0 && (c == '+' || c == '-')) continue;
            if (!std::isdigit(static_cast<unsigned char>(c))) integer = false;
        }
        try {
            if (integer) return TomlValue(static_cast<std::int64_t>(std::stoll(token)));
            std::size_t used = 0;
            double v = std::stod(token, &used);
            if (used != token.size()) fail("bad value '" + token + "'");
            return TomlValue(v);
        } catch (const ValidationError&) {
            throw;
        } catch (const std::exception&) {
            fail("bad value '" + token + "'");
        }
    }

    TomlValue* descend(TomlValue* node, const std::vector<std::string>& parts, std::size_t count) const {
        for (std::size_t i = 0; i < count; ++i) {
            auto& table = node->table();
            auto [it, inserted] = table.try_emplace(parts[i], TomlValue(TomlValue::Table{}));
            node = &it->second;
            if (node->is_array()) {
                // descend into the latest array-of-tables element
                if (node->array().empty()) fail("empty table array '" + parts[i] + "'");
                node = &node->array().back();
            }
            if (!node->is_table()) fail("key '" + parts[i] + "' is not a table");
        }
        return node;
    }

    TomlValue parse() {
        TomlValue root;
        TomlValue* current = &root;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                                   : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            ++line_no;
            line = trim(strip_comment(line));
            if (line.empty()) continue;

            if (line.front() == '[') {
                bool array_header = line.size() > 1 && line[1] == '[';
                std::string_view inner = line;
                inner.remove_prefix(array_header ? 2 : 1);
                std::size_t close = inner.find(array_header ? "]]" : "]");
                if (close == std::string_view::npos) fail("unterminated table header");
                if (!trim(inner.substr(close + (array_header ? 2 : 1))).empty())
                    fail("trailing characters after table header");
                auto parts = split_key(trim(inner.substr(0, close)));
                if (array_header) {
                    TomlValue* parent = descend(&root, parts, parts.size() - 1);
                    auto& table = parent->table();
                    auto [it, inserted] =
                        table.try_emplace(parts.back(), TomlValue(TomlValue::Array{}));
                    if (!it->second.is_array()) fail("key '" + parts.back() + "' is not a table array");
                    it->second.array().emplace_back(TomlValue::Table{});
                    current = &it->second.array().back();
                } else {
                    current = descend(&root, parts, parts.size());
                }
                continue;
            }

            auto eq = line.find('=');
            if (eq == std::string_view::npos) fail("expected key = value");
            auto parts = split_key(trim(line.substr(0, eq)));
            std::string_view rest = trim(line.substr(eq + 1));
            TomlValue value = parse_value(rest);
            if (!trim(rest).empty()) fail("trailing characters after value");
            TomlValue* target = descend(current, parts, parts.size() - 1);
            auto& table = target->table();
            if (!table.try_emplace(parts.back(), std::move(value)).second)
                fail("duplicate key '" + parts.back() + "'");
        }
        return root;
    }
};

}  // namespace

TomlValue parse_toml(std::string_view text, const std::string& origin) {
    Parser parser{text, origin};
    return parser.parse();
}

TomlValue parse_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    return parse_toml(text, path);
}

}  // namespace dialoglab
