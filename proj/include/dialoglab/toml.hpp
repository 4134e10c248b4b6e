#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dialoglab {

// Small TOML reader covering the subset this project's config files use:
// comments, [table] / [[array-of-table]] headers, dotted keys, strings,
// integers, floats, booleans and single-line arrays.
class TomlValue {
public:
    using Array = std::vector<TomlValue>;
    using Table = std::map<std::string, TomlValue>;

    TomlValue() : value_(Table{}) {}
    explicit TomlValue(std::string v) : value_(std::move(v)) {}
    explicit TomlValue(std::int64_t v) : value_(v) {}
    explicit TomlValue(double v) : value_(v) {}
    explicit TomlValue(bool v) : value_(v) {}
    explicit TomlValue(Array v) : value_(std::move(v)) {}
    explicit TomlValue(Table v) : value_(std::move(v)) {}

    bool is_string() const { return std::holds_alternative<std::string>(value_); }
    bool is_integer() const { return std::holds_alternative<std::int64_t>(value_); }
    bool is_float() const { return std::holds_alternative<double>(value_); }
    bool is_number() const { return is_integer() || is_float(); }
    bool is_boolean() const { return std::holds_alternative<bool>(value_); }
    bool is_array() const { return std::holds_alternative<Array>(value_); }
    bool is_table() const { return std::holds_alternative<Table>(value_); }

    const std::string& as_string() const;
    std::int64_t as_integer() const;
    double as_number() const;  // integer or float
    bool as_boolean() const;
    const Array& as_array() const;
    const Table& as_table() const;
    Table& table();
    Array& array();

    // Dotted path lookup, e.g. find("synth.seed"); nullptr when absent.
    const TomlValue* find(std::string_view path) const;

private:
    std::variant<std::string, std::int64_t, double, bool, Array, Table> value_;
};

TomlValue parse_toml(std::string_view text, const std::string& origin);
TomlValue parse_toml_file(const std::string& path);

}  // namespace dialoglab
