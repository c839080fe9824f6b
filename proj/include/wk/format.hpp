// format.hpp - the .wk machine file format
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wk/model.hpp"

namespace wk {

struct ParseError {
    std::size_t line = 0;    // 1-based; 0 when no single line is at fault
    std::size_t column = 0;  // 1-based
    std::string message;
};

struct ParsedMachine {
    std::variant<TwoWayMachine, OneWayMachine> machine;
    std::vector<std::size_t> transition_lines;  // source line per transition

    bool two_way() const { return std::holds_alternative<TwoWayMachine>(machine); }
    const TwoWayMachine& as_two_way() const { return std::get<TwoWayMachine>(machine); }
    const OneWayMachine& as_one_way() const { return std::get<OneWayMachine>(machine); }
};

struct ParseResult {
    std::optional<ParsedMachine> machine;  // present when syntax was accepted
    std::vector<ParseError> errors;

    bool ok() const { return machine.has_value() && errors.empty(); }
};

/// Syntax only: builds the machine without requiring it to validate.
ParseResult parse_raw(std::string_view text);

/// Syntax plus structural validation; violations are reported as errors with
/// the line of the offending transition.
ParseResult parse(std::string_view text);

/// Canonical form: fixed section order, states in declaration order,
/// transitions sorted by (from, upper word, lower word, to). Parsing the
/// output reproduces the machine structurally.
std::string serialize(const TwoWayMachine& m);
std::string serialize(const OneWayMachine& m);

}  // namespace wk
