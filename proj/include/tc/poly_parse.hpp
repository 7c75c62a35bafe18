#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tc/poly.hpp"

namespace tc {

/// Syntax or name-resolution failure with a 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses integer literals, identifiers, `+ - * ^` and parentheses. Every
/// identifier must name a variable of `vars`. `line`/`column_offset` locate the
/// text inside an enclosing file for diagnostics.
Poly parse_poly(std::string_view text, const Vars& vars, std::size_t line = 1,
                std::size_t column_offset = 0);

bool is_identifier(std::string_view s);

}  // namespace tc
