#pragma once

#include "fnsurf/poly.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fnsurf {

/// Raised by parse(); position is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    [[nodiscard]] std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Grammar:
///   expr     := ['-'] term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' nat)?
///   base     := rational | symbol | '(' expr ')' | '-' base
///   rational := nat ('/' nat)?
/// Symbols are x y z a b c d m alpha.
[[nodiscard]] Poly parse(std::string_view text);

/// Canonical text form: terms in decreasing monomial order, parameters
/// before state variables within a term. parse(print(p)) == p.
[[nodiscard]] std::string print(const Poly& p);

}  // namespace fnsurf
