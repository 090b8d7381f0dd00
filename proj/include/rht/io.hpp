#pragma once

// Text formats: presentation files, element expressions and bracket
// expressions.
//
//   cdga NAME | ring NAME       header (first non-comment line)
//   gen NAME DEGREE             generator
//   d NAME = EXPR               differential (cdga only; default 0)
//   rel EXPR                    relation set to zero (ring only)
//   fundamental N               top degree (ring only)
//   duality                     check Poincare duality (ring only)
//   # ...                       comment
//
// EXPR uses generators, + - * ^, parentheses and integer or p/q literals.

#include "rht/exterior.hpp"
#include "rht/whitehead.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace rht {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

struct Presentation {
    enum class Kind { Cdga, Ring } kind = Kind::Cdga;
    std::string name;
    Cdga algebra; // for rings: the quotient with zero differential
    std::optional<RingPresentation> ring;
};

Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);

/// Parses EXPR against the generators of `algebra` (result is adopted).
Element parse_element(const Cdga& algebra, const std::string& text);

std::string format_monomial(const Cdga& algebra, const Monomial& m);
std::string format_element(const Cdga& algebra, const Element& x);

/// Canonical text of a presentation; parsing it back gives an equal algebra.
std::string format_presentation(const Presentation& p);

/// Leaves `name` or `N*name` (N integer or p/q), nodes `[expr,expr]`.
Bracket parse_bracket(const std::string& text);

} // namespace rht
