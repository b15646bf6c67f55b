#ifndef SLE_SYMBOLIC_EXPRESSION_HPP
#define SLE_SYMBOLIC_EXPRESSION_HPP

#include <string>
#include <string_view>

#include "sle/symbolic/multirat.hpp"

namespace sle::symbolic {

/// Parses a `p/q` or integer literal; throws MalformedInput otherwise.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

/// Polynomial with variables printed as x1, x2, ...
std::string to_string(const Poly& p);

/// Canonical text form, e.g. `1/x1^2`, `(5/8)/x1^2`, `(x1 + x2)/(x1^2*x2^2)`.
/// Numerator and denominator are parenthesized unless they are a single
/// factor, so the string re-parses to the same function.
std::string to_string(const MultiRat& f);

/// Parses expressions built from integers, x1..xn, + - * / ^ (integer
/// exponent) and parentheses. Variables beyond nvars are an error.
MultiRat parse_multirat(std::string_view text, std::size_t nvars);

}  // namespace sle::symbolic

#endif
