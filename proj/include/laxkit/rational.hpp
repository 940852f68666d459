// Exact rational scalar used throughout: arbitrary-precision, value semantics.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace laxkit {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, gcd(p,q)=1).
std::string to_string(const Rational& r);

// Accepts "p", "p/q", optional leading '-' on either part, surrounding no
// whitespace. Decimal points are rejected: the wire format is exact.
std::optional<Rational> parse_rational(const std::string& s);

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace laxkit
