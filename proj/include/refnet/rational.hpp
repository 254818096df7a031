#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace refnet {

using Rational = boost::multiprecision::mpq_rational;

/// Parses a decimal or scientific numeral ("-12", "0.5", "2.5e1", ".3E-2")
/// or a fraction ("-7/3") into an exact rational. Returns nullopt on anything else.
std::optional<Rational> parse_rational(std::string_view text);

/// Shortest exact text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

} // namespace refnet
