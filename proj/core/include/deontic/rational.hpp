#pragma once

#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace deontic {

/// Exact weights and history values. Dominance decisions compare these
/// exactly; there is no floating tolerance anywhere on that path.
using Rational = boost::rational<long long>;

/// Accepts "4", "-2.5", "0.125", "1/3" and "+7". Throws FormatError.
Rational parse_rational(std::string_view text);

/// Exact decimal text when the denominator divides a power of ten,
/// "n/d" otherwise. parse_rational(format_rational(x)) == x.
std::string format_rational(const Rational& value);

}  // namespace deontic
