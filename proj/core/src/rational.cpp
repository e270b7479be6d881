#include "deontic/rational.hpp"

#include <cctype>
#include <limits>

#include "deontic/errors.hpp"

namespace deontic {

namespace {

long long parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw FormatError("malformed number '" + std::string(whole) + "'");
  long long v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw FormatError("malformed number '" + std::string(whole) + "'");
    if (v > (std::numeric_limits<long long>::max() - (c - '0')) / 10)
      throw FormatError("number out of range '" + std::string(whole) + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const long long num = parse_digits(s.substr(0, slash), text);
    const long long den = parse_digits(s.substr(slash + 1), text);
    if (den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
    result = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw FormatError("malformed number '" + std::string(text) + "'");
    const long long whole = int_part.empty() ? 0 : parse_digits(int_part, text);
    long long frac = frac_part.empty() ? 0 : parse_digits(frac_part, text);
    long long den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) {
      if (den > std::numeric_limits<long long>::max() / 10)
        throw FormatError("too many decimals in '" + std::string(text) + "'");
      den *= 10;
    }
    result = Rational(whole) + Rational(frac, den);
  } else {
    result = Rational(parse_digits(s, text));
  }
  return negative ? -result : result;
}

std::string format_rational(const Rational& value) {
  const long long num = value.numerator();
  long long den = value.denominator();
  if (den == 1) return std::to_string(num);

  long long rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) rest /= 2, ++twos;
  while (rest % 5 == 0) rest /= 5, ++fives;
  if (rest != 1) return std::to_string(num) + "/" + std::to_string(den);

  // Scale to den' = 10^k.
  const int k = twos > fives ? twos : fives;
  long long factor = 1;
  for (int i = twos; i < k; ++i) factor *= 2;
  for (int i = fives; i < k; ++i) factor *= 5;
  const bool negative = num < 0;
  unsigned long long scaled = static_cast<unsigned long long>(negative ? -num : num) *
                              static_cast<unsigned long long>(factor);
  std::string digits = std::to_string(scaled);
  if (digits.size() <= static_cast<std::size_t>(k)) digits.insert(0, k - digits.size() + 1, '0');
  digits.insert(digits.size() - k, ".");
  return (negative ? "-" : "") + digits;
}

}  // namespace deontic
