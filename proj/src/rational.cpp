#include "qacp/rational.hpp"

#include <cctype>

namespace qacp {

std::string rational_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  if (i == text.size()) return false;
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) return false;
  }
  out = BigInt(std::string(text));
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  const std::size_t slash = text.find('/');
  BigInt num;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) return std::nullopt;
    return Rational(num);
  }
  BigInt den;
  if (!parse_integer(text.substr(0, slash), num)) return std::nullopt;
  if (!parse_integer(text.substr(slash + 1), den)) return std::nullopt;
  if (den == 0) return std::nullopt;
  return Rational(num, den);
}

}  // namespace qacp
