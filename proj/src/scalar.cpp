#include "fullmod/scalar.hpp"

#include <cctype>

namespace fullmod {

namespace {

std::string strip(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Integer parse_integer(const std::string& text) {
  std::string t = strip(text);
  if (!t.empty() && t[0] == '+') t = t.substr(1);
  size_t start = (!t.empty() && t[0] == '-') ? 1 : 0;
  if (t.size() == start) throw ParseError("expected an integer, got '" + text + "'");
  for (size_t i = start; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i])))
      throw ParseError("expected an integer, got '" + text + "'");
  return Integer(t);
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

}  // namespace fullmod
