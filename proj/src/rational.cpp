#include <rht/error.hpp>
#include <rht/rational.hpp>

#include <cctype>

namespace rht {

std::string to_string(const Rational& q) {
  const Integer num = numerator(q);
  const Integer den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer(s)) throw Error(ErrorKind::InvalidInput, "malformed scalar '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotSubspace: return "NotSubspace";
    case ErrorKind::NotComplex: return "NotComplex";
    case ErrorKind::NotChainMap: return "NotChainMap";
    case ErrorKind::NotDoubleComplex: return "NotDoubleComplex";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::IncompatibleFiltration: return "IncompatibleFiltration";
    case ErrorKind::NotFiltered: return "NotFiltered";
    case ErrorKind::NotAugmented: return "NotAugmented";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::EnumerationBoundExceeded: return "EnumerationBoundExceeded";
    case ErrorKind::InvalidAlgebra: return "InvalidAlgebra";
  }
  return "Unknown";
}

}  // namespace rht
