#include "tfb/rational.hpp"

#include <cctype>
#include <ostream>

namespace tfb {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  if (!is_integer_token(num))
    throw Error("bad rational literal: \"" + text + "\"");
  Rational r;
  if (slash == std::string::npos) {
    r.v_ = mpq_class(mpz_class(num));
    return r;
  }
  const std::string den = text.substr(slash + 1);
  if (!is_integer_token(den) || den[0] == '-' || mpz_class(den) == 0)
    throw Error("bad rational literal (denominator must be a positive integer): \"" + text + "\"");
  r.v_ = mpq_class(mpz_class(num), mpz_class(den));
  r.v_.canonicalize();
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace tfb
