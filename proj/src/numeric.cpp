#include "p2moduli/numeric.hpp"

#include <cctype>

#include "p2moduli/errors.hpp"

namespace p2moduli {

Int rfloor(const Rational& q) {
  Int n = num(q), d = den(q);
  Int t = n / d;
  if (n.sign() < 0 && t * d != n) --t;
  return t;
}

Int rceil(const Rational& q) { return -rfloor(-q); }

Int isqrt(const Int& x) {
  if (x.sign() < 0) fail(Errc::BadInput, "isqrt of negative value");
  return boost::multiprecision::sqrt(x);
}

bool is_square(const Int& x) {
  if (x.sign() < 0) return false;
  Int r = boost::multiprecision::sqrt(x);
  return r * r == x;
}

Int pow2(unsigned e) { return Int(1) << e; }

Int pow10(unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

Int parse_int(const std::string& s) {
  if (s.empty()) fail(Errc::BadInput, "empty integer");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) fail(Errc::BadInput, "bad integer: " + s);
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) fail(Errc::BadInput, "bad integer: " + s);
  return Int(s);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  Int n = parse_int(s.substr(0, slash));
  Int d = parse_int(s.substr(slash + 1));
  if (d.is_zero()) fail(Errc::BadInput, "zero denominator: " + s);
  if (d.sign() < 0) {
    n = -n;
    d = -d;
  }
  return Rational(n, d);
}

std::string format_rational(const Rational& q) {
  Int d = den(q);
  if (d == 1) return num(q).str();
  return num(q).str() + "/" + d.str();
}

std::pair<Int, Int> squarefree_decompose(Int d) {
  if (d.sign() < 0) fail(Errc::BadInput, "negative radicand");
  Int s = 1;
  if (d.is_zero()) return {s, d};
  for (Int f = 2; f <= 65536 && f * f <= d; ++f) {
    Int ff = f * f;
    while (d % ff == 0) {
      d /= ff;
      s *= f;
    }
  }
  if (is_square(d)) {
    s *= isqrt(d);
    d = 1;
  }
  return {s, d};
}

}  // namespace p2moduli
