#include "p2moduli/quad.hpp"

#include "p2moduli/errors.hpp"

namespace p2moduli {

QuadValue::QuadValue(Rational a_, Rational b_, Int d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {
  if (d.sign() < 0) fail(Errc::BadInput, "negative radicand");
  if (d.is_zero()) b = 0;
}

int qsign(const QuadValue& x) {
  if (x.b.is_zero() || x.d.is_zero()) return sgn(x.a);
  if (x.a.is_zero()) return sgn(x.b);
  int sa = sgn(x.a), sb = sgn(x.b);
  if (sa == sb) return sa;
  // a and b*sqrt(d) pull in opposite directions: compare a^2 with b^2 d.
  Rational lhs = x.a * x.a;
  Rational rhs = x.b * x.b * Rational(x.d);
  if (lhs == rhs) return 0;  // possible only when d is a perfect square
  return lhs > rhs ? sa : sb;
}

namespace {

// Rewrites x over radicand d0 given x.d = s^2 * d0.
QuadValue rescale(const QuadValue& x, const Int& s, const Int& d0) {
  QuadValue r;
  r.a = x.a;
  r.b = x.b * Rational(s);
  r.d = d0;
  if (d0 == 1) {  // the radical was rational all along
    r.a += r.b;
    r.b = 0;
    r.d = 0;
  }
  return r;
}

// Puts x and y over one radicand, or throws MixedRadicands.
std::pair<QuadValue, QuadValue> align(const QuadValue& x, const QuadValue& y) {
  if (x.b.is_zero() || x.d.is_zero()) return {QuadValue(x.a, 0, y.d), y};
  if (y.b.is_zero() || y.d.is_zero()) return {x, QuadValue(y.a, 0, x.d)};
  if (x.d == y.d) return {x, y};
  auto [sx, dx] = squarefree_decompose(x.d);
  auto [sy, dy] = squarefree_decompose(y.d);
  QuadValue xn = rescale(x, sx, dx);
  QuadValue yn = rescale(y, sy, dy);
  if (xn.is_rational()) return {QuadValue(xn.a, 0, yn.d), yn};
  if (yn.is_rational()) return {xn, QuadValue(yn.a, 0, xn.d)};
  if (xn.d != yn.d) fail(Errc::MixedRadicands, "cannot compare sqrt(" + x.d.str() + ") with sqrt(" + y.d.str() + ")");
  return {xn, yn};
}

}  // namespace

std::strong_ordering qcompare(const QuadValue& x, const QuadValue& y) {
  auto [xa, ya] = align(x, y);
  int s = qsign(QuadValue(xa.a - ya.a, xa.b - ya.b, xa.d));
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QuadValue qadd(const QuadValue& x, const QuadValue& y) {
  auto [xa, ya] = align(x, y);
  return QuadValue(xa.a + ya.a, xa.b + ya.b, xa.d.is_zero() ? ya.d : xa.d);
}

QuadValue qsub(const QuadValue& x, const QuadValue& y) { return qadd(x, qneg(y)); }

QuadValue qmul(const QuadValue& x, const QuadValue& y) {
  auto [xa, ya] = align(x, y);
  Int d = xa.d.is_zero() ? ya.d : xa.d;
  return QuadValue(xa.a * ya.a + xa.b * ya.b * Rational(d), xa.a * ya.b + xa.b * ya.a, d);
}

QuadValue qneg(const QuadValue& x) { return QuadValue(-x.a, -x.b, x.d); }

QuadValue qscale(const Rational& c, const QuadValue& x) { return QuadValue(c * x.a, c * x.b, x.d); }

Int qfloor(const QuadValue& x) {
  if (x.is_rational()) return rfloor(x.a);
  // Common denominator: x = (u + p*sqrt(d)) / q with q > 0.
  Int ad = den(x.a), bd = den(x.b);
  Int q = ad * bd;
  Int u = num(x.a) * bd;
  Int p = num(x.b) * ad;
  Int s = isqrt(p * p * x.d);
  bool exact = s * s == p * p * x.d;
  Int v;
  if (p.sign() >= 0) {
    v = u + s;  // floor((u + p*sqrt(d))/q) = floor((u + floor(p*sqrt(d)))/q)
  } else {
    v = u - s;
    if (!exact) v -= 1;
  }
  // floor division of v by q
  Int t = v / q;
  if (v.sign() < 0 && t * q != v) --t;
  return t;
}

std::string qapprox(const QuadValue& x, unsigned digits) {
  if (digits < 1 || digits > 50) fail(Errc::OutOfRange, "digits must be in [1,50]");
  int s = qsign(x);
  QuadValue v = s < 0 ? qneg(x) : x;
  Rational scale(pow10(digits));
  QuadValue w = qscale(scale, v);
  // round-half-even via floor(2w); ties are exact equalities, detectable
  Int m = qfloor(qadd(w, w));
  Int qhalf = m / 2;
  Int n;
  if (m % 2 == 0) {
    n = qhalf;
  } else {
    QuadValue tie = qsub(w, QuadValue(Rational(qhalf) + Rational(1, 2)));
    if (qsign(tie) == 0)
      n = (qhalf % 2 == 0) ? qhalf : qhalf + 1;
    else
      n = qhalf + 1;
  }
  Int ip = n / pow10(digits);
  Int fp = n % pow10(digits);
  std::string frac = fp.str();
  frac.insert(frac.begin(), digits - frac.size(), '0');
  std::string out = ip.str() + "." + frac;
  if (s < 0 && !n.is_zero()) out.insert(out.begin(), '-');
  return out;
}

}  // namespace p2moduli
