#pragma once

#include <compare>
#include <string>

#include "p2moduli/numeric.hpp"

namespace p2moduli {

// Exact element a + b*sqrt(d) of a real quadratic extension, d >= 0.
// Radicands are kept as given (sqrt(32) stays sqrt(32), because they arrive
// as 9r^2-4 and must round-trip); comparisons pull square factors out on
// demand. If b = 0 the value is the rational a whatever d says.
struct QuadValue {
  Rational a;
  Rational b;
  Int d;

  QuadValue() : a(0), b(0), d(0) {}
  explicit QuadValue(const Rational& r) : a(r), b(0), d(0) {}
  QuadValue(Rational a_, Rational b_, Int d_);

  bool is_rational() const { return b.is_zero() || d.is_zero(); }
  Rational rational_part() const { return a; }

  // structural equality; use qequal for equality of the represented values
  bool operator==(const QuadValue&) const = default;
};

// Exact sign in {-1, 0, +1}, decided by rational sign analysis and one
// squaring. No floating point anywhere.
int qsign(const QuadValue& x);

// Total order on values sharing one radicand (after square-factor
// normalization); throws Error(MixedRadicands) when both parts are
// genuinely irrational over different radicands.
std::strong_ordering qcompare(const QuadValue& x, const QuadValue& y);

// Decimal expansion with `digits` digits after the point, round-half-even,
// computed by integer square-root refinement. 1 <= digits <= 50.
std::string qapprox(const QuadValue& x, unsigned digits);

Int qfloor(const QuadValue& x);

// Same-radicand arithmetic (one radical at a time is all the artifact needs).
QuadValue qadd(const QuadValue& x, const QuadValue& y);
QuadValue qsub(const QuadValue& x, const QuadValue& y);
QuadValue qmul(const QuadValue& x, const QuadValue& y);
QuadValue qneg(const QuadValue& x);
QuadValue qscale(const Rational& c, const QuadValue& x);

inline QuadValue operator+(const QuadValue& x, const QuadValue& y) { return qadd(x, y); }
inline QuadValue operator-(const QuadValue& x, const QuadValue& y) { return qsub(x, y); }
inline QuadValue operator*(const QuadValue& x, const QuadValue& y) { return qmul(x, y); }
inline QuadValue operator-(const QuadValue& x) { return qneg(x); }

inline bool qequal(const QuadValue& x, const QuadValue& y) {
  return qcompare(x, y) == std::strong_ordering::equal;
}

}  // namespace p2moduli
