#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

namespace p2moduli {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sgn(const Int& x) { return x.sign(); }
inline int sgn(const Rational& q) { return q.sign(); }

// Floor/ceil of an exact rational.
Int rfloor(const Rational& q);
Int rceil(const Rational& q);

// Floor of the square root; x must be >= 0.
Int isqrt(const Int& x);
bool is_square(const Int& x);

Int pow2(unsigned e);
Int pow10(unsigned e);

// Accepts "a/b" or a plain integer, optional sign. Throws Error(BadInput).
Rational parse_rational(const std::string& s);
Int parse_int(const std::string& s);

// "a/b" when the denominator is not 1, plain integer otherwise.
std::string format_rational(const Rational& q);

// d = s^2 * d0 with d0 free of small square factors. Trial division up to
// 2^16 plus a perfect-square check on the remainder; enough for every
// radicand 9r^2-4 the tree produces at sane depths.
std::pair<Int, Int> squarefree_decompose(Int d);

}  // namespace p2moduli
