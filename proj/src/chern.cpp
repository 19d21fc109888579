#include "p2moduli/chern.hpp"

#include <stdexcept>

#include "p2moduli/errors.hpp"

namespace p2moduli {

Rational ch2(const ChernData& x) { return Rational(x.c1 * x.c1, 2) - Rational(x.c2); }

Rational hilbert_p(const Rational& x) { return x * x / 2 + Rational(3, 2) * x + 1; }

SlopeDisc slope_disc(const ChernData& x) {
  if (x.rank.sign() <= 0) fail(Errc::ZeroRank, "slope_disc needs rank >= 1");
  Rational mu(x.c1, x.rank);
  Rational delta = Rational(x.c2, x.rank) - Rational((x.rank - 1) * x.c1 * x.c1, 2 * x.rank * x.rank);
  return {mu, delta};
}

ChernData from_slope_disc(const Int& rank, const SlopeDisc& s) {
  if (rank.sign() <= 0) fail(Errc::ZeroRank, "rank must be >= 1");
  Rational c1q = Rational(rank) * s.mu;
  if (den(c1q) != 1) fail(Errc::NonIntegral, "rank*mu = " + format_rational(c1q) + " is not an integer");
  Int c1 = num(c1q);
  Rational c2q = Rational(rank) * s.delta + Rational((rank - 1) * c1 * c1, 2 * rank);
  if (den(c2q) != 1) fail(Errc::NonIntegral, "induced c2 = " + format_rational(c2q) + " is not an integer");
  return {rank, c1, num(c2q)};
}

ChernData twist(const ChernData& x, const Int& k) {
  Int c1 = x.c1 + k * x.rank;
  Rational ch2t = ch2(x) + Rational(k * x.c1) + Rational(x.rank * k * k, 2);
  Rational c2q = Rational(c1 * c1, 2) - ch2t;
  if (den(c2q) != 1) throw std::logic_error("twist produced non-integral c2");
  return {x.rank, c1, num(c2q)};
}

ChernData direct_sum(const ChernData& a, const ChernData& b) {
  return {a.rank + b.rank, a.c1 + b.c1, a.c2 + b.c2 + a.c1 * b.c1};
}

ChernData chern_of_complex(const std::vector<WeightedChern>& plus, const std::vector<WeightedChern>& minus) {
  Int rank = 0, c1 = 0;
  Rational h2 = 0;
  for (const auto& t : plus) {
    rank += t.count * t.chern.rank;
    c1 += t.count * t.chern.c1;
    h2 += Rational(t.count) * ch2(t.chern);
  }
  for (const auto& t : minus) {
    rank -= t.count * t.chern.rank;
    c1 -= t.count * t.chern.c1;
    h2 -= Rational(t.count) * ch2(t.chern);
  }
  if (rank.sign() < 0) fail(Errc::NegativeRank, "complex has negative rank " + rank.str());
  Rational c2q = Rational(c1 * c1, 2) - h2;
  if (den(c2q) != 1) fail(Errc::NonIntegral, "complex has non-integral c2");
  return {rank, c1, num(c2q)};
}

ChernData chern_multiple(const ChernData& x, const Int& count) {
  if (count.sign() < 0) fail(Errc::NegativeRank, "negative multiplicity");
  return chern_of_complex({{x, count}}, {});
}

Int euler_char(const ChernData& x) { return x.c1 * (x.c1 + 3) / 2 + x.rank - x.c2; }

Int euler_form(const ChernData& a, const ChernData& b) {
  // omega = -3H, chi(O) = 1 on the plane.
  Rational chi = Rational(-a.c1 * b.c1 - a.rank * b.c2 - b.rank * a.c2 + a.rank * b.rank) +
                 Rational(-3 * b.rank * a.c1 + 3 * a.rank * b.c1 + a.rank * b.c1 * b.c1 + b.rank * a.c1 * a.c1, 2);
  if (den(chi) != 1) throw std::logic_error("euler_form is not an integer");
  if (a.rank.sign() > 0 && b.rank.sign() > 0) {
    SlopeDisc sa = slope_disc(a), sb = slope_disc(b);
    Rational alt = Rational(a.rank * b.rank) * (hilbert_p(sb.mu - sa.mu) - sa.delta - sb.delta);
    if (alt != chi) throw std::logic_error("euler_form: ch-level and slope-level values disagree");
  }
  return num(chi);
}

Int dim_stable_p2(const ChernData& x) {
  if (x.rank.sign() <= 0) fail(Errc::ZeroRank, "dim_stable_p2 needs rank >= 1");
  Int closed = 2 * x.rank * x.c2 - (x.rank - 1) * x.c1 * x.c1 - x.rank * x.rank + 1;
  Rational viaDelta = 1 + Rational(x.rank * x.rank) * (2 * slope_disc(x).delta - 1);
  if (den(viaDelta) != 1 || num(viaDelta) != closed) throw std::logic_error("dim_stable_p2 forms disagree");
  return closed;
}

Int dim_simple_k3(const Int& k, const Int& rank, const Rational& delta) {
  if (rank.sign() <= 0) fail(Errc::ZeroRank, "rank must be >= 1");
  Rational v = Rational(k) + Rational(rank * rank) * (2 * delta - 2);
  if (den(v) != 1) fail(Errc::NonIntegral, "r^2(2*delta-2) is not integral");
  return num(v);
}

ExtNumerology ext_numerology(const Int& p, const Int& p_prime, const Int& e) {
  if (p < 1 || p_prime < 1) fail(Errc::OutOfRange, "p and p' must be >= 1");
  return {p + p_prime + e, p + p_prime};
}

bool ruled_extension_ok(const Int& r, const Int& d, const Int& r2, const Int& d2, const Int& g, const Int& degF) {
  if (r < 1 || r2 < 1) fail(Errc::OutOfRange, "ranks must be >= 1");
  Rational lhs = Rational(d2, r2) - Rational(d, r);
  Rational rhs = Rational(g - 1) + Rational(degF, 2) - Rational(1, 2 * r * r2);
  return lhs >= rhs;
}

}  // namespace p2moduli
