#include "p2moduli/boundary.hpp"

#include "p2moduli/errors.hpp"

namespace p2moduli {

namespace {

Rational abs_offset(const Rational& mu, const ExceptionalBundle& f) {
  Rational t = mu - f.slope;
  return t.sign() < 0 ? -t : t;
}

Rational delta_at(const ExceptionalBundle& f, const Rational& t) { return hilbert_p(-t) - f.delta; }

}  // namespace

Rational delta(const Rational& mu, int max_depth) {
  ExceptionalBundle f = locate(mu, max_depth);
  return delta_at(f, abs_offset(mu, f));
}

QuadValue delta_prime(const Rational& mu, int max_depth) {
  ExceptionalBundle f = locate(mu, max_depth);
  Rational t = abs_offset(mu, f);
  Int r = f.rank;
  if (t.is_zero()) return QuadValue(f.delta, 0, f.radicand);
  // 1/x_F = (3r^2 + r sqrt(9r^2-4)) / 2, so the correction splits as
  // 1/r^2 - 3t/2 - (t/2r) sqrt(9r^2-4).
  Rational a = delta_at(f, t) - Rational(1, r * r) + Rational(3) * t / 2;
  Rational b = t / Rational(2 * r);
  return QuadValue(a, b, f.radicand);
}

bool exists_prioritary(const SlopeDisc& s) {
  if (s.mu < -1 || s.mu > 0) fail(Errc::OutOfRange, "exists_prioritary needs -1 <= mu <= 0");
  return s.delta >= s.mu * (s.mu + 1) / 2;
}

SemistableStatus semistable_status(const ChernData& x, int max_depth) {
  if (x.rank.sign() <= 0) fail(Errc::ZeroRank, "semistable_status needs rank >= 1");
  SlopeDisc s = slope_disc(x);
  ExceptionalBundle f = locate(s.mu, max_depth);
  if (s.delta >= delta_at(f, abs_offset(s.mu, f))) return {SemistableStatus::Kind::PositiveDim, std::nullopt, 0};
  if (s.mu == f.slope && s.delta == f.delta) {
    // mu in lowest terms has denominator rank(F), so rank(F) divides rank
    return {SemistableStatus::Kind::ExceptionalPoint, f, x.rank / f.rank};
  }
  return {SemistableStatus::Kind::Empty, std::nullopt, 0};
}

bool in_region_s(const SlopeDisc& s, int max_depth) {
  if (s.mu < -1 || s.mu > 0) return false;
  if (s.delta < s.mu * (s.mu + 1) / 2) return false;
  return qcompare(QuadValue(s.delta), delta_prime(s.mu, max_depth)) <= 0;
}

std::vector<CurveRow> sample_curves(const Rational& mu_min, const Rational& mu_max, int steps, int max_depth) {
  if (!(mu_min < mu_max)) fail(Errc::BadInput, "curve range is empty");
  if (steps < 2) fail(Errc::BadInput, "need at least 2 steps");
  std::vector<CurveRow> rows;
  rows.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    CurveRow row;
    row.mu = mu_min + (mu_max - mu_min) * Rational(i, steps - 1);
    try {
      ExceptionalBundle f = locate(row.mu, max_depth);
      row.delta = delta_at(f, abs_offset(row.mu, f));
      row.delta_prime = delta_prime(row.mu, max_depth);
      row.exceptional_slope = f.slope;
      row.present = true;
    } catch (const Error& e) {
      if (e.code() != Errc::DepthExceeded) throw;
      row.present = false;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace p2moduli
