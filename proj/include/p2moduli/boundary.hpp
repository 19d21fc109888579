#pragma once

#include <optional>
#include <vector>

#include "p2moduli/exceptional.hpp"

namespace p2moduli {

// delta(mu) = P(-t) - Delta_F with F = locate(mu), t = |mu - mu(F)|.
// Positive-dimensional semistable moduli exist iff Delta >= delta(mu).
Rational delta(const Rational& mu, int max_depth = kDefaultDepth);

// delta'(mu) = delta(mu) - (1/r^2)(1 - t/x_F), exact with radicand 9r^2-4;
// rational exactly at mu = mu(F), where it equals Delta_F.
QuadValue delta_prime(const Rational& mu, int max_depth = kDefaultDepth);

// Delta >= mu(mu+1)/2 on -1 <= mu <= 0 (the Thm 3.1 hypothesis sign; the
// section-3.1 printing with the extra minus fails on O(-1)+O).
bool exists_prioritary(const SlopeDisc& s);

struct SemistableStatus {
  enum class Kind { PositiveDim, ExceptionalPoint, Empty };
  Kind kind = Kind::Empty;
  std::optional<ExceptionalBundle> f;  // the exceptional bundle, for ExceptionalPoint
  Int multiple = 0;                    // rank / rank(F)
};

SemistableStatus semistable_status(const ChernData& x, int max_depth = kDefaultDepth);

// -1 <= mu <= 0, mu(mu+1)/2 <= Delta <= delta'(mu), the last comparison in
// exact quadratic arithmetic.
bool in_region_s(const SlopeDisc& s, int max_depth = kDefaultDepth);

struct CurveRow {
  Rational mu;
  bool present = false;  // locate can run out of depth budget
  Rational delta;
  QuadValue delta_prime;
  Rational exceptional_slope;
};

std::vector<CurveRow> sample_curves(const Rational& mu_min, const Rational& mu_max, int steps,
                                    int max_depth = kDefaultDepth);

}  // namespace p2moduli
