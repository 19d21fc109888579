#pragma once

#include <vector>

#include "p2moduli/numeric.hpp"

namespace p2moduli {

// (rank, c1, c2) of a coherent sheaf on the plane. rank >= 0; slope and
// discriminant views are undefined at rank 0.
struct ChernData {
  Int rank;
  Int c1;
  Int c2;

  bool operator==(const ChernData&) const = default;
};

struct SlopeDisc {
  Rational mu;
  Rational delta;

  bool operator==(const SlopeDisc&) const = default;
};

inline ChernData line_bundle(const Int& k) { return {1, k, 0}; }

// ch2 = c1^2/2 - c2
Rational ch2(const ChernData& x);

// P(X) = X^2/2 + 3X/2 + 1, the plane's Hilbert polynomial in slope form.
Rational hilbert_p(const Rational& x);

SlopeDisc slope_disc(const ChernData& x);
ChernData from_slope_disc(const Int& rank, const SlopeDisc& s);

// Chern data of x (x) O(k); rank and discriminant are unchanged.
ChernData twist(const ChernData& x, const Int& k);

ChernData direct_sum(const ChernData& a, const ChernData& b);

struct WeightedChern {
  ChernData chern;
  Int count;
};

// Chern data of sum(plus) - sum(minus), additively in (rank, c1, ch2).
ChernData chern_of_complex(const std::vector<WeightedChern>& plus, const std::vector<WeightedChern>& minus);

// x repeated `count` times (count >= 0).
ChernData chern_multiple(const ChernData& x, const Int& count);

// chi(x) = c1(c1+3)/2 + rank - c2
Int euler_char(const ChernData& x);

// The bilinear Euler form chi(a,b) on the plane. When both ranks are
// positive the ch-level value must equal ra*rb*(P(mu_b - mu_a) - D_a - D_b);
// both evaluations are computed and checked.
Int euler_form(const ChernData& a, const ChernData& b);

// dim of the (smooth) semistable moduli on the plane: 1 + r^2(2D - 1),
// equivalently 2*r*c2 - (r-1)*c1^2 - r^2 + 1.
Int dim_stable_p2(const ChernData& x);

// K3 fine-moduli dimension k + r^2(2D - 2).
Int dim_simple_k3(const Int& k, const Int& rank, const Rational& delta);

struct ExtNumerology {
  Int hom_dim;   // p + p' + e
  Int ext1_cap;  // p + p'
};
ExtNumerology ext_numerology(const Int& p, const Int& p_prime, const Int& e);

// d2/r2 - d/r >= g - 1 + degF/2 - 1/(2 r r2), evaluated exactly.
bool ruled_extension_ok(const Int& r, const Int& d, const Int& r2, const Int& d2, const Int& g, const Int& degF);

}  // namespace p2moduli
