#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "p2moduli/chern.hpp"
#include "p2moduli/quad.hpp"

namespace p2moduli {

inline constexpr int kDefaultDepth = 32;

// An exceptional slope with its derived data. Invariants: rank is the
// reduced denominator of the slope (so gcd(rank, c1) = 1),
// delta = (1 - 1/rank^2)/2, chi(E,E) = 1, radicand = 9 rank^2 - 4.
struct ExceptionalBundle {
  Rational slope;
  Int rank;
  ChernData chern;
  Rational delta;
  Int radicand;

  bool operator==(const ExceptionalBundle&) const = default;
};

// Builds the bundle determined by a slope. Does not prove the slope is
// genuinely exceptional, but throws NonIntegral when the back-solved c2
// fails integrality (which already rules out slopes like 1/3).
ExceptionalBundle from_slope(const Rational& mu);

ExceptionalBundle twist(const ExceptionalBundle& f, const Int& k);

// True iff the bundle's numeric invariants all hold.
bool validate_exceptional(const ExceptionalBundle& f);

// The composition law: gamma = (a+b)/2 + (D_b - D_a)/(3 + a - b), the unique
// slope with chi(E_gamma, E_a) = chi(E_b, E_gamma) = 0. The sign of the
// Delta term is pinned by those two conditions.
Rational compose(const Rational& alpha, const Rational& beta);

// eps(p/2^q): the bijection from dyadic rationals onto exceptional slopes,
// eps(k) = k, eps(x+k) = eps(x)+k, eps((2p+1)/2^(q+1)) = eps(p/2^q) x eps((p+1)/2^q).
ExceptionalBundle epsilon(long long p, int q, int max_depth = kDefaultDepth);

// Half-width of the slope interval: smallest root of X^2 - 3X + 1/r^2,
// i.e. (3r - sqrt(9r^2-4)) / (2r), exact with radicand 9r^2-4.
QuadValue x_width(const ExceptionalBundle& f);

// |mu - mu(F)| < x_F, decided rationally: t < 3/2 and t^2 - 3t + 1/r^2 > 0.
bool interval_contains(const ExceptionalBundle& f, const Rational& mu);

// The unique bundle whose open interval contains mu (the intervals
// partition the rationals). Binary descent of the dyadic tree.
ExceptionalBundle locate(const Rational& mu, int max_depth = kDefaultDepth);

// Locate, also reporting the bracketing pair of the final node and the
// dyadic address of the found bundle within the normalized window.
struct LocateDetail {
  ExceptionalBundle bundle;
  ExceptionalBundle left;   // bracket below, already translated back
  ExceptionalBundle right;  // bracket above
  long long p;              // dyadic address p/2^q of `bundle` before translation
  int q;
  Int shift;  // integer translation applied to reach [-1,0]
};
LocateDetail locate_detail(const Rational& mu, int max_depth = kDefaultDepth);

// G_0 .. G_{count-1} of the left exceptional series of f: chi(f, G_n) = 0,
// initial pair (G(-3), E) from the unique triad (E, f, G), transported by
// ch(G_{n+1}) = chi(G_{n-1}, G_n) * ch(G_n) - ch(G_{n-1}).
std::vector<ExceptionalBundle> left_series(const ExceptionalBundle& f, int count, int max_depth = kDefaultDepth);

// Memo cache for the dyadic tree, keyed by normalized address (p, q) with
// p/2^q in lowest terms inside [-1, 0]. Concurrent reads, exclusive inserts.
class EpsilonCache {
 public:
  using Key = std::pair<long long, int>;

  bool enabled() const;
  void set_enabled(bool on);
  std::optional<ExceptionalBundle> get(const Key& k) const;
  void put(const Key& k, const ExceptionalBundle& v);
  void clear();
  std::size_t size() const;
  std::map<Key, ExceptionalBundle> snapshot() const;

 private:
  mutable std::shared_mutex mutex_;
  bool enabled_ = true;
  std::map<Key, ExceptionalBundle> entries_;
};

EpsilonCache& epsilon_cache();

}  // namespace p2moduli
