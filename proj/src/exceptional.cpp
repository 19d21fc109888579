#include "p2moduli/exceptional.hpp"

#include <mutex>
#include <stdexcept>

#include "p2moduli/errors.hpp"

namespace p2moduli {

ExceptionalBundle from_slope(const Rational& mu) {
  ExceptionalBundle f;
  f.slope = mu;
  f.rank = den(mu);
  f.delta = Rational(f.rank * f.rank - 1, 2 * f.rank * f.rank);
  f.chern = from_slope_disc(f.rank, {mu, f.delta});  // NonIntegral for non-exceptional slopes like 1/3
  f.radicand = 9 * f.rank * f.rank - 4;
  return f;
}

ExceptionalBundle twist(const ExceptionalBundle& f, const Int& k) {
  ExceptionalBundle g = f;
  g.slope = f.slope + Rational(k);
  g.chern = twist(f.chern, k);
  return g;
}

bool validate_exceptional(const ExceptionalBundle& f) {
  if (f.rank.sign() <= 0) return false;
  if (den(f.slope) != f.rank || num(f.slope) != f.chern.c1) return false;
  if (f.chern.rank != f.rank) return false;
  if (f.delta != Rational(f.rank * f.rank - 1, 2 * f.rank * f.rank)) return false;
  if (slope_disc(f.chern).delta != f.delta) return false;
  if (f.radicand != 9 * f.rank * f.rank - 4) return false;
  return euler_form(f.chern, f.chern) == 1;
}

Rational compose(const Rational& alpha, const Rational& beta) {
  Rational span = Rational(3) + alpha - beta;
  if (span.is_zero()) fail(Errc::DegenerateSpan, "3 + alpha - beta = 0");
  Int ra = den(alpha), rb = den(beta);
  Rational da(ra * ra - 1, 2 * ra * ra);
  Rational db(rb * rb - 1, 2 * rb * rb);
  return (alpha + beta) / 2 + (db - da) / span;
}

EpsilonCache& epsilon_cache() {
  static EpsilonCache cache;
  return cache;
}

bool EpsilonCache::enabled() const {
  std::shared_lock lk(mutex_);
  return enabled_;
}

void EpsilonCache::set_enabled(bool on) {
  std::unique_lock lk(mutex_);
  enabled_ = on;
}

std::optional<ExceptionalBundle> EpsilonCache::get(const Key& k) const {
  std::shared_lock lk(mutex_);
  if (!enabled_) return std::nullopt;
  auto it = entries_.find(k);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void EpsilonCache::put(const Key& k, const ExceptionalBundle& v) {
  std::unique_lock lk(mutex_);
  if (!enabled_) return;
  entries_.emplace(k, v);
}

void EpsilonCache::clear() {
  std::unique_lock lk(mutex_);
  entries_.clear();
}

std::size_t EpsilonCache::size() const {
  std::shared_lock lk(mutex_);
  return entries_.size();
}

std::map<EpsilonCache::Key, ExceptionalBundle> EpsilonCache::snapshot() const {
  std::shared_lock lk(mutex_);
  return entries_;
}

namespace {

// p/2^q already in lowest terms and inside [-1, 0].
ExceptionalBundle eps_in_window(long long p, int q) {
  if (q == 0) return from_slope(Rational(p));
  EpsilonCache::Key key{p, q};
  if (auto hit = epsilon_cache().get(key)) return *hit;
  long long a = (p - 1) / 2, b = (p + 1) / 2;  // p odd, so these are the level q-1 parents
  int qa = q - 1, qb = q - 1;
  long long pa = a, pb = b;
  while (qa > 0 && pa % 2 == 0) {
    pa /= 2;
    --qa;
  }
  while (qb > 0 && pb % 2 == 0) {
    pb /= 2;
    --qb;
  }
  ExceptionalBundle left = eps_in_window(pa, qa);
  ExceptionalBundle right = eps_in_window(pb, qb);
  ExceptionalBundle mid = from_slope(compose(left.slope, right.slope));
  epsilon_cache().put(key, mid);
  return mid;
}

}  // namespace

ExceptionalBundle epsilon(long long p, int q, int max_depth) {
  if (q < 0) fail(Errc::BadInput, "dyadic exponent must be >= 0");
  while (q > 0 && p % 2 == 0) {
    p /= 2;
    --q;
  }
  if (q > max_depth || q > 62)
    fail(Errc::DepthExceeded, "dyadic depth " + std::to_string(q) + " exceeds budget");
  if (q == 0) return from_slope(Rational(p));
  Int k = rceil(Rational(Int(p), pow2(static_cast<unsigned>(q))));
  long long pw = p - static_cast<long long>(k) * (1LL << q);
  ExceptionalBundle base = eps_in_window(pw, q);
  return k.is_zero() ? base : twist(base, k);
}

QuadValue x_width(const ExceptionalBundle& f) {
  return QuadValue(Rational(3, 2), Rational(-1, 2 * f.rank), f.radicand);
}

bool interval_contains(const ExceptionalBundle& f, const Rational& mu) {
  Rational t = mu - f.slope;
  if (t.sign() < 0) t = -t;
  if (t >= Rational(3, 2)) return false;
  return t * t - 3 * t + Rational(1, f.rank * f.rank) > 0;
}

LocateDetail locate_detail(const Rational& mu, int max_depth) {
  Int k = rceil(mu);
  Rational mu0 = mu - Rational(k);  // in [-1, 0]
  ExceptionalBundle lo = from_slope(Rational(-1));
  ExceptionalBundle hi = from_slope(Rational(0));
  for (const auto* endp : {&lo, &hi}) {
    if (interval_contains(*endp, mu0)) {
      ExceptionalBundle found = twist(*endp, k);
      LocateDetail d;
      d.bundle = found;
      d.left = twist(found, -1);
      d.right = twist(found, 1);
      d.p = static_cast<long long>(num(endp->slope));
      d.q = 0;
      d.shift = k;
      return d;
    }
  }
  long long i = -1;  // bracket [i/2^level, (i+1)/2^level]
  int level = 0;
  while (level < max_depth && level < 62) {
    long long pm = 2 * i + 1;
    ExceptionalBundle mid = epsilon(pm, level + 1, max_depth);
    if (interval_contains(mid, mu0)) {
      LocateDetail d;
      d.bundle = twist(mid, k);
      d.left = twist(lo, k);
      d.right = twist(hi, k);
      d.p = pm;
      d.q = level + 1;
      d.shift = k;
      return d;
    }
    if (mu0 < mid.slope) {
      hi = mid;
      i = 2 * i;
    } else {
      lo = mid;
      i = 2 * i + 1;
    }
    ++level;
  }
  fail(Errc::DepthExceeded, "locate(" + format_rational(mu) + ") exceeded depth " + std::to_string(max_depth));
}

ExceptionalBundle locate(const Rational& mu, int max_depth) { return locate_detail(mu, max_depth).bundle; }

namespace {

ExceptionalBundle bundle_from_chern(const ChernData& x) {
  if (x.rank.sign() <= 0) throw std::logic_error("series member has nonpositive rank");
  ExceptionalBundle f = from_slope(Rational(x.c1, x.rank));
  if (f.chern != x || !validate_exceptional(f)) throw std::logic_error("series member is not exceptional");
  return f;
}

}  // namespace

std::vector<ExceptionalBundle> left_series(const ExceptionalBundle& f, int count, int max_depth) {
  if (count < 1 || count > 64) fail(Errc::OutOfRange, "series count must be in [1,64]");
  ExceptionalBundle g0, g1;
  if (f.rank == 1) {
    g0 = twist(f, -2);
    g1 = twist(f, -1);
  } else {
    Int k = rceil(f.slope);
    ExceptionalBundle f0 = twist(f, -k);  // slope now in (-1, 0)
    LocateDetail d = locate_detail(f0.slope, max_depth);
    if (d.bundle.slope != f0.slope) throw std::logic_error("left_series: slope is not an exceptional slope");
    // triad is (E, f0, G) with E = d.left, G = d.right; initial pair (G(-3), E)
    g0 = twist(d.right, k - 3);
    g1 = twist(d.left, k);
  }
  std::vector<ExceptionalBundle> out{g0};
  if (count >= 2) out.push_back(g1);
  while (static_cast<int>(out.size()) < count) {
    const ExceptionalBundle& prev = out[out.size() - 2];
    const ExceptionalBundle& cur = out[out.size() - 1];
    Int h = euler_form(prev.chern, cur.chern);
    ChernData next = chern_of_complex({{cur.chern, h}}, {{prev.chern, 1}});
    out.push_back(bundle_from_chern(next));
  }
  out.resize(count);
  return out;
}

}  // namespace p2moduli
