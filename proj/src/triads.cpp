#include "p2moduli/triads.hpp"

#include <random>
#include <stdexcept>

#include "p2moduli/boundary.hpp"
#include "p2moduli/errors.hpp"

namespace p2moduli {

namespace {

ExceptionalBundle mutation_bundle(const ChernData& x) {
  if (x.rank.sign() <= 0) throw std::logic_error("mutation produced nonpositive rank");
  ExceptionalBundle f = from_slope(Rational(x.c1, x.rank));
  if (f.chern != x || !validate_exceptional(f)) throw std::logic_error("mutation result is not exceptional");
  return f;
}

ExceptionalBundle kernel_bundle(const ExceptionalBundle& e, const ExceptionalBundle& f) {
  Int h = euler_form(e.chern, f.chern);
  return mutation_bundle(chern_of_complex({{e.chern, h}}, {{f.chern, 1}}));
}

}  // namespace

Triad base_triad() {
  Triad t;
  t.e = from_slope(Rational(-1));
  t.f = from_slope(Rational(-1, 2));
  t.g = from_slope(Rational(0));
  t.level = 0;
  t.index = 0;
  t.h = kernel_bundle(t.e, t.f);
  return t;
}

TriadChildren children(const Triad& t, int max_depth) {
  if (t.level + 1 > max_depth) fail(Errc::DepthExceeded, "triad level " + std::to_string(t.level + 1) + " exceeds budget");
  Int hfg = euler_form(t.f.chern, t.g.chern);
  Int hef = euler_form(t.e.chern, t.f.chern);
  ExceptionalBundle mid_left = mutation_bundle(chern_of_complex({{t.f.chern, hfg}}, {{t.g.chern, 1}}));
  ExceptionalBundle mid_right = mutation_bundle(chern_of_complex({{t.f.chern, hef}}, {{t.e.chern, 1}}));
  if (mid_left.slope != compose(t.e.slope, t.f.slope)) throw std::logic_error("left mutation disagrees with compose");
  if (mid_right.slope != compose(t.f.slope, t.g.slope)) throw std::logic_error("right mutation disagrees with compose");
  TriadChildren c;
  c.left = Triad{t.e, mid_left, t.f, t.level + 1, 2 * t.index, kernel_bundle(t.e, mid_left)};
  c.right = Triad{t.f, mid_right, t.g, t.level + 1, 2 * t.index + 1, kernel_bundle(t.f, mid_right)};
  return c;
}

TriangleForms triangle_forms(const Triad& t, const SlopeDisc& s) {
  TriangleForms f;
  f.m_form = hilbert_p(t.e.slope - s.mu) - s.delta - t.e.delta;
  f.n_form = s.delta + t.h.delta - hilbert_p(t.h.slope - s.mu);
  f.p_form = hilbert_p(s.mu - t.g.slope) - s.delta - t.g.delta;
  return f;
}

bool triangle_contains(const Triad& t, const SlopeDisc& s) {
  TriangleForms f = triangle_forms(t, s);
  return f.m_form.sign() >= 0 && f.n_form.sign() >= 0 && f.p_form.sign() >= 0;
}

Multiplicities multiplicities(const Triad& t, const SlopeDisc& s, const Int& rank) {
  ChernData x = from_slope_disc(rank, s);
  return {euler_form(x, t.e.chern), -euler_form(x, t.h.chern), euler_form(t.g.chern, x)};
}

Triad find_triangle(const SlopeDisc& s, int max_depth) {
  if (!in_region_s(s, max_depth))
    fail(Errc::NotInRegion, "(" + format_rational(s.mu) + ", " + format_rational(s.delta) + ") is not in region S");
  Triad t = base_triad();
  for (;;) {
    if (triangle_contains(t, s)) return t;
    TriadChildren c = children(t, max_depth);  // throws DepthExceeded at the budget
    t = (s.mu <= t.f.slope) ? c.left : c.right;
  }
}

std::vector<Triad> enumerate_triads(int depth) {
  std::vector<Triad> all{base_triad()};
  std::size_t begin = 0;
  for (int lvl = 0; lvl < depth; ++lvl) {
    std::size_t end = all.size();
    for (std::size_t i = begin; i < end; ++i) {
      TriadChildren c = children(all[i], depth);
      all.push_back(c.left);
      all.push_back(c.right);
    }
    begin = end;
  }
  return all;
}

TilingReport tiling_spotcheck(int depth, int samples, std::uint64_t seed) {
  if (depth < 0 || depth > 6) fail(Errc::OutOfRange, "spotcheck depth must be in [0,6]");
  if (samples < 1) fail(Errc::OutOfRange, "samples must be >= 1");
  std::vector<Triad> all = enumerate_triads(depth);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> frac(1, 255);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);

  TilingReport report;
  report.depth = depth;
  report.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const Triad& t = all[pick(rng)];
    Rational u(frac(rng), 256);
    Rational mu = t.e.slope + (t.g.slope - t.e.slope) * u;
    Rational upper_m = hilbert_p(t.e.slope - mu) - t.e.delta;
    Rational upper_p = hilbert_p(mu - t.g.slope) - t.g.delta;
    Rational upper = upper_m < upper_p ? upper_m : upper_p;
    Rational lower = hilbert_p(t.h.slope - mu) - t.h.delta;
    if (lower >= upper) {
      --s;  // degenerate slice; resample (cannot happen strictly inside, kept as a guard)
      continue;
    }
    Rational v(frac(rng), 256);
    SlopeDisc pt{mu, lower + (upper - lower) * v};
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < all.size(); ++i) {
      TriangleForms f = triangle_forms(all[i], pt);
      if (f.m_form.sign() > 0 && f.n_form.sign() > 0 && f.p_form.sign() > 0) inside.push_back(i);
    }
    if (inside.size() != 1) report.violations.push_back({pt, inside});
  }
  return report;
}

}  // namespace p2moduli
