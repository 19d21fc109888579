#include "p2moduli/classifier.hpp"

#include <stdexcept>

#include "p2moduli/errors.hpp"

namespace p2moduli {

Classification classify(const ChernData& x, int max_depth) {
  if (x.rank.sign() <= 0) fail(Errc::ZeroRank, "classify needs rank >= 1");
  Rational mu0 = Rational(x.c1, x.rank);
  Int k = -rceil(mu0);  // mu0 + k in (-1, 0]
  ChernData xn = twist(x, k);
  Int tw = -k;
  SlopeDisc s = slope_disc(xn);

  if (!exists_prioritary(s)) return NotPrioritary{};

  SemistableStatus st = semistable_status(xn, max_depth);
  if (st.kind != SemistableStatus::Kind::Empty) return SemistableExists{std::move(st)};

  ExceptionalBundle f = locate(s.mu, max_depth);
  auto cmp = qcompare(QuadValue(s.delta), delta_prime(s.mu, max_depth));

  if (cmp == std::strong_ordering::equal) {
    // only possible at mu = mu(F) (delta' is irrational elsewhere); in fact
    // semistable_status already reports that point, so this is a dead branch
    return PureExceptional{f, x.rank / f.rank, tw};
  }

  if (cmp == std::strong_ordering::less) {
    Triad t = find_triangle(s, max_depth);
    Multiplicities mult = multiplicities(t, s, xn.rank);
    if (mult.m.sign() < 0 || mult.n.sign() < 0 || mult.p.sign() < 0)
      throw std::logic_error("rigid multiplicities must be nonnegative inside the triangle");
    ChernData sum = chern_of_complex({{t.e.chern, mult.m}, {t.f.chern, mult.n}, {t.g.chern, mult.p}}, {});
    if (sum != xn) throw std::logic_error("rigid decomposition does not reassemble");
    return Rigid{std::move(t), mult.m, mult.n, mult.p, tw};
  }

  // Delta > delta'(mu): one exceptional summand plus a stable part on the
  // boundary curve -- except for the (c1, c2) = (0, 1) family.
  if (xn.c1.is_zero() && xn.c2 == 1) return Special01{xn.rank, tw};

  bool left = s.mu <= f.slope;
  Int p = left ? euler_form(f.chern, xn) : euler_form(xn, f.chern);
  if (p.sign() <= 0) throw std::logic_error("exceptional-plus multiplicity must be positive");
  ChernData residual = chern_of_complex({{xn, 1}}, {{f.chern, p}});
  if (residual.rank.sign() <= 0) throw std::logic_error("exceptional-plus residual must have positive rank");
  ExceptionalPlus out;
  out.f = std::move(f);
  out.p = p;
  out.residual = residual;
  out.side = left ? Side::Left : Side::Right;
  out.at_center = (s.mu == out.f.slope);
  out.twist = tw;
  return out;
}

ChernData reassemble(const Classification& c) {
  struct Visitor {
    ChernData operator()(const NotPrioritary&) const {
      fail(Errc::NotDecomposed, "not_prioritary carries no decomposition");
    }
    ChernData operator()(const SemistableExists&) const {
      fail(Errc::NotDecomposed, "semistable_exists carries no decomposition");
    }
    ChernData operator()(const Rigid& r) const {
      ChernData sum = chern_of_complex({{r.triad.e.chern, r.m}, {r.triad.f.chern, r.n}, {r.triad.g.chern, r.p}}, {});
      return twist(sum, r.twist);
    }
    ChernData operator()(const ExceptionalPlus& e) const {
      ChernData sum = direct_sum(chern_multiple(e.f.chern, e.p), e.residual);
      return twist(sum, e.twist);
    }
    ChernData operator()(const Special01& s) const {
      ChernData sum = direct_sum(chern_multiple(line_bundle(0), s.rank - 2), kVxChern);
      return twist(sum, s.twist);
    }
    ChernData operator()(const PureExceptional& p) const {
      return twist(chern_multiple(p.f.chern, p.multiple), p.twist);
    }
  };
  return std::visit(Visitor{}, c);
}

Int aut_dim_exceptional_plus(const Int& p, const ExceptionalBundle& f, const ChernData& residual) {
  if (residual.rank.sign() <= 0) fail(Errc::ZeroRank, "residual rank must be >= 1");
  Rational mu_res(residual.c1, residual.rank);
  Rational v = Rational(p * p + 1) + Rational(3 * p * residual.rank * f.rank) * (f.slope - mu_res);
  if (den(v) != 1) fail(Errc::NonIntegral, "aut dimension is not integral");
  return num(v);
}

}  // namespace p2moduli
