#include <iostream>
#include <random>

#include "doctest.h"
#include "p2moduli/errors.hpp"
#include "p2moduli/kronecker.hpp"

using namespace p2moduli;

namespace {

KroneckerModule make_module(KroneckerShape shape, FieldSpec field, std::vector<long long> flat) {
  KroneckerModule mod;
  mod.shape = shape;
  mod.field = field;
  std::size_t k = 0;
  mod.entries.assign(shape.q, std::vector<std::vector<Rational>>(shape.m, std::vector<Rational>(shape.n)));
  for (long long l = 0; l < shape.q; ++l)
    for (long long i = 0; i < shape.m; ++i)
      for (long long j = 0; j < shape.n; ++j) mod.entries[l][i][j] = Rational(flat.at(k++));
  return mod;
}

// Brute-force oracle written straight from the inequality: enumerate every
// subspace of source and target as spans of vector subsets, test every
// (M', N') pair with f(L (x) M') inside N'.
struct OracleSubspaces {
  // all subspaces of F_p^dim as lists of member vectors
  std::vector<std::vector<std::vector<long long>>> spaces;
};

std::vector<std::vector<long long>> all_vectors(long long dim, long long p) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> v(dim, 0);
  for (;;) {
    out.push_back(v);
    long long i = dim - 1;
    while (i >= 0 && ++v[i] == p) v[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

bool subspace_closed(const std::vector<std::vector<long long>>& vecs, long long p) {
  auto member = [&](const std::vector<long long>& x) {
    for (const auto& v : vecs)
      if (v == x) return true;
    return false;
  };
  for (const auto& a : vecs)
    for (const auto& b : vecs) {
      std::vector<long long> sum(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) sum[i] = (a[i] + b[i]) % p;
      if (!member(sum)) return false;
    }
  for (const auto& a : vecs)
    for (long long c = 0; c < p; ++c) {
      std::vector<long long> sc(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) sc[i] = a[i] * c % p;
      if (!member(sc)) return false;
    }
  return true;
}

OracleSubspaces oracle_subspaces(long long dim, long long p) {
  auto vecs = all_vectors(dim, p);
  OracleSubspaces out;
  // enumerate subsets of the nonzero vectors, close under span membership test
  long long total = 1;
  for (long long i = 0; i < dim; ++i) total *= p;
  for (unsigned long long mask = 0; mask < (1ULL << (total - 1)); ++mask) {
    std::vector<std::vector<long long>> vs{std::vector<long long>(dim, 0)};
    for (long long i = 1; i < total; ++i)
      if (mask >> (i - 1) & 1) vs.push_back(vecs[i]);
    if (!subspace_closed(vs, p)) continue;
    bool seen = false;
    for (const auto& s : out.spaces) seen = seen || s == vs;
    if (!seen) out.spaces.push_back(vs);
  }
  return out;
}

long long dim_of_space(const std::vector<std::vector<long long>>& vecs, long long p) {
  long long sz = vecs.size(), d = 0;
  while (sz > 1) {
    sz /= p;
    ++d;
  }
  return d;
}

StabilityVerdict::Status oracle_verdict(const KroneckerModule& mod) {
  long long p = mod.field.p, q = mod.shape.q, m = mod.shape.m, n = mod.shape.n;
  auto sources = oracle_subspaces(m, p).spaces;
  auto targets = oracle_subspaces(n, p).spaces;
  bool semistable = true, stable = true;
  for (const auto& mspace : sources) {
    if (mspace.size() == 1) continue;  // M' = 0
    for (const auto& nspace : targets) {
      if (dim_of_space(nspace, p) == n) continue;  // N' = C^n
      // f(L (x) M') inside N'?
      bool contained = true;
      for (const auto& v : mspace)
        for (long long l = 0; l < q && contained; ++l) {
          std::vector<long long> w(n, 0);
          for (long long i = 0; i < m; ++i)
            for (long long j = 0; j < n; ++j)
              w[j] = (w[j] + v[i] * num(mod.entries[l][i][j]).convert_to<long long>()) % p;
          bool member = false;
          for (const auto& t : nspace) member = member || t == w;
          contained = contained && member;
        }
      if (!contained) continue;
      long long dn = dim_of_space(nspace, p), dm = dim_of_space(mspace, p);
      if (dn * m < n * dm) semistable = false;
      if (dn * m <= n * dm) stable = false;
    }
  }
  if (!semistable) return StabilityVerdict::Status::Unstable;
  return stable ? StabilityVerdict::Status::Stable : StabilityVerdict::Status::Semistable;
}

}  // namespace

TEST_CASE("moduli_dim") {
  CHECK(moduli_dim({3, 3, 4}) == 12);
  CHECK(moduli_dim({3, 1, 1}) == 2);
  CHECK(moduli_dim({3, 2, 3}) == 6);
  for (long long n = 1; n <= 10; ++n) CHECK(moduli_dim({3, n, n + 1}) == n * (n + 1));
  CHECK_THROWS_AS((void)moduli_dim({2, 1, 1}), Error);
}

TEST_CASE("slope_ok") {
  CHECK_FALSE(slope_ok(1, 1, {3, 2, 3}, false));
  CHECK(slope_ok(1, 2, {3, 2, 3}, false));
  CHECK(slope_ok(2, 3, {3, 2, 3}, false));   // equality
  CHECK_FALSE(slope_ok(2, 3, {3, 2, 3}, true));
  CHECK_THROWS_AS((void)slope_ok(0, 1, {3, 2, 3}, false), Error);
}

TEST_CASE("coprime_fine") {
  CHECK(coprime_fine({3, 2, 3}));
  CHECK_FALSE(coprime_fine({3, 2, 4}));
  CHECK(coprime_fine({3, 1, 1}));
}

TEST_CASE("check_ff examples") {
  // q=3, m=1, n=1, slices (1,0,0) over F2: image is everything
  KroneckerModule one = make_module({3, 1, 1}, FieldSpec::prime(2), {1, 0, 0});
  CHECK(check_ff(one).status == StabilityVerdict::Status::Stable);

  KroneckerModule zero = make_module({3, 2, 3}, FieldSpec::prime(2),
                                     std::vector<long long>(18, 0));
  StabilityVerdict v = check_ff(zero);
  CHECK(v.status == StabilityVerdict::Status::Unstable);
  REQUIRE(v.certificate);
  // dimension-ascending enumeration reaches a dim-1 destabilizer first
  CHECK(v.certificate->basis.size() == 1);
  CHECK(v.certificate->basis[0] == std::vector<Rational>{Rational(1), Rational(0)});
  CHECK(v.certificate->image_dim == 0);
  CHECK(verify_certificate(zero, *v.certificate));
  // the full source is of course also destabilizing, as in the worked example
  Certificate full{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, 0};
  CHECK(verify_certificate(zero, full));

  // f(L (x) e1) spans only one target dimension
  KroneckerModule thin = make_module({3, 2, 3}, FieldSpec::prime(2),
                                     {1, 0, 0, 0, 1, 0,   // l=0: e1 -> t1, e2 -> t2
                                      1, 0, 0, 0, 0, 1,   // l=1: e1 -> t1, e2 -> t3
                                      1, 0, 0, 1, 1, 0}); // l=2
  StabilityVerdict tv = check_ff(thin);
  CHECK(tv.status == StabilityVerdict::Status::Unstable);
  REQUIRE(tv.certificate);
  CHECK(tv.certificate->basis.size() == 1);
  CHECK(tv.certificate->basis[0][0] == Rational(1));
  CHECK(tv.certificate->basis[0][1] == Rational(0));
  CHECK(tv.certificate->image_dim == 1);
  CHECK(verify_certificate(thin, *tv.certificate));
}

TEST_CASE("check_ff budget") {
  KroneckerModule big = make_module({3, 2, 3}, FieldSpec::prime(2), std::vector<long long>(18, 0));
  CHECK_THROWS_AS((void)check_ff(big, 3), Error);
}

TEST_CASE("check_ff matches the brute-force oracle on all (3,1,2) modules over F2") {
  for (unsigned long long bits = 0; bits < 64; ++bits) {
    std::vector<long long> flat(6);
    for (int i = 0; i < 6; ++i) flat[i] = (bits >> i) & 1;
    KroneckerModule mod = make_module({3, 1, 2}, FieldSpec::prime(2), flat);
    StabilityVerdict mine = check_ff(mod);
    CHECK(mine.status == oracle_verdict(mod));
    if (mine.certificate) CHECK(verify_certificate(mod, *mine.certificate));
  }
}

TEST_CASE("check_ff observational F2-vs-F3 comparison on 0/1 modules") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> bit(0, 1);
  int mismatches = 0, runs = 0;
  for (const KroneckerShape& shape : {KroneckerShape{3, 1, 2}, KroneckerShape{3, 2, 3}}) {
    for (int t = 0; t < 50; ++t) {
      std::vector<long long> flat(shape.q * shape.m * shape.n);
      for (auto& v : flat) v = bit(rng);
      KroneckerModule m2 = make_module(shape, FieldSpec::prime(2), flat);
      KroneckerModule m3 = make_module(shape, FieldSpec::prime(3), flat);
      StabilityVerdict v2 = check_ff(m2), v3 = check_ff(m3);
      ++runs;
      if (v2.status != v3.status) ++mismatches;
      if (v2.certificate) CHECK(verify_certificate(m2, *v2.certificate));
      if (v3.certificate) CHECK(verify_certificate(m3, *v3.certificate));
    }
  }
  // recorded, not asserted: field dependence is possible in principle
  std::cout << "[kronecker] F2 vs F3 verdicts: " << runs - mismatches << "/" << runs << " agree\n";
}

TEST_CASE("search_destabilizer_q") {
  KroneckerModule zero = make_module({3, 2, 3}, FieldSpec::Q(), std::vector<long long>(18, 0));
  StabilityVerdict v = search_destabilizer_q(zero);
  CHECK(v.status == StabilityVerdict::Status::Unstable);
  REQUIRE(v.certificate);
  CHECK(verify_certificate(zero, *v.certificate));

  KroneckerModule thin = make_module({3, 2, 3}, FieldSpec::Q(),
                                     {1, 0, 0, 0, 1, 0,
                                      1, 0, 0, 0, 0, 1,
                                      1, 0, 0, 1, 1, 0});
  StabilityVerdict tv = search_destabilizer_q(thin);
  CHECK(tv.status == StabilityVerdict::Status::Unstable);
  REQUIRE(tv.certificate);
  CHECK(tv.certificate->image_dim == 1);
  CHECK(verify_certificate(thin, *tv.certificate));

  KroneckerModule generic = make_module({3, 1, 1}, FieldSpec::Q(), {1, 2, 3});
  StabilityVerdict gv = search_destabilizer_q(generic);
  CHECK(gv.status == StabilityVerdict::Status::Unknown);
  CHECK(gv.note == "no proper subspaces");
}

TEST_CASE("family_invariants") {
  FamilyInvariants f = family_invariants(FamilyKind::IdealLength, 2);
  CHECK(f.shape.q == 3);
  CHECK(f.shape.m == 2);
  CHECK(f.shape.n == 3);
  CHECK(f.cokernel == ChernData{1, 0, 3});
  CHECK(f.dim_match);

  FamilyInvariants g = family_invariants(FamilyKind::RankN2, 4);
  CHECK(g.shape.m == 3);
  CHECK(g.shape.n == 5);
  CHECK(g.cokernel == ChernData{2, 1, 4});
  CHECK(g.dim_match);

  FamilyInvariants h = family_invariants(FamilyKind::RankN2, 5);
  CHECK(h.shape.m == 4);
  CHECK(h.shape.n == 7);
  CHECK(h.cokernel == ChernData{3, 1, 5});
  CHECK(h.dim_match);

  for (long long n = 1; n <= 8; ++n) CHECK(family_invariants(FamilyKind::IdealLength, n).dim_match);
  for (long long n = 4; n <= 10; ++n) {
    FamilyInvariants fam = family_invariants(FamilyKind::RankN2, n);
    CHECK(fam.dim_match);
    CHECK(coprime_fine(fam.shape));
    CHECK(euler_char(fam.cokernel) == euler_char({Int(n - 2), 1, Int(n)}));
  }
  CHECK_THROWS_AS((void)family_invariants(FamilyKind::IdealLength, 0), Error);
  CHECK_THROWS_AS((void)family_invariants(FamilyKind::RankN2, 3), Error);
}

TEST_CASE("family shapes match the chi-multiplicity rule") {
  // for a resolution 0 -> E^m -> G^n -> coker -> 0 built on line bundles
  // E = O(a-1), G = O(a), the block sizes are |chi(E(3), coker)| and
  // |chi(H(3), coker)| with H the kernel bundle of E (x) Hom(E,G) -> G
  auto check_family = [](long long a, const ChernData& coker, long long m_expected, long long n_expected) {
    ChernData e = line_bundle(a - 1), g = line_bundle(a);
    Int h = euler_form(e, g);
    ChernData kernel = chern_of_complex({{e, h}}, {{g, 1}});
    Int m_chi = euler_form(twist(e, 3), coker);
    Int n_chi = euler_form(twist(kernel, 3), coker);
    CHECK(boost::multiprecision::abs(m_chi) == m_expected);
    CHECK(boost::multiprecision::abs(n_chi) == n_expected);
  };
  for (long long n = 1; n <= 8; ++n) {
    FamilyInvariants f = family_invariants(FamilyKind::IdealLength, n);
    check_family(-n, f.cokernel, f.shape.m, f.shape.n);
  }
  for (long long n = 4; n <= 10; ++n) {
    FamilyInvariants f = family_invariants(FamilyKind::RankN2, n);
    check_family(-1, f.cokernel, f.shape.m, f.shape.n);
  }
}

TEST_CASE("morphism-space dimension identity for O(-2)^m -> O(-1)^p cokernels") {
  // dim N(3, m, p) = 3mp - m^2 - p^2 + 1 equals the sheaf-side moduli
  // dimension of the cokernel whenever the cokernel has positive rank
  for (long long m = 1; m <= 9; ++m)
    for (long long p = m + 1; p <= m + 9; ++p) {
      ChernData coker = chern_of_complex({{line_bundle(-1), Int(p)}}, {{line_bundle(-2), Int(m)}});
      CHECK(coker.rank == p - m);
      CHECK(coker.c1 == 2 * m - p);
      CHECK(moduli_dim({3, m, p}) == dim_stable_p2(coker));
    }
}

TEST_CASE("slice-map kernels are searched over Q") {
  // every slice kills (1,1); coordinate subspaces have full image
  std::vector<long long> flat = {
      1, 0, 0, -1, 0, 0,   // l=0: e1 -> t1, e2 -> -t1
      0, 1, 0, 0, -1, 0,   // l=1: e1 -> t2, e2 -> -t2
      0, 0, 1, 0, 0, -1};  // l=2: e1 -> t3, e2 -> -t3
  KroneckerModule mod = make_module({3, 2, 3}, FieldSpec::Q(), flat);
  StabilityVerdict v = search_destabilizer_q(mod, /*effort=*/0);  // deterministic candidates only
  CHECK(v.status == StabilityVerdict::Status::Unstable);
  REQUIRE(v.certificate);
  CHECK(v.certificate->basis.size() == 1);
  CHECK(v.certificate->image_dim == 0);
  CHECK(verify_certificate(mod, *v.certificate));
}

TEST_CASE("candidate_walls") {
  auto walls = candidate_walls(2, 1, 7);
  bool has_rho7 = false, has_rho5 = false, has_excluded = false;
  for (const auto& w : walls) {
    if (w.m1 == 1 && w.n1 == 1 && w.p1 == 0) {
      has_rho7 = true;
      CHECK(w.lambda == Rational(1, 2));
      CHECK(w.rho == 7);
    }
    if (w.m1 == 1 && w.n1 == 1 && w.p1 == 1) {
      has_rho5 = true;
      CHECK(w.lambda == Rational(5, 12));
      CHECK(w.rho == 5);
    }
    if (w.m1 == 1 && w.n1 == 0 && w.p1 == 4) has_excluded = true;
    CHECK(w.rho > 3);
    CHECK(w.lambda > 0);
    CHECK(w.lambda < 1);
  }
  CHECK(has_rho7);
  CHECK(has_rho5);           // the documented over-approximation keeps it
  CHECK_FALSE(has_excluded); // rho = 1 fails the threshold
  for (std::size_t i = 1; i < walls.size(); ++i) CHECK(walls[i - 1].lambda <= walls[i].lambda);
}
