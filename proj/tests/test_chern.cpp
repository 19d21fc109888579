#include <random>

#include "doctest.h"
#include "p2moduli/chern.hpp"
#include "p2moduli/errors.hpp"

using namespace p2moduli;

namespace {
ChernData cd(long long r, long long c1, long long c2) { return {Int(r), Int(c1), Int(c2)}; }
Rational rat(long long n, long long d = 1) { return Rational(Int(n), Int(d)); }
}  // namespace

TEST_CASE("slope_disc") {
  SlopeDisc s = slope_disc(cd(2, -1, 1));
  CHECK(s.mu == rat(-1, 2));
  CHECK(s.delta == rat(3, 8));
  CHECK(slope_disc(cd(1, 0, 0)) == SlopeDisc{rat(0), rat(0)});
  CHECK(slope_disc(cd(6, -3, 8)) == SlopeDisc{rat(-1, 2), rat(17, 24)});
  CHECK_THROWS_AS((void)slope_disc(cd(0, 1, 1)), Error);
}

TEST_CASE("from_slope_disc") {
  CHECK(from_slope_disc(2, {rat(-1, 2), rat(3, 8)}) == cd(2, -1, 1));
  CHECK(from_slope_disc(1, {rat(0), rat(0)}) == cd(1, 0, 0));
  CHECK_THROWS_AS((void)from_slope_disc(2, {rat(-1, 3), rat(0)}), Error);
}

TEST_CASE("twist") {
  CHECK(twist(cd(1, 0, 0), -1) == cd(1, -1, 0));
  CHECK(twist(cd(2, -1, 1), 1) == cd(2, 1, 1));
  CHECK(slope_disc(twist(cd(2, -1, 1), 1)).delta == rat(3, 8));
  CHECK(twist(cd(6, -3, 8), 1) == cd(6, 3, 8));
  CHECK(slope_disc(twist(cd(6, -3, 8), 1)).delta == rat(17, 24));
}

TEST_CASE("twist preserves the discriminant") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long long> pick(-9, 9);
  for (int i = 0; i < 200; ++i) {
    ChernData x = cd(1 + std::abs(pick(rng)), pick(rng), pick(rng));
    Int k = pick(rng);
    CHECK(slope_disc(twist(x, k)).delta == slope_disc(x).delta);
    CHECK(twist(twist(x, k), -k) == x);
  }
}

TEST_CASE("direct_sum") {
  CHECK(direct_sum(cd(1, -1, 0), cd(1, 0, 0)) == cd(2, -1, 0));
  ChernData x = cd(5, -3, 6);
  CHECK(direct_sum(x, cd(0, 0, 0)) == x);
  CHECK(direct_sum(cd(2, -1, 1), cd(2, -1, 1)) == cd(4, -2, 3));
}

TEST_CASE("direct_sum is associative and commutative") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<long long> pick(-6, 6);
  for (int i = 0; i < 100; ++i) {
    ChernData a = cd(std::abs(pick(rng)), pick(rng), pick(rng));
    ChernData b = cd(std::abs(pick(rng)), pick(rng), pick(rng));
    ChernData c = cd(std::abs(pick(rng)), pick(rng), pick(rng));
    CHECK(direct_sum(a, b) == direct_sum(b, a));
    CHECK(direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c)));
    CHECK(chern_of_complex({{a, 1}, {b, 1}}, {}) == direct_sum(a, b));
  }
}

TEST_CASE("chern_of_complex on the worked resolutions") {
  // 0 -> O(-3)^2 -> O(-2)^3 -> I_Z -> 0, length 3
  CHECK(chern_of_complex({{line_bundle(-2), 3}}, {{line_bundle(-3), 2}}) == cd(1, 0, 3));
  // O(-2)^3 -> O(-1)^5, cokernel (2,1,4)
  CHECK(chern_of_complex({{line_bundle(-1), 5}}, {{line_bundle(-2), 3}}) == cd(2, 1, 4));
  ChernData x = cd(7, 2, 5);
  CHECK(chern_of_complex({{x, 1}}, {}) == x);
  CHECK_THROWS_AS((void)chern_of_complex({{line_bundle(0), 1}}, {{line_bundle(0), 2}}), Error);
}

TEST_CASE("euler_char") {
  CHECK(euler_char(cd(6, -3, 8)) == -2);
  CHECK(euler_char(cd(1, 0, 0)) == 1);
  CHECK(euler_char(cd(1, 0, 3)) == -2);
}

TEST_CASE("euler_form examples") {
  CHECK(euler_form(cd(4, 1, 3), cd(1, 0, 0)) == 0);
  CHECK(euler_form(cd(4, -1, 3), cd(1, 0, 0)) == 3);
  CHECK(euler_form(cd(2, -1, 1), cd(2, -1, 1)) == 1);
  CHECK(euler_form(cd(1, -1, 0), cd(2, -1, 1)) == 3);
}

TEST_CASE("euler_char is the form against O, and the slope form agrees") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long long> pick(-8, 8);
  for (int i = 0; i < 300; ++i) {
    ChernData x = cd(std::abs(pick(rng)), pick(rng), pick(rng));
    ChernData y = cd(std::abs(pick(rng)), pick(rng), pick(rng));
    CHECK(euler_char(x) == euler_form(cd(1, 0, 0), x));
    (void)euler_form(x, y);  // internal ch-vs-slope cross-check fires for positive ranks
  }
}

TEST_CASE("dim_stable_p2") {
  CHECK(dim_stable_p2(cd(2, 1, 4)) == 12);
  CHECK(dim_stable_p2(cd(1, 0, 1)) == 2);
  CHECK(dim_stable_p2(cd(7, 5, 15)) == 12);
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long long> pick(-9, 9);
  for (int i = 0; i < 200; ++i) {
    ChernData x = cd(1 + std::abs(pick(rng)), pick(rng), pick(rng));
    Int closed = 2 * x.rank * x.c2 - (x.rank - 1) * x.c1 * x.c1 - x.rank * x.rank + 1;
    CHECK(dim_stable_p2(x) == closed);
  }
}

TEST_CASE("dim_simple_k3") {
  CHECK(dim_simple_k3(1, 1, rat(3, 2)) == 2);
  CHECK(dim_simple_k3(1, 2, rat(1)) == 1);
  CHECK(dim_simple_k3(2, 2, rat(3, 2)) == 6);
  CHECK_THROWS_AS((void)dim_simple_k3(1, 1, rat(9, 8)), Error);
}

TEST_CASE("ext_numerology") {
  ExtNumerology e = ext_numerology(1, 1, -1);
  CHECK(e.hom_dim == 1);
  CHECK(e.ext1_cap == 2);
  e = ext_numerology(2, 3, 0);
  CHECK(e.hom_dim == 5);
  CHECK(e.ext1_cap == 5);
  e = ext_numerology(1, 1, 0);
  CHECK(e.hom_dim == 2);
  CHECK(e.ext1_cap == 2);
}

TEST_CASE("ruled_extension_ok") {
  CHECK(ruled_extension_ok(1, 0, 1, 0, 0, 0));
  CHECK_FALSE(ruled_extension_ok(1, 0, 1, 0, 2, 0));
  CHECK(ruled_extension_ok(1, 0, 1, 1, 1, 0));
}
