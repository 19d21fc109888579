#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "p2moduli/chern.hpp"

namespace p2moduli {

// L (x) C^m -> C^n with q = dim(L) >= 3.
struct KroneckerShape {
  long long q = 3;
  long long m = 1;
  long long n = 1;
};

void validate_shape(const KroneckerShape& s);  // q >= 3, m, n >= 1

struct FieldSpec {
  bool rationals = true;
  long long p = 0;

  static FieldSpec Q() { return {true, 0}; }
  static FieldSpec prime(long long p) { return {false, p}; }
};

// entries[l][i][j] = coefficient of target basis vector j in f(l (x) e_i).
struct KroneckerModule {
  KroneckerShape shape;
  FieldSpec field;
  std::vector<std::vector<std::vector<Rational>>> entries;
};

void validate_module(const KroneckerModule& mod);

// dim W - dim G = q m n - m^2 - n^2 + 1.
Int moduli_dim(const KroneckerShape& s);

// n1 * m >= n * m1 (strictly when strict), the subspace slope condition.
bool slope_ok(long long m1, long long n1, const KroneckerShape& s, bool strict);

// gcd(m, n) = 1, in which case semistable = stable and the quotient is fine.
bool coprime_fine(const KroneckerShape& s);

struct Certificate {
  std::vector<std::vector<Rational>> basis;  // rows spanning M'
  long long image_dim = 0;                   // dim span f(L (x) M')
};

struct StabilityVerdict {
  enum class Status { Stable, Semistable, Unstable, Unknown };
  Status status = Status::Unknown;
  std::optional<Certificate> certificate;  // present iff Unstable
  std::string note;
};

// Exact decision over a prime field by exhausting every nonzero subspace M'
// (reduced row-echelon representatives, dimension ascending, lexicographic).
// SizeLimit when the subspace count exceeds the budget.
StabilityVerdict check_ff(const KroneckerModule& mod, std::uint64_t budget = 1000000);

// Semi-decision over Q: coordinate subspaces, slice-map kernels, and
// `effort` random small-integer subspaces. Returns Unstable with a
// certificate or Unknown; never claims semistability.
StabilityVerdict search_destabilizer_q(const KroneckerModule& mod, int effort = 200,
                                       std::uint64_t seed = 0xa2c5b350fd3e1fULL);

// Recomputes the image span and the slope inequality from raw entries.
bool verify_certificate(const KroneckerModule& mod, const Certificate& cert);

enum class FamilyKind { IdealLength, RankN2 };

struct FamilyInvariants {
  KroneckerShape shape;
  ChernData cokernel;
  bool dim_match = false;
};

// IdealLength: O(-n-1)^n -> O(-n)^(n+1), cokernel an ideal sheaf of length
// n(n+1)/2, moduli dim vs twice the length. RankN2 (n >= 4):
// O(-2)^(n-1) -> O(-1)^(2n-3), cokernel (n-2, 1, n), vs dim_stable_p2.
FamilyInvariants family_invariants(FamilyKind kind, long long n);

struct WallCandidate {
  long long m1 = 0, n1 = 0, p1 = 0;
  Rational lambda;
  Rational rho;
};

// Numerical wall candidates for morphisms E^m -> G^n + F^p under the
// polarization lambda*n + mu*p = 1: triples with lambda*n' + mu*p' = m'/m,
// lambda in (0,1) and rho = lambda/mu > 3. An over-approximation of the
// true walls; no realizability filtering.
std::vector<WallCandidate> candidate_walls(long long m, long long n, long long p);

}  // namespace p2moduli
