#pragma once

#include <cstdint>
#include <vector>

#include "p2moduli/exceptional.hpp"

namespace p2moduli {

// A helix base (E, F, G) with f.slope = compose(e.slope, g.slope), its
// address (level n, index i) in the T_n enumeration, and the cached
// left-mutation kernel H of the evaluation map E (x) Hom(E,F) -> F,
// ch(H) = chi(E,F) ch(E) - ch(F).
struct Triad {
  ExceptionalBundle e, f, g;
  int level = 0;
  std::uint64_t index = 0;
  ExceptionalBundle h;
};

Triad base_triad();  // (O(-1), Q*, O), H = O(-2)

struct TriadChildren {
  Triad left;   // (E, H', F) with ch(H') = chi(F,G) ch(F) - ch(G)
  Triad right;  // (F, K, G) with ch(K)  = chi(E,F) ch(F) - ch(E)
};
TriadChildren children(const Triad& t, int max_depth = kDefaultDepth);

struct Multiplicities {
  Int m, n, p;
};

// Beilinson multiplicities of the sheaf with invariants (rank, s):
// m = chi(X, E), n = -chi(X, H), p = chi(G, X). They are the coordinates of
// ch(X) in the basis (ch E, ch F, ch G) and may be negative outside the
// triangle.
Multiplicities multiplicities(const Triad& t, const SlopeDisc& s, const Int& rank);

// The three per-unit-rank multiplicity forms; the closed triangle is where
// all three are >= 0.
struct TriangleForms {
  Rational m_form;  // P(mu_E - mu) - D - D_E
  Rational n_form;  // D + D_H - P(mu_H - mu)
  Rational p_form;  // P(mu - mu_G) - D - D_G
};
TriangleForms triangle_forms(const Triad& t, const SlopeDisc& s);

bool triangle_contains(const Triad& t, const SlopeDisc& s);

// Shallowest triad whose closed triangle contains s (edges and vertices
// belong to the parent). Requires s in region S.
Triad find_triangle(const SlopeDisc& s, int max_depth = kDefaultDepth);

struct TilingViolation {
  SlopeDisc point;
  std::vector<std::size_t> triads;  // indices into the level-order enumeration
};

struct TilingReport {
  int depth = 0;
  int samples = 0;
  std::vector<TilingViolation> violations;
};

// Samples random rational points strictly inside triangles at level <= depth
// and reports every point strictly inside more than one triangle. The
// theorem says the list is empty.
TilingReport tiling_spotcheck(int depth, int samples, std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

// All triads with level <= depth, in level order (root first).
std::vector<Triad> enumerate_triads(int depth);

}  // namespace p2moduli
