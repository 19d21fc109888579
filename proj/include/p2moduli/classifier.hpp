#pragma once

#include <variant>

#include "p2moduli/boundary.hpp"
#include "p2moduli/triads.hpp"

namespace p2moduli {

// Outcomes of the generic-prioritary-sheaf decision procedure. The twist
// field is the line-bundle power that takes the normalized decomposition
// back to the input, i.e. input = twist(normalized sum, twist).

struct NotPrioritary {};

struct SemistableExists {
  SemistableStatus status;
};

struct Rigid {
  Triad triad;
  Int m, n, p;
  Int twist;
};

enum class Side { Left, Right };

struct ExceptionalPlus {
  ExceptionalBundle f;
  Int p;
  ChernData residual;
  Side side = Side::Left;
  bool at_center = false;  // mu = mu(F): the two side formulas coincide
  Int twist;
};

// (O (x) C^{r-2}) + V_x, where V_x is the extension of an ideal sheaf of a
// point by O; ch(V_x) = (2, 0, 1).
struct Special01 {
  Int rank;
  Int twist;
};

struct PureExceptional {
  ExceptionalBundle f;
  Int multiple;
  Int twist;
};

using Classification = std::variant<NotPrioritary, SemistableExists, Rigid, ExceptionalPlus, Special01, PureExceptional>;

Classification classify(const ChernData& x, int max_depth = kDefaultDepth);

// Direct-sum Chern data of the asserted decomposition, twisted back; must
// equal the classify input. NotDecomposed for the first two variants.
ChernData reassemble(const Classification& c);

// Automorphism-group dimension p^2 + 1 + 3 p r' rg(F) (mu(F) - mu') of the
// sheaves (F (x) C^p) + U in the exceptional-plus family.
Int aut_dim_exceptional_plus(const Int& p, const ExceptionalBundle& f, const ChernData& residual);

inline const ChernData kVxChern{2, 0, 1};

}  // namespace p2moduli
