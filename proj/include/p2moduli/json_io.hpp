#pragma once

#include <nlohmann/json_fwd.hpp>

#include "p2moduli/boundary.hpp"
#include "p2moduli/classifier.hpp"
#include "p2moduli/kronecker.hpp"

// JSON schema used by the CLI, the cache file and the python module:
// exact rationals as "a/b" strings, quadratic values as
// {"a","b","d","approx"}, Chern data as [rank, c1, c2]. Integers are JSON
// numbers when they fit 64 bits and decimal strings otherwise.

namespace p2moduli {

using Json = nlohmann::json;

Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json rat_to_json(const Rational& v);
Rational rat_from_json(const Json& j);

Json quad_to_json(const QuadValue& v);

Json chern_to_json(const ChernData& x);
ChernData chern_from_json(const Json& j);

Json slope_disc_to_json(const SlopeDisc& s);

Json bundle_to_json(const ExceptionalBundle& f);
ExceptionalBundle bundle_from_json(const Json& j);

Json triad_to_json(const Triad& t);
Triad triad_from_json(const Json& j);

Json status_to_json(const SemistableStatus& st);

Json classification_to_json(const Classification& c);
Classification classification_from_json(const Json& j);

Json curve_row_to_json(const CurveRow& row);

Json verdict_to_json(const StabilityVerdict& v);
Json wall_to_json(const WallCandidate& w);
Json family_to_json(const FamilyInvariants& f);

KroneckerModule kronecker_module_from_json(const Json& j);
Json kronecker_module_to_json(const KroneckerModule& mod);

// Cache file: {"version": 1, "entries": [{"p":..,"q":..,"bundle":{..}}]}.
// Loading revalidates every bundle and drops anything corrupt.
Json cache_to_json();
std::size_t cache_load_json(const Json& j);  // returns entries accepted

}  // namespace p2moduli
