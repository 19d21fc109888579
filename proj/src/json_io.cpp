#include "p2moduli/json_io.hpp"

#include <nlohmann/json.hpp>

#include "p2moduli/errors.hpp"

namespace p2moduli {

namespace {
const long long kI64Max = std::numeric_limits<long long>::max();
const long long kI64Min = std::numeric_limits<long long>::min();
}  // namespace

Json int_to_json(const Int& v) {
  if (v >= kI64Min && v <= kI64Max) return v.convert_to<long long>();
  return v.str();
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  fail(Errc::BadInput, "expected an integer, got " + j.dump());
}

Json rat_to_json(const Rational& v) { return format_rational(v); }

Rational rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(Errc::BadInput, "expected a rational, got " + j.dump());
}

Json quad_to_json(const QuadValue& v) {
  return Json{{"a", rat_to_json(v.a)},
              {"b", rat_to_json(v.b)},
              {"d", int_to_json(v.d)},
              {"approx", qapprox(v, 12)}};
}

Json chern_to_json(const ChernData& x) { return Json::array({int_to_json(x.rank), int_to_json(x.c1), int_to_json(x.c2)}); }

ChernData chern_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) fail(Errc::BadInput, "Chern data must be [rank, c1, c2]");
  return {int_from_json(j[0]), int_from_json(j[1]), int_from_json(j[2])};
}

Json slope_disc_to_json(const SlopeDisc& s) {
  return Json{{"mu", rat_to_json(s.mu)}, {"delta", rat_to_json(s.delta)}};
}

Json bundle_to_json(const ExceptionalBundle& f) {
  return Json{{"slope", rat_to_json(f.slope)},
              {"rank", int_to_json(f.rank)},
              {"chern", chern_to_json(f.chern)},
              {"delta", rat_to_json(f.delta)},
              {"radicand", int_to_json(f.radicand)}};
}

ExceptionalBundle bundle_from_json(const Json& j) {
  ExceptionalBundle f = from_slope(rat_from_json(j.at("slope")));
  if (j.contains("chern") && chern_from_json(j.at("chern")) != f.chern)
    fail(Errc::BadInput, "bundle record disagrees with its slope");
  return f;
}

Json triad_to_json(const Triad& t) {
  return Json{{"e", bundle_to_json(t.e)}, {"f", bundle_to_json(t.f)}, {"g", bundle_to_json(t.g)},
              {"h", bundle_to_json(t.h)}, {"level", t.level},         {"index", t.index}};
}

Triad triad_from_json(const Json& j) {
  Triad t;
  t.e = bundle_from_json(j.at("e"));
  t.f = bundle_from_json(j.at("f"));
  t.g = bundle_from_json(j.at("g"));
  t.h = bundle_from_json(j.at("h"));
  t.level = j.at("level").get<int>();
  t.index = j.at("index").get<std::uint64_t>();
  return t;
}

Json status_to_json(const SemistableStatus& st) {
  switch (st.kind) {
    case SemistableStatus::Kind::PositiveDim:
      return Json{{"kind", "positive_dim"}};
    case SemistableStatus::Kind::ExceptionalPoint:
      return Json{{"kind", "exceptional_point"}, {"f", bundle_to_json(*st.f)}, {"multiple", int_to_json(st.multiple)}};
    case SemistableStatus::Kind::Empty:
      return Json{{"kind", "empty"}};
  }
  return Json();
}

Json classification_to_json(const Classification& c) {
  struct Visitor {
    Json operator()(const NotPrioritary&) const { return Json{{"variant", "not_prioritary"}}; }
    Json operator()(const SemistableExists& s) const {
      return Json{{"variant", "semistable_exists"}, {"status", status_to_json(s.status)}};
    }
    Json operator()(const Rigid& r) const {
      return Json{{"variant", "rigid"},     {"triad", triad_to_json(r.triad)}, {"m", int_to_json(r.m)},
                  {"n", int_to_json(r.n)},  {"p", int_to_json(r.p)},           {"twist", int_to_json(r.twist)}};
    }
    Json operator()(const ExceptionalPlus& e) const {
      return Json{{"variant", "exceptional_plus"},
                  {"f", bundle_to_json(e.f)},
                  {"p", int_to_json(e.p)},
                  {"residual", chern_to_json(e.residual)},
                  {"side", e.side == Side::Left ? "left" : "right"},
                  {"at_center", e.at_center},
                  {"twist", int_to_json(e.twist)}};
    }
    Json operator()(const Special01& s) const {
      return Json{{"variant", "special_01"}, {"rank", int_to_json(s.rank)}, {"twist", int_to_json(s.twist)}};
    }
    Json operator()(const PureExceptional& p) const {
      return Json{{"variant", "pure_exceptional"},
                  {"f", bundle_to_json(p.f)},
                  {"multiple", int_to_json(p.multiple)},
                  {"twist", int_to_json(p.twist)}};
    }
  };
  return std::visit(Visitor{}, c);
}

Classification classification_from_json(const Json& j) {
  std::string variant = j.at("variant").get<std::string>();
  if (variant == "not_prioritary") return NotPrioritary{};
  if (variant == "semistable_exists") {
    SemistableStatus st;
    const Json& s = j.at("status");
    std::string kind = s.at("kind").get<std::string>();
    if (kind == "positive_dim") {
      st.kind = SemistableStatus::Kind::PositiveDim;
    } else if (kind == "exceptional_point") {
      st.kind = SemistableStatus::Kind::ExceptionalPoint;
      st.f = bundle_from_json(s.at("f"));
      st.multiple = int_from_json(s.at("multiple"));
    } else {
      st.kind = SemistableStatus::Kind::Empty;
    }
    return SemistableExists{std::move(st)};
  }
  if (variant == "rigid") {
    return Rigid{triad_from_json(j.at("triad")), int_from_json(j.at("m")), int_from_json(j.at("n")),
                 int_from_json(j.at("p")), int_from_json(j.at("twist"))};
  }
  if (variant == "exceptional_plus") {
    ExceptionalPlus e;
    e.f = bundle_from_json(j.at("f"));
    e.p = int_from_json(j.at("p"));
    e.residual = chern_from_json(j.at("residual"));
    e.side = j.at("side").get<std::string>() == "right" ? Side::Right : Side::Left;
    e.at_center = j.value("at_center", false);
    e.twist = int_from_json(j.at("twist"));
    return e;
  }
  if (variant == "special_01") return Special01{int_from_json(j.at("rank")), int_from_json(j.at("twist"))};
  if (variant == "pure_exceptional")
    return PureExceptional{bundle_from_json(j.at("f")), int_from_json(j.at("multiple")), int_from_json(j.at("twist"))};
  fail(Errc::BadInput, "unknown classification variant: " + variant);
}

Json curve_row_to_json(const CurveRow& row) {
  Json j{{"mu", rat_to_json(row.mu)}, {"present", row.present}};
  if (row.present) {
    j["delta"] = rat_to_json(row.delta);
    j["delta_prime"] = quad_to_json(row.delta_prime);
    j["exceptional_slope"] = rat_to_json(row.exceptional_slope);
  }
  return j;
}

Json verdict_to_json(const StabilityVerdict& v) {
  Json j;
  switch (v.status) {
    case StabilityVerdict::Status::Stable:
      j["status"] = "stable";
      break;
    case StabilityVerdict::Status::Semistable:
      j["status"] = "semistable";
      break;
    case StabilityVerdict::Status::Unstable:
      j["status"] = "unstable";
      break;
    case StabilityVerdict::Status::Unknown:
      j["status"] = "unknown";
      break;
  }
  if (v.certificate) {
    Json basis = Json::array();
    for (const auto& row : v.certificate->basis) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(rat_to_json(x));
      basis.push_back(std::move(r));
    }
    j["certificate"] = Json{{"basis", std::move(basis)}, {"image_dim", v.certificate->image_dim}};
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json wall_to_json(const WallCandidate& w) {
  return Json{{"triple", Json::array({w.m1, w.n1, w.p1})}, {"lambda", rat_to_json(w.lambda)}, {"rho", rat_to_json(w.rho)}};
}

Json family_to_json(const FamilyInvariants& f) {
  return Json{{"shape", Json{{"q", f.shape.q}, {"m", f.shape.m}, {"n", f.shape.n}}},
              {"cokernel", chern_to_json(f.cokernel)},
              {"dim_match", f.dim_match}};
}

KroneckerModule kronecker_module_from_json(const Json& j) {
  KroneckerModule mod;
  mod.shape.q = j.at("q").get<long long>();
  mod.shape.m = j.at("m").get<long long>();
  mod.shape.n = j.at("n").get<long long>();
  const Json& field = j.at("field");
  if (field.is_string() && field.get<std::string>() == "Q")
    mod.field = FieldSpec::Q();
  else if (field.is_object() && field.contains("p"))
    mod.field = FieldSpec::prime(field.at("p").get<long long>());
  else
    fail(Errc::BadInput, "field must be \"Q\" or {\"p\": prime}");
  const Json& entries = j.at("entries");
  for (const auto& slice : entries) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : slice) {
      std::vector<Rational> vals;
      for (const auto& v : row) vals.push_back(rat_from_json(v));
      rows.push_back(std::move(vals));
    }
    mod.entries.push_back(std::move(rows));
  }
  validate_module(mod);
  return mod;
}

Json kronecker_module_to_json(const KroneckerModule& mod) {
  Json entries = Json::array();
  for (const auto& slice : mod.entries) {
    Json rows = Json::array();
    for (const auto& row : slice) {
      Json vals = Json::array();
      for (const auto& v : row) vals.push_back(rat_to_json(v));
      rows.push_back(std::move(vals));
    }
    entries.push_back(std::move(rows));
  }
  Json j{{"q", mod.shape.q}, {"m", mod.shape.m}, {"n", mod.shape.n}, {"entries", std::move(entries)}};
  j["field"] = mod.field.rationals ? Json("Q") : Json{{"p", mod.field.p}};
  return j;
}

Json cache_to_json() {
  Json entries = Json::array();
  for (const auto& [key, bundle] : epsilon_cache().snapshot())
    entries.push_back(Json{{"p", key.first}, {"q", key.second}, {"bundle", bundle_to_json(bundle)}});
  return Json{{"version", 1}, {"entries", std::move(entries)}};
}

std::size_t cache_load_json(const Json& j) {
  if (!j.is_object() || j.value("version", 0) != 1) return 0;
  if (!j.contains("entries") || !j["entries"].is_array()) return 0;
  std::size_t accepted = 0;
  for (const auto& e : j["entries"]) {
    try {
      long long p = e.at("p").get<long long>();
      int q = e.at("q").get<int>();
      ExceptionalBundle f = bundle_from_json(e.at("bundle"));
      if (!validate_exceptional(f)) continue;
      if (q < 1 || p >= 0 || p <= -(1LL << q) || p % 2 == 0) continue;  // keys live strictly inside [-1,0]
      epsilon_cache().put({p, q}, f);
      ++accepted;
    } catch (...) {
      // corrupt entries are dropped, never trusted
    }
  }
  return accepted;
}

}  // namespace p2moduli
