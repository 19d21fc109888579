#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include <sstream>

#include "p2moduli/cli.hpp"
#include "p2moduli/errors.hpp"
#include "p2moduli/json_io.hpp"

namespace py = pybind11;
using namespace p2moduli;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      return py::none();
  }
}

Int int_from_py(const py::object& o) { return parse_int(py::str(o).cast<std::string>()); }

Rational rat_from_py(const py::object& o) { return parse_rational(py::str(o).cast<std::string>()); }

py::object int_to_py(const Int& v) {
  return py::module_::import("builtins").attr("int")(py::str(v.str()));
}

ChernData chern_from_py(const py::object& r, const py::object& c1, const py::object& c2) {
  return {int_from_py(r), int_from_py(c1), int_from_py(c2)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact numerics for exceptional bundles, existence boundaries and "
            "Kronecker-module moduli on the projective plane";

  m.def(
      "classify",
      [](const py::object& r, const py::object& c1, const py::object& c2, int depth) {
        return json_to_py(classification_to_json(classify(chern_from_py(r, c1, c2), depth)));
      },
      py::arg("rank"), py::arg("c1"), py::arg("c2"), py::arg("depth") = kDefaultDepth);

  m.def(
      "semistable_status",
      [](const py::object& r, const py::object& c1, const py::object& c2, int depth) {
        return json_to_py(status_to_json(semistable_status(chern_from_py(r, c1, c2), depth)));
      },
      py::arg("rank"), py::arg("c1"), py::arg("c2"), py::arg("depth") = kDefaultDepth);

  m.def(
      "locate",
      [](const py::object& mu, int depth) { return json_to_py(bundle_to_json(locate(rat_from_py(mu), depth))); },
      py::arg("mu"), py::arg("depth") = kDefaultDepth);

  m.def(
      "epsilon",
      [](long long p, int q, int depth) { return json_to_py(bundle_to_json(epsilon(p, q, depth))); },
      py::arg("p"), py::arg("q"), py::arg("depth") = kDefaultDepth);

  m.def(
      "compose",
      [](const py::object& a, const py::object& b) {
        return py::str(format_rational(compose(rat_from_py(a), rat_from_py(b))));
      },
      py::arg("alpha"), py::arg("beta"));

  m.def(
      "left_series",
      [](const py::object& mu, int count, int depth) {
        ExceptionalBundle f = locate(rat_from_py(mu), depth);
        if (f.slope != rat_from_py(mu)) fail(Errc::BadInput, "slope is not exceptional");
        py::list out;
        for (const auto& g : left_series(f, count, depth)) out.append(json_to_py(bundle_to_json(g)));
        return out;
      },
      py::arg("mu"), py::arg("count"), py::arg("depth") = kDefaultDepth);

  m.def(
      "x_width",
      [](const py::object& mu) { return json_to_py(quad_to_json(x_width(from_slope(rat_from_py(mu))))); },
      py::arg("mu"));

  m.def(
      "delta", [](const py::object& mu, int depth) { return py::str(format_rational(delta(rat_from_py(mu), depth))); },
      py::arg("mu"), py::arg("depth") = kDefaultDepth);

  m.def(
      "delta_prime",
      [](const py::object& mu, int depth) { return json_to_py(quad_to_json(delta_prime(rat_from_py(mu), depth))); },
      py::arg("mu"), py::arg("depth") = kDefaultDepth);

  m.def(
      "exists_prioritary",
      [](const py::object& mu, const py::object& delta_) {
        return exists_prioritary({rat_from_py(mu), rat_from_py(delta_)});
      },
      py::arg("mu"), py::arg("delta"));

  m.def(
      "in_region_s",
      [](const py::object& mu, const py::object& delta_, int depth) {
        return in_region_s({rat_from_py(mu), rat_from_py(delta_)}, depth);
      },
      py::arg("mu"), py::arg("delta"), py::arg("depth") = kDefaultDepth);

  m.def(
      "euler_char",
      [](const py::object& r, const py::object& c1, const py::object& c2) {
        return int_to_py(euler_char(chern_from_py(r, c1, c2)));
      },
      py::arg("rank"), py::arg("c1"), py::arg("c2"));

  m.def(
      "euler_form",
      [](const py::tuple& a, const py::tuple& b) {
        return int_to_py(euler_form(chern_from_py(a[0], a[1], a[2]), chern_from_py(b[0], b[1], b[2])));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "slope_disc",
      [](const py::object& r, const py::object& c1, const py::object& c2) {
        SlopeDisc s = slope_disc(chern_from_py(r, c1, c2));
        return py::make_tuple(py::str(format_rational(s.mu)), py::str(format_rational(s.delta)));
      },
      py::arg("rank"), py::arg("c1"), py::arg("c2"));

  m.def(
      "sample_curves",
      [](const py::object& lo, const py::object& hi, int steps, int depth) {
        py::list out;
        for (const auto& row : sample_curves(rat_from_py(lo), rat_from_py(hi), steps, depth))
          out.append(json_to_py(curve_row_to_json(row)));
        return out;
      },
      py::arg("mu_min"), py::arg("mu_max"), py::arg("steps"), py::arg("depth") = kDefaultDepth);

  m.def(
      "find_triangle",
      [](const py::object& mu, const py::object& delta_, int depth) {
        return json_to_py(triad_to_json(find_triangle({rat_from_py(mu), rat_from_py(delta_)}, depth)));
      },
      py::arg("mu"), py::arg("delta"), py::arg("depth") = kDefaultDepth);

  m.def(
      "tiling_spotcheck",
      [](int depth, int samples) {
        TilingReport r = tiling_spotcheck(depth, samples);
        py::dict out;
        out["depth"] = r.depth;
        out["samples"] = r.samples;
        out["violations"] = py::int_(r.violations.size());
        return out;
      },
      py::arg("depth"), py::arg("samples"));

  m.def(
      "moduli_dim", [](long long q, long long mm, long long n) { return int_to_py(moduli_dim({q, mm, n})); },
      py::arg("q"), py::arg("m"), py::arg("n"));

  m.def(
      "candidate_walls",
      [](long long mm, long long n, long long p) {
        py::list out;
        for (const auto& w : candidate_walls(mm, n, p)) out.append(json_to_py(wall_to_json(w)));
        return out;
      },
      py::arg("m"), py::arg("n"), py::arg("p"));

  m.def(
      "family_invariants",
      [](const std::string& kind, long long n) {
        FamilyKind k;
        if (kind == "ideal" || kind == "ideal-length")
          k = FamilyKind::IdealLength;
        else if (kind == "rankn2" || kind == "rank-n2")
          k = FamilyKind::RankN2;
        else
          fail(Errc::BadInput, "kind must be 'ideal' or 'rankn2'");
        return json_to_py(family_to_json(family_invariants(k, n)));
      },
      py::arg("kind"), py::arg("n"));

  m.def(
      "check_module",
      [](const std::string& module_json, int effort, std::uint64_t budget) {
        KroneckerModule mod = kronecker_module_from_json(Json::parse(module_json));
        StabilityVerdict v = mod.field.rationals ? search_destabilizer_q(mod, effort) : check_ff(mod, budget);
        return json_to_py(verdict_to_json(v));
      },
      py::arg("module_json"), py::arg("effort") = 200, py::arg("budget") = 1000000);

  m.def(
      "qapprox",
      [](const py::object& a, const py::object& b, const py::object& d, unsigned digits) {
        return py::str(qapprox(QuadValue(rat_from_py(a), rat_from_py(b), int_from_py(d)), digits));
      },
      py::arg("a"), py::arg("b"), py::arg("d"), py::arg("digits") = 12);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int rc = run(args, out, err);
        return py::make_tuple(rc, py::str(out.str()), py::str(err.str()));
      },
      py::arg("args"));
}
