#include "p2moduli/cli.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "p2moduli/errors.hpp"
#include "p2moduli/json_io.hpp"

namespace p2moduli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParsedArgs {
  std::vector<std::string> positionals;
  std::map<std::string, std::string> options;
  bool json = false;
  bool no_cache = false;
  bool help = false;
  int depth = kDefaultDepth;
};

const char* kUsage = R"(usage: moduli [--json] [--no-cache] [--depth N] <command>

commands:
  classify <r> <c1> <c2>                 structure of the generic prioritary sheaf
  exceptional locate <mu>                the exceptional bundle whose interval contains mu
  exceptional eps <p/2^q>                the bundle at a dyadic address
  series --slope <mu> --count <N>        left exceptional series of the bundle at <mu>
  delta <mu>                             existence boundary delta(mu)
  delta-prime <mu>                       fine boundary delta'(mu)
  chi <r,c1,c2> <r,c1,c2>                Euler form chi(a, b)
  curves --min <mu> --max <mu> --steps <N> [--format csv|svg] [--out PATH]
                                         sample both boundary curves
  kronecker dim <q> <m> <n>              dim N(q,m,n)
  kronecker check --file <F> [--effort N] [--budget N]
                                         (semi)stability of a Kronecker module
  kronecker walls --m <M> --n <N> --p <P>
                                         candidate polarization walls
  kronecker family --kind ideal|rankn2 --n <N>
                                         worked sheaf families and their moduli dims

fractions are written a/b or as plain integers.
)";

const char* const kValueOptions[] = {"--depth", "--slope", "--count", "--min",    "--max",  "--steps",
                                     "--format", "--out",  "--width", "--height", "--file", "--effort",
                                     "--budget", "--m",    "--n",     "--p",      "--kind"};

ParsedArgs parse_args(const std::vector<std::string>& args) {
  ParsedArgs p;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--json") {
      p.json = true;
    } else if (a == "--no-cache") {
      p.no_cache = true;
    } else if (a == "--help" || a == "-h" || a == "help") {
      p.help = true;
    } else if (a.rfind("--", 0) == 0) {
      bool known = false;
      for (const char* opt : kValueOptions) known = known || a == opt;
      if (!known) throw UsageError("unknown option: " + a);
      if (i + 1 >= args.size()) throw UsageError("option " + a + " needs a value");
      p.options[a.substr(2)] = args[++i];
    } else {
      p.positionals.push_back(a);
    }
  }
  if (p.options.count("depth")) {
    try {
      p.depth = std::stoi(p.options.at("depth"));
    } catch (...) {
      throw UsageError("--depth needs an integer");
    }
    if (p.depth < 1) throw UsageError("--depth must be >= 1");
  }
  return p;
}

Rational arg_rational(const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const Error&) {
    throw UsageError("not a fraction: " + s);
  }
}

Int arg_int(const std::string& s) {
  try {
    return parse_int(s);
  } catch (const Error&) {
    throw UsageError("not an integer: " + s);
  }
}

long long arg_ll(const std::string& s) {
  Int v = arg_int(s);
  if (v < std::numeric_limits<long long>::min() || v > std::numeric_limits<long long>::max())
    throw UsageError("integer out of range: " + s);
  return v.convert_to<long long>();
}

const std::string& require_option(const ParsedArgs& p, const std::string& name) {
  auto it = p.options.find(name);
  if (it == p.options.end()) throw UsageError("missing --" + name);
  return it->second;
}

ChernData arg_triple(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) throw UsageError("expected r,c1,c2 but got: " + s);
  return {arg_int(parts[0]), arg_int(parts[1]), arg_int(parts[2])};
}

std::string chern_str(const ChernData& x) {
  return "(" + x.rank.str() + "," + x.c1.str() + "," + x.c2.str() + ")";
}

std::string quad_str(const QuadValue& v) {
  if (v.is_rational()) return format_rational(v.a);
  return format_rational(v.a) + " + " + format_rational(v.b) + "*sqrt(" + v.d.str() + ") ~ " + qapprox(v, 12);
}

void print_bundle(const ExceptionalBundle& f, std::ostream& out) {
  out << "slope " << format_rational(f.slope) << "\n";
  out << "rank " << f.rank.str() << "\n";
  out << "chern " << chern_str(f.chern) << "\n";
  out << "delta " << format_rational(f.delta) << "\n";
}

std::string bundle_line(const ExceptionalBundle& f) {
  return "slope " + format_rational(f.slope) + ", rank " + f.rank.str() + ", chern " + chern_str(f.chern);
}

void print_classification(const Classification& c, std::ostream& out) {
  struct Visitor {
    std::ostream& out;
    void operator()(const NotPrioritary&) const { out << "not prioritary: Delta < mu(mu+1)/2\n"; }
    void operator()(const SemistableExists& s) const {
      out << "semistable sheaves exist";
      if (s.status.kind == SemistableStatus::Kind::PositiveDim) {
        out << ": moduli space of positive dimension\n";
      } else {
        out << ": moduli space is the single point F^" << s.status.multiple.str() << ", F = "
            << bundle_line(*s.status.f) << "\n";
      }
    }
    void operator()(const Rigid& r) const {
      out << "rigid: E^" << r.m.str() << " (+) F^" << r.n.str() << " (+) G^" << r.p.str();
      if (!r.twist.is_zero()) out << ", twisted by O(" << r.twist.str() << ")";
      out << "\n";
      out << "  E: " << bundle_line(r.triad.e) << "\n";
      out << "  F: " << bundle_line(r.triad.f) << "\n";
      out << "  G: " << bundle_line(r.triad.g) << "\n";
    }
    void operator()(const ExceptionalPlus& e) const {
      out << "exceptional summand plus stable part: F^" << e.p.str() << " (+) U";
      if (!e.twist.is_zero()) out << ", twisted by O(" << e.twist.str() << ")";
      out << "\n";
      out << "  F: " << bundle_line(e.f) << "\n";
      out << "  U: chern " << chern_str(e.residual) << " on curve " << (e.side == Side::Left ? "G(F)" : "D(F)");
      if (e.at_center) out << " (at the interval center)";
      out << "\n";
    }
    void operator()(const Special01& s) const {
      out << "special: O^" << Int(s.rank - 2).str() << " (+) V_x";
      if (!s.twist.is_zero()) out << ", twisted by O(" << s.twist.str() << ")";
      out << "\n";
    }
    void operator()(const PureExceptional& p) const {
      out << "multiple of an exceptional bundle: F^" << p.multiple.str() << ", F = " << bundle_line(p.f) << "\n";
    }
  };
  std::visit(Visitor{out}, c);
}

std::string default_cache_path() {
  if (const char* env = std::getenv("MODULI_CACHE")) return env;
  if (const char* home = std::getenv("HOME"))
    return std::string(home) + "/.cache/p2moduli/exceptional.json";
  return {};
}

void load_cache_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  try {
    Json j = Json::parse(in);
    cache_load_json(j);
  } catch (...) {
    // a corrupt cache file is simply ignored
  }
}

void save_cache_file(const std::string& path) {
  std::error_code ec;
  std::filesystem::path fp(path);
  if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path(), ec);
  std::ofstream outf(path, std::ios::trunc);
  if (!outf) return;  // persistence is best-effort
  outf << cache_to_json().dump(2) << "\n";
}

void emit_csv(const std::vector<CurveRow>& rows, std::ostream& out) {
  out << "mu,delta,delta_prime_approx,exceptional_slope\n";
  for (const auto& r : rows) {
    out << format_rational(r.mu) << ",";
    if (r.present)
      out << format_rational(r.delta) << "," << qapprox(r.delta_prime, 12) << ","
          << format_rational(r.exceptional_slope);
    else
      out << ",,";
    out << "\n";
  }
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

double quad_double(const QuadValue& v) {
  return to_double(v.a) + to_double(v.b) * std::sqrt(v.d.convert_to<double>());
}

void emit_svg(const std::vector<CurveRow>& rows, const Rational& lo, const Rational& hi, int width, int height,
              std::ostream& out) {
  double xmin = to_double(lo), xmax = to_double(hi);
  auto xpix = [&](double mu) { return (mu - xmin) / (xmax - xmin) * width; };
  auto ypix = [&](double d) { return height - d / 1.1 * height; };
  char buf[64];
  auto fmt = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  std::vector<Rational> slopes;
  for (const auto& r : rows)
    if (r.present && std::find(slopes.begin(), slopes.end(), r.exceptional_slope) == slopes.end())
      slopes.push_back(r.exceptional_slope);
  for (const auto& s : slopes) {
    if (s < lo || s > hi) continue;
    std::string x = fmt(xpix(to_double(s)));
    out << "  <line x1=\"" << x << "\" y1=\"0\" x2=\"" << x << "\" y2=\"" << height
        << "\" stroke=\"#999\" stroke-width=\"1\" stroke-dasharray=\"1,4\"/>\n";
  }
  auto polyline = [&](bool prime, const char* style) {
    out << "  <polyline fill=\"none\" " << style << " points=\"";
    bool first = true;
    for (const auto& r : rows) {
      if (!r.present) continue;
      double d = prime ? quad_double(r.delta_prime) : to_double(r.delta);
      if (!first) out << " ";
      out << fmt(xpix(to_double(r.mu))) << "," << fmt(ypix(d));
      first = false;
    }
    out << "\"/>\n";
  };
  polyline(false, "stroke=\"#1f4e9c\" stroke-width=\"2\"");
  polyline(true, "stroke=\"#c44e52\" stroke-width=\"2\" stroke-dasharray=\"6,4\"");
  out << "</svg>\n";
}

int cmd_classify(const ParsedArgs& p, std::ostream& out) {
  if (p.positionals.size() != 4) throw UsageError("classify needs r c1 c2");
  ChernData x{arg_int(p.positionals[1]), arg_int(p.positionals[2]), arg_int(p.positionals[3])};
  Classification c = classify(x, p.depth);
  if (p.json)
    out << classification_to_json(c).dump(2) << "\n";
  else
    print_classification(c, out);
  return 0;
}

int cmd_exceptional(const ParsedArgs& p, std::ostream& out) {
  if (p.positionals.size() < 2) throw UsageError("exceptional needs a subcommand: locate or eps");
  const std::string& sub = p.positionals[1];
  if (sub == "locate") {
    if (p.positionals.size() != 3) throw UsageError("exceptional locate needs <mu>");
    ExceptionalBundle f = locate(arg_rational(p.positionals[2]), p.depth);
    if (p.json)
      out << bundle_to_json(f).dump(2) << "\n";
    else
      print_bundle(f, out);
    return 0;
  }
  if (sub == "eps") {
    if (p.positionals.size() != 3) throw UsageError("exceptional eps needs <p/2^q>");
    Rational x = arg_rational(p.positionals[2]);
    Int d = den(x);
    int q = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++q;
    }
    if (d != 1) throw UsageError("eps address denominator must be a power of 2");
    Int pn = num(x);
    if (pn < std::numeric_limits<long long>::min() || pn > std::numeric_limits<long long>::max())
      throw UsageError("eps address numerator out of range");
    ExceptionalBundle f = epsilon(pn.convert_to<long long>(), q, p.depth);
    if (p.json)
      out << bundle_to_json(f).dump(2) << "\n";
    else
      print_bundle(f, out);
    return 0;
  }
  throw UsageError("unknown exceptional subcommand: " + sub);
}

int cmd_series(const ParsedArgs& p, std::ostream& out) {
  Rational mu = arg_rational(require_option(p, "slope"));
  long long count = arg_ll(require_option(p, "count"));
  if (count < 1 || count > 64) throw UsageError("--count must be in [1,64]");
  ExceptionalBundle f = locate(mu, p.depth);
  if (f.slope != mu) fail(Errc::BadInput, format_rational(mu) + " is not an exceptional slope");
  auto series = left_series(f, static_cast<int>(count), p.depth);
  if (p.json) {
    Json arr = Json::array();
    for (const auto& g : series) arr.push_back(bundle_to_json(g));
    out << arr.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < series.size(); ++i) out << "G" << i << ": " << bundle_line(series[i]) << "\n";
  }
  return 0;
}

int cmd_delta(const ParsedArgs& p, std::ostream& out) {
  if (p.positionals.size() != 2) throw UsageError("delta needs <mu>");
  Rational mu = arg_rational(p.positionals[1]);
  Rational d = delta(mu, p.depth);
  if (p.json)
    out << Json{{"mu", rat_to_json(mu)}, {"delta", rat_to_json(d)}}.dump(2) << "\n";
  else
    out << format_rational(d) << "\n";
  return 0;
}

int cmd_delta_prime(const ParsedArgs& p, std::ostream& out) {
  if (p.positionals.size() != 2) throw UsageError("delta-prime needs <mu>");
  Rational mu = arg_rational(p.positionals[1]);
  QuadValue d = delta_prime(mu, p.depth);
  if (p.json)
    out << Json{{"mu", rat_to_json(mu)}, {"delta_prime", quad_to_json(d)}}.dump(2) << "\n";
  else
    out << quad_str(d) << "\n";
  return 0;
}

int cmd_chi(const ParsedArgs& p, std::ostream& out) {
  if (p.positionals.size() != 3) throw UsageError("chi needs two r,c1,c2 triples");
  Int chi = euler_form(arg_triple(p.positionals[1]), arg_triple(p.positionals[2]));
  if (p.json)
    out << Json{{"chi", int_to_json(chi)}}.dump(2) << "\n";
  else
    out << chi.str() << "\n";
  return 0;
}

int cmd_curves(const ParsedArgs& p, std::ostream& out) {
  Rational lo = arg_rational(require_option(p, "min"));
  Rational hi = arg_rational(require_option(p, "max"));
  long long steps = arg_ll(require_option(p, "steps"));
  if (!(lo < hi)) throw UsageError("empty range: --min must be < --max");
  if (steps < 2) throw UsageError("--steps must be >= 2");
  std::string format = "csv";
  if (p.options.count("format")) format = p.options.at("format");
  if (format != "csv" && format != "svg") throw UsageError("--format must be csv or svg");
  int width = 800, height = 500;
  if (p.options.count("width")) width = std::max(16, std::atoi(p.options.at("width").c_str()));
  if (p.options.count("height")) height = std::max(16, std::atoi(p.options.at("height").c_str()));

  auto rows = sample_curves(lo, hi, static_cast<int>(steps), p.depth);

  std::ostringstream buf;
  if (format == "csv")
    emit_csv(rows, buf);
  else
    emit_svg(rows, lo, hi, width, height, buf);

  if (p.options.count("out")) {
    std::ofstream file(p.options.at("out"), std::ios::trunc);
    if (!file) fail(Errc::Io, "cannot open " + p.options.at("out"));
    file << buf.str();
    if (!file) fail(Errc::Io, "write failed: " + p.options.at("out"));
  } else {
    out << buf.str();
  }
  return 0;
}

int cmd_kronecker(const ParsedArgs& p, std::ostream& out) {
  if (p.positionals.size() < 2) throw UsageError("kronecker needs a subcommand: dim, check, walls or family");
  const std::string& sub = p.positionals[1];
  if (sub == "dim") {
    if (p.positionals.size() != 5) throw UsageError("kronecker dim needs q m n");
    KroneckerShape s{arg_ll(p.positionals[2]), arg_ll(p.positionals[3]), arg_ll(p.positionals[4])};
    Int d = moduli_dim(s);
    if (p.json)
      out << Json{{"dim", int_to_json(d)}}.dump(2) << "\n";
    else
      out << d.str() << "\n";
    return 0;
  }
  if (sub == "check") {
    const std::string& path = require_option(p, "file");
    std::ifstream in(path);
    if (!in) fail(Errc::Io, "cannot open " + path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const std::exception& e) {
      fail(Errc::BadInput, std::string("module file is not valid JSON: ") + e.what());
    }
    KroneckerModule mod = kronecker_module_from_json(j);
    long long effort = p.options.count("effort") ? arg_ll(p.options.at("effort")) : 200;
    std::uint64_t budget = p.options.count("budget") ? static_cast<std::uint64_t>(arg_ll(p.options.at("budget"))) : 1000000;
    StabilityVerdict v =
        mod.field.rationals ? search_destabilizer_q(mod, static_cast<int>(effort)) : check_ff(mod, budget);
    if (p.json) {
      out << verdict_to_json(v).dump(2) << "\n";
    } else {
      Json jv = verdict_to_json(v);
      out << "status: " << jv["status"].get<std::string>() << "\n";
      if (v.certificate) {
        out << "certificate: dim(M') = " << v.certificate->basis.size() << ", image dim = "
            << v.certificate->image_dim << "\n";
        for (const auto& row : v.certificate->basis) {
          out << "  [";
          for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << format_rational(row[i]);
          out << "]\n";
        }
      }
      if (!v.note.empty()) out << "note: " << v.note << "\n";
    }
    return 0;
  }
  if (sub == "walls") {
    long long m = arg_ll(require_option(p, "m"));
    long long n = arg_ll(require_option(p, "n"));
    long long pp = arg_ll(require_option(p, "p"));
    auto walls = candidate_walls(m, n, pp);
    if (p.json) {
      Json arr = Json::array();
      for (const auto& w : walls) arr.push_back(wall_to_json(w));
      out << arr.dump(2) << "\n";
    } else {
      for (const auto& w : walls)
        out << "(" << w.m1 << "," << w.n1 << "," << w.p1 << ") lambda=" << format_rational(w.lambda)
            << " rho=" << format_rational(w.rho) << "\n";
    }
    return 0;
  }
  if (sub == "family") {
    const std::string& kind_s = require_option(p, "kind");
    FamilyKind kind;
    if (kind_s == "ideal" || kind_s == "ideal-length")
      kind = FamilyKind::IdealLength;
    else if (kind_s == "rankn2" || kind_s == "rank-n2")
      kind = FamilyKind::RankN2;
    else
      throw UsageError("--kind must be ideal or rankn2");
    long long n = arg_ll(require_option(p, "n"));
    FamilyInvariants f = family_invariants(kind, n);
    if (p.json) {
      out << family_to_json(f).dump(2) << "\n";
    } else {
      out << "shape N(" << f.shape.q << "," << f.shape.m << "," << f.shape.n << "), dim "
          << moduli_dim(f.shape).str() << "\n";
      out << "cokernel " << chern_str(f.cokernel) << "\n";
      out << "dim_match " << (f.dim_match ? "true" : "false") << "\n";
    }
    return 0;
  }
  throw UsageError("unknown kronecker subcommand: " + sub);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ParsedArgs p;
  try {
    p = parse_args(args);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << kUsage;
    return 1;
  }
  if (p.help) {
    out << kUsage;
    return 0;
  }
  if (p.positionals.empty()) {
    err << kUsage;
    return 1;
  }

  bool cache_enabled_before = epsilon_cache().enabled();
  epsilon_cache().set_enabled(!p.no_cache);
  std::string cache_path = p.no_cache ? std::string() : default_cache_path();
  std::size_t loaded = 0;
  if (!cache_path.empty()) {
    load_cache_file(cache_path);
    loaded = epsilon_cache().size();
  }

  int rc = 0;
  try {
    const std::string& cmd = p.positionals[0];
    if (cmd == "classify")
      rc = cmd_classify(p, out);
    else if (cmd == "exceptional")
      rc = cmd_exceptional(p, out);
    else if (cmd == "series")
      rc = cmd_series(p, out);
    else if (cmd == "delta")
      rc = cmd_delta(p, out);
    else if (cmd == "delta-prime")
      rc = cmd_delta_prime(p, out);
    else if (cmd == "chi")
      rc = cmd_chi(p, out);
    else if (cmd == "curves")
      rc = cmd_curves(p, out);
    else if (cmd == "kronecker")
      rc = cmd_kronecker(p, out);
    else
      throw UsageError("unknown command: " + cmd);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << kUsage;
    rc = 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    rc = exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    rc = 2;
  }

  if (!cache_path.empty() && epsilon_cache().size() > loaded) save_cache_file(cache_path);
  epsilon_cache().set_enabled(cache_enabled_before);
  return rc;
}

}  // namespace p2moduli
