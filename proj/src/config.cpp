#include "wrc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "wrc/error.hpp"

namespace wrc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::config_error, (path.empty() ? std::string("<root>") : path) + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      fail(join(path, key), "unknown key");
    }
  }
}

double number_at(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(join(path, key), "required number missing");
  const json& v = j.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(join(path, key), "expected a finite number");
  return x;
}

double number_or(const json& j, const std::string& key, const std::string& path, double fallback) {
  return j.contains(key) ? number_at(j, key, path) : fallback;
}

std::string string_at(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(join(path, key), "required string missing");
  if (!j.at(key).is_string()) fail(join(path, key), "expected a string");
  return j.at(key).get<std::string>();
}

bool bool_or(const json& j, const std::string& key, const std::string& path, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) fail(join(path, key), "expected true or false");
  return j.at(key).get<bool>();
}

std::vector<double> numbers_at(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(join(path, key), "required array missing");
  const json& v = j.at(key);
  if (!v.is_array()) fail(join(path, key), "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(join(path, key) + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

ExtendedN parse_N(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ExtendedN::infinity();
    fail(path, "expected a number or \"inf\"");
  }
  if (!j.is_number()) fail(path, "expected a number or \"inf\"");
  return ExtendedN::finite(j.get<double>());
}

// Wraps library errors raised while building objects so that they carry the path.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config_error || e.kind() == ErrorKind::range_violation) throw;
    fail(path, e.what());
  }
}

KappaRequest parse_kappa(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::string kind = string_at(j, "kind", path);
  KappaRequest req;
  req.kind = kind;
  if (kind == "constant") {
    require_object(j, path, {"kind", "value"});
    req.profile = KappaProfile::constant(number_at(j, "value", path));
  } else if (kind == "linear") {
    require_object(j, path, {"kind", "base", "slope"});
    req.profile = KappaProfile::linear(number_at(j, "base", path), number_at(j, "slope", path));
  } else if (kind == "trig") {
    require_object(j, path, {"kind", "base", "amp", "freq", "phase"});
    req.profile = KappaProfile::trig(number_at(j, "base", path), number_at(j, "amp", path),
                                     number_or(j, "freq", path, 1.0), number_or(j, "phase", path, 0.0));
  } else if (kind == "sampled") {
    require_object(j, path, {"kind", "s", "values"});
    auto s = numbers_at(j, "s", path);
    auto v = numbers_at(j, "values", path);
    req.profile = at_path(path, [&] { return KappaProfile::sampled(std::move(s), std::move(v)); });
  } else if (kind == "admissible") {
    require_object(j, path, {"kind", "mode", "safety"});
    const std::string mode = j.contains("mode") ? string_at(j, "mode", path) : "full";
    if (mode == "full") req.admissible_mode = HypothesisMode::full;
    else if (mode == "radial") req.admissible_mode = HypothesisMode::radial;
    else fail(join(path, "mode"), "expected \"full\" or \"radial\"");
    req.admissible_safety = number_or(j, "safety", path, 1e-6);
    if (!(req.admissible_safety >= 0.0 && req.admissible_safety < 1.0)) {
      fail(join(path, "safety"), "expected a value in [0, 1)");
    }
  } else {
    fail(join(path, "kind"), "unknown kappa kind '" + kind + "'");
  }
  return req;
}

std::optional<TailCertificate> parse_certificate(const json& j, const std::string& path) {
  require_object(j, path, {"kind", "t0", "c0", "p"});
  const std::string kind = string_at(j, "kind", path);
  const auto k = tail_kind_from_string(kind);
  if (!k || *k == TailKind::periodic) fail(join(path, "kind"), "unknown certificate kind '" + kind + "'");
  TailCertificate c;
  c.kind = *k;
  c.t0 = number_or(j, "t0", path, 1.0);
  c.c0 = number_or(j, "c0", path, 0.0);
  c.p = number_or(j, "p", path, 0.0);
  c.source = "config";
  return c;
}

void set_tolerance(Tolerances& tol, const std::string& name, const json& v, const std::string& path) {
  auto positive_count = [&]() {
    if (!v.is_number_integer() || v.get<long long>() < 4) fail(path, "expected an integer >= 4");
    return static_cast<std::size_t>(v.get<long long>());
  };
  auto positive_real = [&]() {
    if (!v.is_number() || !(v.get<double>() > 0.0)) fail(path, "expected a positive number");
    return v.get<double>();
  };
  if (name == "check_tol") tol.check_tol = positive_real();
  else if (name == "eq_tol") tol.eq_tol = positive_real();
  else if (name == "probes") tol.probes = positive_count();
  else if (name == "pair_probes") tol.pair_probes = positive_count();
  else if (name == "radii_probes") tol.radii_probes = positive_count();
  else if (name == "exec") {
    if (!v.is_string()) fail(path, "expected \"serial\" or \"parallel\"");
    const std::string e = v.get<std::string>();
    if (e == "serial") tol.exec = Exec::serial;
    else if (e == "parallel") tol.exec = Exec::parallel;
    else fail(path, "expected \"serial\" or \"parallel\"");
  } else {
    fail(path, "unknown tolerance");
  }
}

ordered_json tolerances_json(const Tolerances& t) {
  ordered_json j;
  j["check_tol"] = t.check_tol;
  j["eq_tol"] = t.eq_tol;
  j["probes"] = t.probes;
  j["pair_probes"] = t.pair_probes;
  j["radii_probes"] = t.radii_probes;
  j["exec"] = t.exec == Exec::serial ? "serial" : "parallel";
  return j;
}

const std::set<std::string>& verdict_names() {
  static const std::set<std::string> s{"holds", "violated", "vacuous"};
  return s;
}
const std::set<std::string>& rigidity_names() {
  static const std::set<std::string> s{"classified", "declined", "not_maximal", "vacuous"};
  return s;
}

bool is_rigidity_check(const std::string& name) {
  return name == "max_diameter" || name == "volume_growth";
}

ModelSpec parse_explicit_model(const json& j, const std::string& path, const EpsParams& params,
                               ordered_json& echo) {
  require_object(j, path, {"phi", "weight", "t_max", "far_end", "killing_tangential", "cp"});
  if (!j.contains("phi")) fail(join(path, "phi"), "required object missing");
  RadialFunction phi = parse_radial_function(j.at("phi"), join(path, "phi"), FunctionRole::warping);

  Weight weight;
  if (j.contains("weight")) {
    const json& w = j.at("weight");
    const std::string wp = join(path, "weight");
    if (!w.is_object()) fail(wp, "expected an object");
    const std::string kind = string_at(w, "kind", wp);
    if (kind == "zero") {
      require_object(w, wp, {"kind"});
    } else if (kind == "gradient") {
      require_object(w, wp, {"kind", "f"});
      if (!w.contains("f")) fail(join(wp, "f"), "required object missing");
      weight = Weight::gradient(parse_radial_function(w.at("f"), join(wp, "f"), FunctionRole::density));
    } else if (kind == "radial_field") {
      require_object(w, wp, {"kind", "a"});
      if (!w.contains("a")) fail(join(wp, "a"), "required object missing");
      weight = Weight::radial_field(parse_radial_function(w.at("a"), join(wp, "a"), FunctionRole::field));
    } else {
      fail(join(wp, "kind"), "expected zero, gradient or radial_field");
    }
  }

  const bool closed_family = phi.family() == "sphere" || phi.family() == "perturbed-sphere";
  FarEnd end = closed_family ? FarEnd::two_pole : FarEnd::truncated;
  if (j.contains("far_end")) {
    const std::string e = string_at(j, "far_end", path);
    if (e == "truncated") end = FarEnd::truncated;
    else if (e == "two_pole") end = FarEnd::two_pole;
    else if (e == "singular") end = FarEnd::singular;
    else fail(join(path, "far_end"), "expected truncated, two_pole or singular");
  }
  double t_max = 0.0;
  if (j.contains("t_max")) {
    t_max = number_at(j, "t_max", path);
  } else if (closed_family) {
    t_max = std::numbers::pi * phi.param("R");
  } else {
    fail(join(path, "t_max"), "required for this warping family");
  }

  ModelSpec spec{phi, weight, params, t_max, end, bool_or(j, "killing_tangential", path, false), std::nullopt};
  if (j.contains("cp")) {
    const json& cp = j.at("cp");
    if (cp.is_string() && cp.get<std::string>() == "gradient") spec.cp = GradientCp{};
    else if (cp.is_number() && cp.get<double>() > 0.0) spec.cp = FreeCp{cp.get<double>()};
    else fail(join(path, "cp"), "expected \"gradient\" or a positive number");
  }

  echo = j;
  echo["t_max"] = t_max;
  echo["far_end"] = to_string(end);
  echo["killing_tangential"] = spec.killing_tangential;
  return spec;
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "hypothesis_radial", "hypothesis_full", "riccati",       "laplacian",
      "cut_value",         "diameter",        "bounded_density", "volume_element",
      "bishop_gromov",     "max_diameter",    "volume_growth", "compactness"};
  return names;
}

RadialFunction parse_radial_function(const json& j, const std::string& path, FunctionRole role) {
  if (!j.is_object()) fail(path, "expected an object");
  const std::string fam = string_at(j, "family", path);
  return at_path(path, [&]() -> RadialFunction {
    if (fam == "sampled") {
      require_object(j, path, {"family", "t", "values", "slope_begin", "slope_end"});
      auto t = numbers_at(j, "t", path);
      auto v = numbers_at(j, "values", path);
      if (t.size() != v.size() || t.size() < 4) fail(path, "t and values need at least 4 matching entries");
      return RadialFunction::sampled(std::move(t), std::move(v), number_at(j, "slope_begin", path),
                                     number_at(j, "slope_end", path));
    }
    switch (role) {
      case FunctionRole::warping:
        if (fam == "sphere") {
          require_object(j, path, {"family", "R"});
          return families::sphere(number_or(j, "R", path, 1.0));
        }
        if (fam == "euclidean") {
          require_object(j, path, {"family"});
          return families::euclidean();
        }
        if (fam == "hyperbolic") {
          require_object(j, path, {"family", "R"});
          return families::hyperbolic(number_or(j, "R", path, 1.0));
        }
        if (fam == "perturbed_sphere") {
          require_object(j, path, {"family", "R", "eta"});
          return families::perturbed_sphere(number_or(j, "R", path, 1.0), number_at(j, "eta", path));
        }
        break;
      case FunctionRole::density:
        if (fam == "zero") {
          require_object(j, path, {"family"});
          return families::zero_density();
        }
        if (fam == "constant") {
          require_object(j, path, {"family", "value"});
          return families::constant_density(number_at(j, "value", path));
        }
        if (fam == "linear") {
          require_object(j, path, {"family", "slope"});
          return families::linear_density(number_at(j, "slope", path));
        }
        if (fam == "quadratic") {
          require_object(j, path, {"family", "alpha"});
          return families::quadratic_density(number_at(j, "alpha", path));
        }
        if (fam == "log1p") {
          require_object(j, path, {"family", "alpha"});
          return families::log1p_density(number_at(j, "alpha", path));
        }
        if (fam == "sin2") {
          require_object(j, path, {"family", "amp", "freq"});
          return families::sin2_density(number_at(j, "amp", path), number_or(j, "freq", path, 1.0));
        }
        break;
      case FunctionRole::field:
        if (fam == "zero") {
          require_object(j, path, {"family"});
          return families::zero_density();
        }
        if (fam == "sin") {
          require_object(j, path, {"family", "amp"});
          return families::sin_field(number_at(j, "amp", path));
        }
        if (fam == "linear") {
          require_object(j, path, {"family", "alpha"});
          return families::linear_field(number_at(j, "alpha", path));
        }
        break;
    }
    fail(join(path, "family"), "unknown family '" + fam + "'");
  });
}

RunConfig parse_config(const json& j) {
  require_object(j, "", {"name", "params", "model", "kappa", "checks", "delta", "radii", "tolerances",
                         "expect", "certificates", "outputs"});
  RunConfig cfg;
  ordered_json& echo = cfg.resolved;

  cfg.name = j.contains("name") ? string_at(j, "name", "") : "unnamed";
  echo["name"] = cfg.name;

  if (!j.contains("params")) fail("params", "required object missing");
  const json& p = j.at("params");
  require_object(p, "params", {"n", "N", "eps"});
  if (!p.contains("n") || !p.at("n").is_number_integer()) fail("params.n", "expected an integer");
  if (!p.contains("N")) fail("params.N", "required");
  const int n = p.at("n").get<int>();
  const ExtendedN N = parse_N(p.at("N"), "params.N");
  cfg.params = validate_range(n, N, number_or(p, "eps", "params", 0.0));
  echo["params"] = {{"n", n},
                    {"N", N.is_infinite() ? ordered_json("inf") : ordered_json(N.value())},
                    {"eps", cfg.params.eps},
                    {"c", cfg.params.c}};

  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) fail("tolerances", "expected an object");
    for (const auto& [key, v] : t.items()) set_tolerance(cfg.tol, key, v, join("tolerances", key));
  }
  echo["tolerances"] = tolerances_json(cfg.tol);

  if (!j.contains("kappa")) fail("kappa", "required object missing");
  cfg.kappa = parse_kappa(j.at("kappa"), "kappa");
  echo["kappa"] = j.at("kappa");

  if (j.contains("delta")) {
    cfg.delta = number_at(j, "delta", "");
    if (!(*cfg.delta >= 0.0)) fail("delta", "expected delta >= 0");
  }

  if (!j.contains("model")) fail("model", "required object missing");
  const json& m = j.at("model");
  if (!m.is_object()) fail("model", "expected an object");
  if (m.contains("construct")) {
    const std::string what = string_at(m, "construct", "model");
    if (what == "equality") {
      require_object(m, "model", {"construct", "case", "f", "f_in_s", "cp", "killing_tangential", "t_max"});
      cfg.source = ModelSource::equality;
      EqualityBuild b;
      b.kind = case_for(cfg.params);
      if (m.contains("case")) {
        const std::string c = string_at(m, "case", "model");
        if (c != to_string(b.kind)) fail("model.case", "the parameters select case " + std::string(to_string(b.kind)));
      }
      if (m.contains("f")) b.f = parse_radial_function(m.at("f"), "model.f", FunctionRole::density);
      b.f_in_s = bool_or(m, "f_in_s", "model", false);
      b.cp = number_or(m, "cp", "model", 1.0);
      b.killing_tangential = bool_or(m, "killing_tangential", "model", false);
      b.t_max = number_or(m, "t_max", "model", 10.0);
      cfg.equality = b;
      echo["model"] = m;
      echo["model"]["case"] = to_string(b.kind);
    } else if (what == "bounded_density") {
      require_object(m, "model", {"construct"});
      cfg.source = ModelSource::bounded_density;
      if (!cfg.delta) fail("delta", "required by the bounded_density construction");
      echo["model"] = m;
    } else {
      fail("model.construct", "expected equality or bounded_density");
    }
  } else {
    ordered_json model_echo;
    cfg.model = parse_explicit_model(m, "model", cfg.params, model_echo);
    echo["model"] = model_echo;
  }
  if (cfg.source != ModelSource::explicit_model && cfg.kappa.kind == "admissible") {
    fail("kappa.kind", "constructed models need an explicit kappa");
  }

  if (j.contains("radii")) {
    cfg.radii = numbers_at(j, "radii", "");
    for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
      if (!(cfg.radii[i] > 0.0)) fail("radii[" + std::to_string(i) + "]", "expected a positive radius");
    }
  }
  echo["radii"] = cfg.radii;
  if (cfg.delta) echo["delta"] = *cfg.delta;

  const json checks = j.contains("checks") ? j.at("checks") : json("all");
  if (checks.is_string() && checks.get<std::string>() == "all") {
    for (const auto& c : known_checks()) {
      if (c == "bounded_density" && !cfg.delta) continue;
      cfg.checks.push_back(c);
    }
  } else if (checks.is_array()) {
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const std::string pth = "checks[" + std::to_string(i) + "]";
      if (!checks[i].is_string()) fail(pth, "expected a check name");
      const std::string c = checks[i].get<std::string>();
      if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end()) {
        fail(pth, "unknown check '" + c + "'");
      }
      if (c == "bounded_density" && !cfg.delta) fail(pth, "bounded_density needs delta");
      if (std::find(cfg.checks.begin(), cfg.checks.end(), c) == cfg.checks.end()) cfg.checks.push_back(c);
    }
  } else {
    fail("checks", "expected \"all\" or an array of check names");
  }
  echo["checks"] = cfg.checks;

  if (j.contains("expect")) {
    const json& e = j.at("expect");
    if (!e.is_object()) fail("expect", "expected an object");
    for (const auto& [key, v] : e.items()) {
      const std::string pth = join("expect", key);
      if (std::find(cfg.checks.begin(), cfg.checks.end(), key) == cfg.checks.end()) {
        fail(pth, "not among the requested checks");
      }
      if (!v.is_string()) fail(pth, "expected a status string");
      const std::string s = v.get<std::string>();
      const bool ok = key == "compactness" ? (s == "compact_predicted" || s == "inconclusive")
                      : is_rigidity_check(key) ? rigidity_names().count(s) > 0
                                               : verdict_names().count(s) > 0;
      if (!ok) fail(pth, "unexpected status '" + s + "'");
      cfg.expect[key] = s;
    }
  }
  echo["expect"] = cfg.expect;

  if (j.contains("certificates")) {
    const json& c = j.at("certificates");
    require_object(c, "certificates", {"eps_complete", "ambrose"});
    if (c.contains("eps_complete")) cfg.certificates.eps_complete = parse_certificate(c.at("eps_complete"), "certificates.eps_complete");
    if (c.contains("ambrose")) cfg.certificates.ambrose = parse_certificate(c.at("ambrose"), "certificates.ambrose");
    echo["certificates"] = c;
  }

  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    require_object(o, "outputs", {"report", "csv_dir"});
    if (o.contains("report")) cfg.report_path = string_at(o, "report", "outputs");
    if (o.contains("csv_dir")) cfg.csv_dir = string_at(o, "csv_dir", "outputs");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config_error, "cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::config_error, path + ": " + e.what());
  }
  return parse_config(j);
}

void apply_tolerance_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorKind::config_error, "--tol expects NAME=VALUE, got '" + assignment + "'");
  }
  const std::string name = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  json v;
  if (name == "exec") {
    v = value;
  } else {
    try {
      v = json::parse(value);
    } catch (const json::parse_error&) {
      throw Error(ErrorKind::config_error, "--tol " + name + ": '" + value + "' is not a number");
    }
  }
  set_tolerance(cfg.tol, name, v, "--tol " + name);
  cfg.resolved["tolerances"] = tolerances_json(cfg.tol);
}

namespace {

std::vector<double> split_numbers(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = std::min(s.find(',', pos), s.size());
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + next, x);
    if (ec != std::errc{} || ptr != s.data() + next) {
      throw Error(ErrorKind::config_error, what + ": cannot read '" + s.substr(pos, next - pos) + "'");
    }
    out.push_back(x);
    pos = next + 1;
  }
  return out;
}

}  // namespace

KappaProfile parse_kappa_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "sampled") {
    std::ifstream in(rest);
    if (!in) throw Error(ErrorKind::config_error, "cannot open kappa table '" + rest + "'");
    std::vector<double> s, v;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0]))) continue;
      const auto row = split_numbers(line, "kappa table");
      if (row.size() != 2) throw Error(ErrorKind::config_error, "kappa table rows need two columns");
      s.push_back(row[0]);
      v.push_back(row[1]);
    }
    return KappaProfile::sampled(std::move(s), std::move(v));
  }
  const auto x = split_numbers(rest, "kappa " + kind);
  if (kind == "constant" && x.size() == 1) return KappaProfile::constant(x[0]);
  if (kind == "linear" && x.size() == 2) return KappaProfile::linear(x[0], x[1]);
  if (kind == "trig" && x.size() == 4) return KappaProfile::trig(x[0], x[1], x[2], x[3]);
  throw Error(ErrorKind::config_error, "unrecognised kappa spec '" + spec + "'");
}

}  // namespace wrc
