#include "wrc/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "wrc/error.hpp"
#include "wrc/numerics.hpp"

namespace wrc {

using nlohmann::ordered_json;

namespace {

// Non-finite values are spelled out; JSON has no literal for them.
ordered_json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

ordered_json values_json(const std::map<std::string, double>& values) {
  ordered_json j = ordered_json::object();
  for (const auto& [k, v] : values) j[k] = num(v);
  return j;
}

ordered_json certificate_json(const std::optional<TailCertificate>& c) {
  if (!c) return nullptr;
  return {{"kind", to_string(c->kind)}, {"t0", num(c->t0)}, {"c0", num(c->c0)}, {"p", num(c->p)},
          {"source", c->source}};
}

std::string file_stem(const std::string& s) {
  std::string out;
  for (char ch : s) out += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

WeightedModel build_model(const RunConfig& cfg, const std::optional<KappaProfile>& kappa) {
  switch (cfg.source) {
    case ModelSource::explicit_model: return WeightedModel(*cfg.model);
    case ModelSource::equality: {
      EqualityBuild b = *cfg.equality;
      b.n = cfg.params.n;
      b.N = cfg.params.N;
      b.eps = cfg.params.eps;
      b.kappa = *kappa;
      return build_equality_model(b);
    }
    case ModelSource::bounded_density:
      return build_bounded_density_model(cfg.params.n, cfg.params.N, cfg.params.eps, *kappa, *cfg.delta);
  }
  throw Error(ErrorKind::config_error, "unknown model source");
}

ordered_json model_json(const WeightedModel& m) {
  ordered_json j;
  j["warping"] = m.phi().family();
  j["weight"] = to_string(m.weight_kind());
  j["far_end"] = to_string(m.far_end());
  j["t_max"] = num(m.t_max());
  j["c_p"] = num(m.c_p());
  j["tau_V"] = num(m.tau_v());
  j["killing_tangential"] = m.killing_tangential();
  j["warnings"] = m.warnings();
  return j;
}

}  // namespace

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ordered_json to_json(const CheckResult& r) {
  ordered_json j;
  j["verdict"] = to_string(r.verdict);
  j["hypothesis_verified"] = r.hypothesis_verified;
  j["probe_variable"] = r.probe_variable;
  j["probes"] = r.probes.size();
  j["min_slack"] = num(r.min_slack);
  j["max_abs_slack"] = num(r.max_abs_slack);
  j["equality_locus_size"] = r.equality_locus.size();
  j["equality_everywhere"] = r.equality_everywhere();
  if (!r.equality_locus.empty()) {
    j["equality_locus_range"] = {num(r.equality_locus.front()), num(r.equality_locus.back())};
  }
  j["values"] = values_json(r.values);
  j["notes"] = r.notes;
  return j;
}

ordered_json to_json(const RigidityReport& r) {
  ordered_json j;
  j["status"] = to_string(r.status);
  if (r.rigidity_case) {
    j["case"] = {{"kind", to_string(r.rigidity_case->kind)},
                 {"eps", num(r.rigidity_case->eps)},
                 {"weight_structure", r.rigidity_case->weight_structure},
                 {"warping_law", r.rigidity_case->warping_law}};
  } else {
    j["case"] = nullptr;
  }
  if (r.bounded_density_status) j["bounded_density_status"] = to_string(*r.bounded_density_status);
  j["values"] = values_json(r.values);
  j["notes"] = r.notes;
  if (!r.check.probes.empty()) j["check"] = to_json(r.check);
  return j;
}

ordered_json to_json(const CompactnessReport& r) {
  ordered_json j;
  const auto& e = r.eps_complete;
  ordered_json ext = ordered_json::array();
  for (const auto& [t, v] : e.extension) ext.push_back({num(t), num(v)});
  j["eps_complete"] = {{"status", to_string(e.status)},
                       {"partial", num(e.partial)},
                       {"t_max", num(e.t_max)},
                       {"certificate", certificate_json(e.certificate)},
                       {"extension_lower_bounds", ext},
                       {"notes", e.notes}};
  const auto& a = r.ambrose;
  j["ambrose_integral"] = {{"status", to_string(a.status)},
                           {"partial", num(a.partial)},
                           {"t_max", num(a.t_max)},
                           {"certificate", certificate_json(a.certificate)},
                           {"rate", a.rate},
                           {"tail_bound", num(a.tail_bound)},
                           {"notes", a.notes}};
  const auto& b = r.blowup;
  ordered_json bj;
  bj["status"] = to_string(b.status);
  bj["t_start"] = num(b.t_start);
  bj["lambda_start"] = num(b.lambda_start);
  if (b.status == BlowupStatus::blowup) {
    bj["R"] = num(b.R);
    bj["direction"] = b.to_minus_infinity ? "-inf" : "+inf";
  } else {
    bj["t_end"] = num(b.t_end);
    bj["lambda_end"] = num(b.lambda_end);
  }
  j["blowup"] = bj;
  j["verdict"] = to_string(r.verdict);
  j["notes"] = r.notes;
  return j;
}

std::string check_csv(const CheckResult& r) {
  std::string out = r.probe_variable + ",slack,equality\n";
  std::size_t li = 0;
  for (std::size_t i = 0; i < r.probes.size(); ++i) {
    const bool eq = li < r.equality_locus.size() && r.equality_locus[li] == r.probes[i];
    if (eq) ++li;
    out += format_number(r.probes[i]) + "," + format_number(r.slack[i]) + "," + (eq ? "1" : "0") + "\n";
  }
  return out;
}

std::string curve_csv(const Curve& c) {
  std::string out = c.x_name + "," + c.name + "\n";
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    out += format_number(c.x[i]) + "," + format_number(c.y[i]) + "\n";
  }
  return out;
}

std::string model_functions_csv(const KappaProfile& kappa, double c, double s_max, double step) {
  if (!(step > 0.0) || !(s_max >= 0.0)) throw Error(ErrorKind::domain_error, "grid needs step > 0 and max >= 0");
  if (!(c > 0.0)) throw Error(ErrorKind::non_positive, "c must be positive");
  const auto count = static_cast<std::size_t>(std::floor(s_max / step + 1e-9)) + 1;
  const double top = std::max(static_cast<double>(count - 1) * step, s_max);
  const ModelFunctions mf = solve_model(kappa, c, std::max(top, step));
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::string out = "s,s_kappa,ds_kappa,cot_kappa,H_kappa,S_kappa\n";
  for (std::size_t i = 0; i < count; ++i) {
    double s = static_cast<double>(i) * step;
    if (i + 1 == count && std::abs(s - s_max) < 1e-9 * step) s = s_max;
    const double volume = model_volume(mf, s);
    double cot = nan, H = nan;
    if (s > 0.0 && s < mf.C_kappa()) {
      const auto d = eval_derived(mf, s);
      cot = d.cot_kappa;
      H = d.H_kappa;
    }
    out += format_number(s) + "," + format_number(mf.s_kappa(s)) + "," + format_number(mf.ds_kappa(s)) +
           "," + format_number(cot) + "," + format_number(H) + "," + format_number(volume) + "\n";
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::config_error, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::config_error, "write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorKind::config_error, "cannot rename onto '" + path + "': " + ec.message());
}

RunOutcome run_checks(const RunConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  RunOutcome out;
  ordered_json canonical;
  ordered_json timing;
  canonical["tool"] = "wrc";
  canonical["version"] = kVersion;
  canonical["config"] = cfg.resolved;

  std::optional<KappaProfile> kappa = cfg.kappa.profile;
  const WeightedModel model = build_model(cfg, kappa);
  for (const auto& w : model.warnings()) out.warnings.push_back("model: " + w);

  ordered_json kj;
  kj["kind"] = cfg.kappa.kind;
  if (!kappa) {
    const double k = max_admissible_constant_kappa(model, cfg.kappa.admissible_mode, cfg.kappa.admissible_safety);
    kappa = KappaProfile::constant(k);
    kj["resolved_constant"] = num(k);
  }
  kj["infimum"] = num(kappa->infimum());
  canonical["model"] = model_json(model);

  double hint = 0.0;
  for (double r : cfg.radii) hint = std::max(hint, r);
  const auto t_scn = std::chrono::steady_clock::now();
  const Scenario sc(model, *kappa, cfg.tol, hint);
  timing["scenario_seconds"] = seconds_since(t_scn);
  kj["C_kappa"] = num(sc.mf().C_kappa());
  canonical["kappa"] = kj;

  ordered_json checks = ordered_json::object();
  ordered_json rigidity = ordered_json::object();
  ordered_json compactness = nullptr;
  ordered_json check_times = ordered_json::object();
  std::map<std::string, std::string> actual;
  std::map<std::string, std::string> reason;

  auto record_check = [&](const std::string& name, const CheckResult& r) {
    checks[name] = to_json(r);
    actual[name] = to_string(r.verdict);
    if (!r.notes.empty()) reason[name] = r.notes.front();
    if (r.verdict == Verdict::violated) out.failures.push_back(name + ": violated (min slack " + format_number(r.min_slack) + ")");
    out.csv[file_stem(name) + ".csv"] = check_csv(r);
    for (const auto& c : r.curves) out.csv[file_stem(name) + "_" + file_stem(c.name) + ".csv"] = curve_csv(c);
  };

  for (const std::string& name : cfg.checks) {
    const auto t0 = std::chrono::steady_clock::now();
    if (name == "hypothesis_radial") {
      record_check(name, sc.hypothesis_radial());
    } else if (name == "hypothesis_full") {
      if (sc.hypothesis_full()) {
        record_check(name, *sc.hypothesis_full());
      } else {
        CheckResult r;
        r.name = name;
        r.verdict = Verdict::vacuous;
        r.notes.push_back("tangential curvature unavailable: Killing part flagged");
        record_check(name, r);
      }
    } else if (name == "riccati") {
      record_check(name, check_riccati(sc));
    } else if (name == "laplacian") {
      record_check(name, check_laplacian(sc));
    } else if (name == "cut_value") {
      record_check(name, check_cut_value(sc));
    } else if (name == "diameter") {
      record_check(name, check_diameter(sc, cfg.delta));
    } else if (name == "bounded_density") {
      record_check(name, check_bounded_density(sc, *cfg.delta));
    } else if (name == "volume_element") {
      record_check(name, check_volume_element(sc));
    } else if (name == "bishop_gromov") {
      record_check(name, check_bishop_gromov(sc, cfg.radii));
    } else if (name == "max_diameter" || name == "volume_growth") {
      const RigidityReport r = name == "max_diameter" ? check_max_diameter(sc, cfg.delta)
                                                      : check_volume_growth_rigidity(sc, cfg.radii);
      rigidity[name] = to_json(r);
      actual[name] = to_string(r.status);
      if (!r.notes.empty()) reason[name] = r.notes.front();
      if (!r.check.probes.empty()) {
        for (const auto& c : r.check.curves) out.csv[name + "_" + file_stem(c.name) + ".csv"] = curve_csv(c);
      }
    } else if (name == "compactness") {
      if (model.params().c_is_dimensional()) {
        const CompactnessReport r = analyze_compactness(model, cfg.certificates);
        compactness = to_json(r);
        actual[name] = to_string(r.verdict);
      } else {
        compactness = {{"verdict", "inconclusive"}, {"notes", {"c is not positive; the comparison ODE degenerates"}}};
        actual[name] = "inconclusive";
      }
    }
    check_times[name] = seconds_since(t0);
  }

  ordered_json expectations = ordered_json::object();
  for (const std::string& name : cfg.checks) {
    const auto it = cfg.expect.find(name);
    const std::string& got = actual[name];
    if (it != cfg.expect.end()) {
      const bool met = it->second == got;
      expectations[name] = {{"expected", it->second}, {"actual", got}, {"met", met}};
      if (!met) out.failures.push_back(name + ": expected " + it->second + ", got " + got);
    } else if (got == "vacuous") {
      const auto why = reason.find(name);
      out.warnings.push_back(name + ": vacuous without a declared expectation" +
                             (why != reason.end() ? " (" + why->second + ")" : std::string()));
    }
  }

  // a violated verdict that was declared as expected is not a failure
  std::vector<std::string> failures;
  for (const auto& f : out.failures) {
    const std::string name = f.substr(0, f.find(':'));
    const auto it = cfg.expect.find(name);
    if (it != cfg.expect.end() && it->second == "violated" && f.find(": violated") != std::string::npos) continue;
    failures.push_back(f);
  }
  out.failures = std::move(failures);
  out.exit_code = out.failures.empty() ? kExitOk : kExitViolated;

  canonical["checks"] = checks;
  canonical["rigidity"] = rigidity;
  canonical["compactness"] = compactness;
  canonical["expectations"] = expectations;
  canonical["warnings"] = out.warnings;
  canonical["failures"] = out.failures;
  canonical["exit_code"] = out.exit_code;

  timing["checks"] = check_times;
  timing["wall_seconds"] = seconds_since(t_start);
  out.report["canonical"] = canonical;
  out.report["timing"] = timing;
  return out;
}

void write_outputs(const RunOutcome& out, const std::optional<std::string>& report_path,
                   const std::optional<std::string>& csv_dir) {
  if (report_path) write_file_atomic(*report_path, out.report.dump(2) + "\n");
  if (csv_dir) {
    for (const auto& [file, content] : out.csv) {
      write_file_atomic((std::filesystem::path(*csv_dir) / file).string(), content);
    }
  }
}

}  // namespace wrc
