// Acceptance run: one [PASS]/[FAIL] line per criterion, non-zero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "wrc/compactness.hpp"
#include "wrc/config.hpp"
#include "wrc/report.hpp"
#include "wrc/rigidity.hpp"

using namespace wrc;
constexpr double pi = std::numbers::pi;

namespace {

int failures = 0;

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("[%s] %s %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  if (!ok) ++failures;
}

void run(const char* id, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  report(id, ok, detail);
}

std::string f(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

double max_abs_g(const Scenario& sc) {
  double g = 0.0;
  for (double y : margin_g(sc).y) g = std::max(g, std::abs(y));
  return g;
}

double num(const nlohmann::ordered_json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  return s == "inf" ? INFINITY : s == "-inf" ? -INFINITY : NAN;
}

std::vector<std::filesystem::path> corpus_files(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

bool ac1(std::string& d) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto one = solve_model(KappaProfile::constant(1.0), 0.5, 4.0);
  const auto zero = solve_model(KappaProfile::constant(0.0), 0.5, 4.0);
  const auto neg = solve_model(KappaProfile::constant(-1.0), 0.5, 4.0);
  double err = 0.0;
  for (int i = 0; i <= 3000; ++i) {
    const double s = 1e-3 * i;
    err = std::max({err, std::abs(one.s_kappa(s) - std::sin(s)), std::abs(zero.s_kappa(s) - s),
                    std::abs(neg.s_kappa(s) - std::sinh(s))});
  }
  const double cerr = std::abs(one.C_kappa() - pi);
  const double t = elapsed(t0);
  d = "max err " + f(err) + ", |C_1 - pi| " + f(cerr) + ", " + f(t) + " s";
  return err < 1e-9 && cerr < 1e-9 && std::isinf(zero.C_kappa()) && std::isinf(neg.C_kappa()) && t < 1.0;
}

bool ac2(std::string& d) {
  const auto t0 = std::chrono::steady_clock::now();
  struct P {
    double N, eps;
  };
  // eps must vanish for the round sphere to attain equality unless N = n
  const std::vector<P> grid{{INFINITY, 0}, {5, 0}, {10, 0}, {1, 0}, {0, 0}, {-2, 0},
                            {3, 0},        {3, 0.3}, {3, -0.3}, {3, 1}, {3, -1}, {3, 2}};
  double hyp = 0.0, g = 0.0, tau = 0.0, bg = 0.0;
  bool locus = true;
  for (const auto& p : grid) {
    const auto N = std::isinf(p.N) ? ExtendedN::infinity() : ExtendedN::finite(p.N);
    const WeightedModel m({families::sphere(1.0), Weight::zero(), validate_range(3, N, p.eps), pi, FarEnd::two_pole});
    const Scenario sc(m, KappaProfile::constant(1.0));
    hyp = std::max({hyp, sc.hypothesis_radial().max_abs_slack, sc.hypothesis_full()->max_abs_slack});
    g = std::max(g, max_abs_g(sc));
    locus = locus && check_laplacian(sc).equality_everywhere();
    tau = std::max(tau, std::abs(check_cut_value(sc).values.at("tau_V") - pi));
    const auto r = check_bishop_gromov(sc, {pi / 4, pi / 2, pi});
    for (double x : {pi / 4, pi / 2, pi}) {
      const double nu = r.values.at("nu(" + format_number(x) + ")");
      const double model = r.values.at("omega_S(" + format_number(x) + ")");
      bg = std::max(bg, std::abs(nu - model) / model);
    }
    bg = std::max(bg, std::abs(r.values.at("nu(" + format_number(pi) + ")") - 2 * pi * pi) / (2 * pi * pi));
  }
  const double t = elapsed(t0);
  d = "12 points: hyp " + f(hyp) + ", |G| " + f(g) + ", tau " + f(tau) + ", BG " + f(bg) + ", " + f(t) + " s";
  return hyp < 1e-8 && g < 1e-7 && locus && tau < 1e-8 && bg < 1e-7 && t < 5.0;
}

bool ac3(std::string& d) {
  EqualityBuild b;
  b.kind = RigidityCaseKind::N_eq_1;
  b.N = ExtendedN::finite(1.0);
  b.f = families::sin2_density(0.2, 1.0);
  b.f_in_s = true;
  const Scenario sc(build_equality_model(b), KappaProfile::constant(1.0));
  const double hyp = std::max(sc.hypothesis_radial().max_abs_slack, sc.hypothesis_full()->max_abs_slack);
  const double g = max_abs_g(sc);
  const auto r = check_max_diameter(sc);
  const bool n1 = r.status == RigidityStatus::classified && r.rigidity_case &&
                  r.rigidity_case->kind == RigidityCaseKind::N_eq_1;
  const double law = r.values.count("law_deviation") ? r.values.at("law_deviation") : INFINITY;
  d = "hyp " + f(hyp) + ", |G| " + f(g) + ", " + to_string(r.status) + ", law " + f(law);
  return hyp < 1e-6 && g < 1e-7 && n1 && law < 1e-7;
}

bool ac4(const std::string& dir, std::string& d) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto files = corpus_files(dir);
  int violated = 0, unverified = 0;
  for (const auto& p : files) {
    const auto cfg = load_config(p.string());
    const auto out = run_checks(cfg);
    const auto& checks = out.report["canonical"]["checks"];
    const bool radial = checks.contains("hypothesis_radial") && checks["hypothesis_radial"]["verdict"] == "holds";
    const bool full = checks.contains("hypothesis_full") && checks["hypothesis_full"]["verdict"] == "holds";
    if (!radial && !full) {
      ++unverified;
      std::printf("  hypothesis not verified: %s\n", p.filename().string().c_str());
    }
    for (const auto& [name, c] : checks.items()) {
      if (c["verdict"] == "violated") {
        ++violated;
        std::printf("  violated: %s %s\n", p.filename().string().c_str(), name.c_str());
      }
    }
  }
  const double t = elapsed(t0);
  d = std::to_string(files.size()) + " models, " + std::to_string(violated) + " violated, " +
      std::to_string(unverified) + " unverified, " + f(t) + " s";
  return files.size() >= 10 && violated == 0 && unverified == 0 && t < 60.0;
}

bool ac5(std::string& d) {
  const WeightedModel m({families::perturbed_sphere(1.0, 1e-3), Weight::zero(),
                         validate_range(3, ExtendedN::infinity(), 0.0), pi, FarEnd::two_pole});
  const Scenario sc(m, KappaProfile::constant(max_admissible_constant_kappa(m, HypothesisMode::full)));
  bool holds = sc.hypothesis_holds();
  for (const auto& r : {check_riccati(sc), check_laplacian(sc), check_cut_value(sc), check_diameter(sc),
                        check_volume_element(sc), check_bishop_gromov(sc, {pi / 2})}) {
    holds = holds && r.verdict == Verdict::holds;
  }
  const double g = max_abs_g(sc);
  const auto r = check_max_diameter(sc);
  d = "verdicts " + std::string(holds ? "hold" : "not all hold") + ", max |G| " + f(g) + ", rigidity " +
      to_string(r.status);
  return holds && g > 1e-5 && r.status != RigidityStatus::classified;
}

bool ac6(std::string& d) {
  const double delta = std::log(2.0) / 2;
  const auto m = build_bounded_density_model(3, ExtendedN::finite(5), 0.0, KappaProfile::constant(1.0), delta);
  const Scenario sc(m, KappaProfile::constant(1.0));
  const auto dia = check_diameter(sc, delta);
  const double bound = dia.values.at("bounded_density_bound");
  const double sup = dia.values.at("sup_d_p");
  const auto r = check_max_diameter(sc, delta);
  const bool cls = r.bounded_density_status && *r.bounded_density_status == RigidityStatus::classified;
  d = "|bound - 2pi| " + f(std::abs(bound - 2 * pi)) + ", |diam - 2pi| " + f(std::abs(sup - 2 * pi)) +
      ", bounded-density rigidity " + (r.bounded_density_status ? to_string(*r.bounded_density_status) : "absent");
  return std::abs(bound - 2 * pi) < 1e-8 && std::abs(sup - 2 * pi) < 1e-8 && cls &&
         check_bounded_density(sc, delta).verdict == Verdict::holds;
}

bool ac7(std::string& d) {
  double worst = 0.0;
  for (int n : {2, 3, 5, 8}) {
    const double t0 = 0.5;
    const auto r = riccati_blowup(n - 1.0, 1.0 / (n - 1), (n - 1) / std::tan(t0), t0, 10.0);
    worst = std::max(worst, r.status == BlowupStatus::blowup ? std::abs(r.R - pi) / pi : INFINITY);
  }
  const WeightedModel flat({families::euclidean(), Weight::zero(), validate_range(3, ExtendedN::infinity(), 0.0),
                            20.0, FarEnd::truncated});
  const auto e = riccati_blowup(flat, 2.0, 1.0);
  d = "max rel err " + f(worst) + ", euclidean " + to_string(e.status);
  return worst < 1e-6 && e.status == BlowupStatus::none_within_domain;
}

bool ac8(const std::string& dir, std::string& d) {
  double worst = INFINITY;
  int models = 0;
  for (const auto& p : corpus_files(dir)) {
    auto cfg = load_config(p.string());
    cfg.checks = {"hypothesis_radial", "bishop_gromov"};
    cfg.tol.radii_probes = 50;
    cfg.expect.clear();
    const auto out = run_checks(cfg);
    const auto& checks = out.report["canonical"]["checks"];
    if (checks["hypothesis_radial"]["verdict"] != "holds") continue;
    ++models;
    worst = std::min(worst, num(checks["bishop_gromov"]["values"]["monotone_min_slack"]));
  }
  d = std::to_string(models) + " models, min slack " + f(worst);
  return models >= 10 && worst >= -1e-7;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string corpus = argc > 1 ? argv[1] : "configs/corpus";
  run("AC1", ac1);
  run("AC2", ac2);
  run("AC3", ac3);
  run("AC4", [&](std::string& d) { return ac4(corpus, d); });
  run("AC5", ac5);
  run("AC6", ac6);
  run("AC7", ac7);
  run("AC8", [&](std::string& d) { return ac8(corpus, d); });
  return failures == 0 ? 0 : 1;
}
