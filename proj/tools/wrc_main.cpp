// wrc: weighted Ricci comparison checks on rotationally symmetric models.
//
//   wrc check --config PATH [--report PATH] [--csv-dir PATH] [--tol NAME=VALUE]...
//   wrc model-fn --kappa SPEC --c VALUE --max S --step S --out PATH

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wrc/config.hpp"
#include "wrc/error.hpp"
#include "wrc/report.hpp"

namespace {

int run_check(const std::string& config_path, std::optional<std::string> report,
              std::optional<std::string> csv_dir, const std::vector<std::string>& tols) {
  wrc::RunConfig cfg = wrc::load_config(config_path);
  for (const auto& t : tols) wrc::apply_tolerance_override(cfg, t);
  if (!report) report = cfg.report_path;
  if (!csv_dir) csv_dir = cfg.csv_dir;

  const wrc::RunOutcome out = wrc::run_checks(cfg);
  wrc::write_outputs(out, report, csv_dir);

  const auto& canonical = out.report["canonical"];
  for (const auto& [name, r] : canonical["checks"].items()) {
    std::printf("%-20s %-9s min_slack=%s\n", name.c_str(), r["verdict"].get<std::string>().c_str(),
                r["min_slack"].dump().c_str());
  }
  for (const auto& [name, r] : canonical["rigidity"].items()) {
    std::printf("%-20s %s\n", name.c_str(), r["status"].get<std::string>().c_str());
  }
  if (!canonical["compactness"].is_null()) {
    std::printf("%-20s %s\n", "compactness", canonical["compactness"]["verdict"].get<std::string>().c_str());
  }
  for (const auto& w : out.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  for (const auto& f : out.failures) std::fprintf(stderr, "FAILED: %s\n", f.c_str());
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of weighted Ricci comparison theorems on rotationally symmetric models"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "run the checks listed in a JSON config");
  std::string config_path;
  std::string report_path, csv_dir;
  std::vector<std::string> tols;
  check->add_option("--config", config_path, "config file")->required();
  check->add_option("--report", report_path, "report JSON path (overrides outputs.report)");
  check->add_option("--csv-dir", csv_dir, "directory for CSV curves (overrides outputs.csv_dir)");
  check->add_option("--tol", tols, "tolerance override NAME=VALUE")->take_all();

  auto* mfn = app.add_subcommand("model-fn", "dump the model functions on a uniform grid");
  std::string kappa_spec, out_path;
  double c = 0.0, s_max = 0.0, step = 0.0;
  mfn->add_option("--kappa", kappa_spec, "constant:V | linear:B,S | trig:B,A,F,P | sampled:FILE")->required();
  mfn->add_option("--c", c, "the constant c")->required();
  mfn->add_option("--max", s_max, "grid end")->required();
  mfn->add_option("--step", step, "grid step")->required();
  mfn->add_option("--out", out_path, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wrc::kExitError;
  }

  try {
    if (*check) {
      return run_check(config_path, report_path.empty() ? std::nullopt : std::optional(report_path),
                       csv_dir.empty() ? std::nullopt : std::optional(csv_dir), tols);
    }
    const auto kappa = wrc::parse_kappa_spec(kappa_spec);
    wrc::write_file_atomic(out_path, wrc::model_functions_csv(kappa, c, s_max, step));
    return wrc::kExitOk;
  } catch (const wrc::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return wrc::kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return wrc::kExitError;
  }
}
