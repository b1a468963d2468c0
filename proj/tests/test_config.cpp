#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "wrc/config.hpp"
#include "wrc/error.hpp"
#include "wrc/report.hpp"

using namespace wrc;
using nlohmann::json;
using doctest::Approx;

namespace {

json base() {
  return json::parse(R"({
    "name": "t",
    "params": {"n": 3, "N": "inf", "eps": 0},
    "model": {"phi": {"family": "sphere", "R": 1}, "weight": {"kind": "zero"}},
    "kappa": {"kind": "constant", "value": 1},
    "checks": ["laplacian", "cut_value"]
  })");
}

std::string message_of(const json& j) {
  try {
    parse_config(j);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::vector<std::vector<double>> rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> out;
  while (std::getline(in, line)) {
    std::vector<double> r;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) r.push_back(cell == "nan" ? NAN : std::stod(cell));
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("defaults are filled in") {
  const auto cfg = parse_config(base());
  REQUIRE(cfg.model);
  CHECK(cfg.model->t_max == Approx(std::numbers::pi));
  CHECK(cfg.model->far_end == FarEnd::two_pole);
  CHECK(cfg.checks.size() == 2);
  CHECK(cfg.tol.probes == 400);
  CHECK(cfg.resolved.contains("tolerances"));
}

TEST_CASE("errors carry the offending path") {
  auto j = base();
  j["model"]["weight"] = json::parse(R"({"kind": "gradient", "f": {"family": "quadratic", "alpah": 1}})");
  CHECK(message_of(j).find("model.weight.f.alpah") != std::string::npos);

  j = base();
  j["params"].erase("n");
  CHECK(message_of(j).find("params.n") != std::string::npos);

  j = base();
  j["checks"] = json::array({"laplacian", "nonsense"});
  CHECK(message_of(j).find("checks") != std::string::npos);

  j = base();
  j["expect"] = json{{"laplacian", "classified"}};
  CHECK(message_of(j).find("expect.laplacian") != std::string::npos);

  j = base();
  j["params"]["eps"] = 10;
  j["params"]["N"] = 5;
  try {
    parse_config(j);
    FAIL("accepted eps = 10");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::range_violation);
  }
}

TEST_CASE("checks all includes bounded_density only with delta") {
  auto j = base();
  j["checks"] = "all";
  const auto plain = parse_config(j);
  CHECK(std::count(plain.checks.begin(), plain.checks.end(), "bounded_density") == 0);
  j["delta"] = 0.1;
  const auto cfg = parse_config(j);
  CHECK(std::count(cfg.checks.begin(), cfg.checks.end(), "bounded_density") == 1);
}

TEST_CASE("tolerance override") {
  auto cfg = parse_config(base());
  apply_tolerance_override(cfg, "check_tol=1e-5");
  CHECK(cfg.tol.check_tol == 1e-5);
  apply_tolerance_override(cfg, "exec=serial");
  CHECK(cfg.tol.exec == Exec::serial);
  CHECK_THROWS_AS(apply_tolerance_override(cfg, "probes=2"), Error);
  CHECK_THROWS_AS(apply_tolerance_override(cfg, "nope=1"), Error);
  CHECK_THROWS_AS(apply_tolerance_override(cfg, "check_tol"), Error);
}

TEST_CASE("kappa specs") {
  CHECK(parse_kappa_spec("constant:1")(2.0) == 1.0);
  CHECK(parse_kappa_spec("linear:1,0.5")(2.0) == Approx(2.0));
  CHECK(parse_kappa_spec("trig:1,0.5,2,0")(0.3) == Approx(1.0 + 0.5 * std::sin(0.6)));
  CHECK_THROWS_AS(parse_kappa_spec("cubic:1"), Error);
  CHECK_THROWS_AS(parse_kappa_spec("constant:x"), Error);

  const auto dir = std::filesystem::temp_directory_path() / "wrc_test_kappa";
  std::filesystem::create_directories(dir);
  const auto file = dir / "k.csv";
  {
    std::ofstream out(file);
    out << "s,kappa\n";
    for (int i = 0; i <= 100; ++i) out << 0.05 * i << "," << 1.0 + 0.2 * std::cos(0.05 * i) << "\n";
  }
  const auto k = parse_kappa_spec("sampled:" + file.string());
  CHECK(k(1.234) == Approx(1.0 + 0.2 * std::cos(1.234)).epsilon(1e-5));
}

TEST_CASE("model function table") {
  const auto flat = rows(model_functions_csv(KappaProfile::constant(0.0), 0.5, 2.0, 0.25));
  REQUIRE(flat.size() == 9);
  for (const auto& r : flat) {
    CHECK(r[1] == Approx(r[0]).epsilon(1e-12));  // s_kappa = s
    CHECK(r[2] == Approx(1.0));
  }
  CHECK(flat.back()[0] == 2.0);

  const auto sph = rows(model_functions_csv(KappaProfile::constant(1.0), 0.5, std::numbers::pi / 2, std::numbers::pi / 20));
  CHECK(sph.back()[0] == std::numbers::pi / 2);
  CHECK(sph.back()[1] == Approx(1.0).epsilon(1e-12));
  CHECK(std::isnan(sph.front()[3]));  // cot at s = 0

  // sampled kappa against the RK4 oracle
  std::vector<double> s, v;
  for (int i = 0; i <= 80; ++i) {
    s.push_back(0.05 * i);
    v.push_back(1.0 - 0.3 * std::sin(s.back()));
  }
  const auto kappa = KappaProfile::sampled(s, v);
  const auto ref = oracle::model_oracle([&](double x) { return kappa(x); }, 4.0);
  for (const auto& r : rows(model_functions_csv(kappa, 0.5, 3.0, 0.5))) CHECK(r[1] == Approx(ref.at(r[0])).epsilon(1e-8));
}

TEST_CASE("run_checks is deterministic and honours expectations") {
  auto j = base();
  j["expect"] = json{{"laplacian", "holds"}};
  const auto cfg = parse_config(j);
  const auto a = run_checks(cfg);
  const auto b = run_checks(cfg);
  CHECK(a.exit_code == kExitOk);
  CHECK(a.report["canonical"].dump() == b.report["canonical"].dump());

  j["expect"] = json{{"laplacian", "violated"}};
  const auto c = run_checks(parse_config(j));
  CHECK(c.exit_code == kExitViolated);
  CHECK_FALSE(c.failures.empty());
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(INFINITY) == "inf");
  CHECK(format_number(-INFINITY) == "-inf");
  CHECK(format_number(NAN) == "nan");
  CHECK(std::stod(format_number(std::numbers::pi)) == std::numbers::pi);
}
