#include "wrc/comparison.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "wrc/error.hpp"
#include "wrc/numerics.hpp"

namespace wrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

CheckResult vacuous(std::string name, std::string why) {
  CheckResult r;
  r.name = std::move(name);
  r.verdict = Verdict::vacuous;
  r.notes.push_back(std::move(why));
  return r;
}

// max over a probe grid of (1 - eps) f - (n - 1) delta
double density_excess(const WeightedModel& m, const std::vector<double>& t, double delta) {
  double worst = -kInf;
  for (double x : t) {
    worst = std::max(worst, (1.0 - m.params().eps) * m.density(x) - (m.n() - 1) * delta);
  }
  return worst;
}

std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::vacuous: return "vacuous";
  }
  return "?";
}

void finalize(CheckResult& r, const Tolerances& tol) {
  r.min_slack = kInf;
  r.max_abs_slack = 0.0;
  r.equality_locus.clear();
  for (std::size_t i = 0; i < r.slack.size(); ++i) {
    r.min_slack = std::min(r.min_slack, r.slack[i]);
    r.max_abs_slack = std::max(r.max_abs_slack, std::abs(r.slack[i]));
    if (std::abs(r.slack[i]) < tol.eq_tol) r.equality_locus.push_back(r.probes[i]);
  }
  if (r.slack.empty()) r.min_slack = 0.0;
  if (!r.hypothesis_verified) {
    r.verdict = Verdict::vacuous;
  } else {
    r.verdict = r.min_slack < -tol.check_tol ? Verdict::violated : Verdict::holds;
  }
}

Scenario::Scenario(WeightedModel model, KappaProfile kappa, Tolerances tol, double radius_hint)
    : model_(std::move(model)), kappa_(std::move(kappa)), tol_(tol) {
  const double fallback = 1.25 * std::max(model_.tau_v(), radius_hint) + 1.0;
  const double dm = std::max(default_domain_max(kappa_, fallback), fallback);
  mf_ = std::make_shared<const ModelFunctions>(solve_model(kappa_, model_.params().c, dm));
  hyp_radial_ = check_hypothesis(*this, HypothesisMode::radial);
  try {
    hyp_full_ = check_hypothesis(*this, HypothesisMode::full);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::unsupported) throw;
    hyp_full_.reset();
  }
}

bool Scenario::tensor_hypothesis_holds() const {
  if (hyp_full_) return hyp_full_->verdict == Verdict::holds;
  return hypothesis_holds();
}

double Scenario::curvature_bound(double t) const {
  const double cf = model_.conformal_factor(t);
  return kappa_(model_.s_v(t)) * cf * cf / model_.params().c;
}

std::vector<double> Scenario::t_probes() const {
  const double T = model_.t_max();
  std::vector<double> t = chebyshev_probes(0.0, T, tol_.probes);
  for (int k = 2; k <= 7; ++k) {
    const double h = T * std::pow(10.0, -k);
    t.push_back(h);
    if (model_.far_end() != FarEnd::truncated) t.push_back(T - h);
  }
  return sorted_unique(std::move(t));
}

std::vector<double> Scenario::s_probes(double hi, std::size_t count) const {
  std::vector<double> s = chebyshev_probes(0.0, hi, count);
  for (int k = 3; k <= 7; ++k) s.push_back(hi * std::pow(10.0, -k));
  return sorted_unique(std::move(s));
}

CheckResult check_hypothesis(const Scenario& sc, HypothesisMode mode) {
  const auto& m = sc.model();
  CheckResult r;
  r.name = mode == HypothesisMode::radial ? "hypothesis_radial" : "hypothesis_full";
  r.hypothesis_verified = true;
  r.probes = sc.t_probes();
  const std::size_t k = r.probes.size();
  std::vector<double> rad(k), tan(mode == HypothesisMode::full ? k : 0);
  for_each_index(k, sc.tol().exec, [&](std::size_t i) {
    const double t = r.probes[i];
    const double bound = sc.curvature_bound(t);
    rad[i] = m.ric_radial(t) - bound;
    if (mode == HypothesisMode::full) tan[i] = m.ric_tangential(t) - bound;
  });
  r.slack = rad;
  r.curves.push_back({"radial_slack", "t", r.probes, rad});
  if (mode == HypothesisMode::full) {
    for (std::size_t i = 0; i < k; ++i) r.slack[i] = std::min(rad[i], tan[i]);
    r.curves.push_back({"tangential_slack", "t", r.probes, tan});
  }
  if (m.killing_tangential()) {
    r.notes.push_back("Killing tangential part flagged: it does not enter along-ray quantities");
  }
  finalize(r, sc.tol());
  // the hypothesis is itself the statement under test
  if (r.verdict == Verdict::vacuous) r.verdict = Verdict::holds;
  return r;
}

CheckResult check_riccati(const Scenario& sc) {
  const auto& m = sc.model();
  const double k = m.params().conformal_rate();
  const double c = m.params().c;
  const double T = m.t_max();
  CheckResult r;
  r.name = "riccati";
  r.hypothesis_verified = true;  // the inequality is unconditional
  r.probes = sc.t_probes();
  const std::size_t count = r.probes.size();
  std::vector<double> raw(count);
  r.slack.resize(count);
  auto lambda = [&](double t) { return std::exp(k * m.f_vp(t)) * m.laplacian(t); };
  for_each_index(count, sc.tol().exec, [&](std::size_t i) {
    const double t = r.probes[i];
    const double h = 0.25 * std::min(t, T - t);
    const double dlam = ridders_derivative(lambda, t, h);
    const double e = std::exp(k * m.f_vp(t));
    const double lam = e * m.laplacian(t);
    raw[i] = -e * m.ric_radial(t) - c * lam * lam / e - dlam;
    const double ph = m.phi_jet(t).v;
    r.slack[i] = ph * ph * raw[i];
  });
  r.curves.push_back({"raw_slack", "t", r.probes, raw});
  r.notes.push_back("slack scaled by phi^2 to remove the pole singularity; sign unchanged");
  finalize(r, sc.tol());
  return r;
}

Curve margin_g(const Scenario& sc) {
  const auto& m = sc.model();
  const auto& mf = sc.mf();
  const double k = m.params().conformal_rate();
  const double hi = std::min(m.tau_v(), mf.C_kappa());
  Curve g{"G", "s", sc.s_probes(hi, sc.tol().probes), {}};
  g.y.resize(g.x.size());
  for_each_index(g.x.size(), sc.tol().exec, [&](std::size_t i) {
    const double s = g.x[i];
    const double t = m.t_v(s);
    const double fhat = std::exp(k * m.f_vp(t)) * m.laplacian(t) / m.c_p();
    const double sk = mf.s_kappa(s);
    g.y[i] = sk * sk * (fhat - eval_derived(mf, s).H_kappa);
  });
  return g;
}

CheckResult check_laplacian(const Scenario& sc) {
  if (!sc.hypothesis_holds()) return vacuous("laplacian", "curvature hypothesis fails along the ray");
  const auto& m = sc.model();
  const auto& mf = sc.mf();
  const double k = m.params().conformal_rate();
  CheckResult r;
  r.name = "laplacian";
  r.hypothesis_verified = true;
  r.probe_variable = "s";
  Curve g = margin_g(sc);
  r.probes = g.x;
  r.slack.resize(g.y.size());
  std::vector<double> raw(g.y.size());
  for (std::size_t i = 0; i < g.y.size(); ++i) {
    r.slack[i] = -g.y[i];
    const double s = g.x[i];
    const double t = m.t_v(s);
    raw[i] = m.c_p() * eval_derived(mf, s).H_kappa * std::exp(-k * m.f_vp(t)) - m.laplacian(t);
  }
  double max_increase = 0.0;
  for (std::size_t i = 1; i < g.y.size(); ++i) max_increase = std::max(max_increase, g.y[i] - g.y[i - 1]);
  r.values["G_max_increase"] = max_increase;
  r.values["max_abs_G"] = 0.0;
  for (double v : g.y) r.values["max_abs_G"] = std::max(r.values["max_abs_G"], std::abs(v));
  r.curves.push_back(std::move(g));
  r.curves.push_back({"raw_slack", "s", r.probes, raw});
  finalize(r, sc.tol());

  // equality propagates towards the pole: the locus must be a prefix
  std::size_t prefix = 0;
  while (prefix < r.slack.size() && std::abs(r.slack[prefix]) < sc.tol().eq_tol) ++prefix;
  const bool is_prefix = prefix == r.equality_locus.size();
  r.values["locus_is_prefix"] = is_prefix ? 1.0 : 0.0;
  if (!is_prefix) r.notes.push_back("equality locus is not an initial segment of ]0, s_end[");
  if (max_increase > sc.tol().check_tol) {
    r.notes.push_back("margin G increases by " + fmt(max_increase));
    r.verdict = Verdict::violated;
  }
  return r;
}

CheckResult check_cut_value(const Scenario& sc) {
  const auto& mf = sc.mf();
  if (!mf.has_finite_zero()) return vacuous("cut_value", "C_kappa = +inf");
  if (!sc.hypothesis_holds()) return vacuous("cut_value", "curvature hypothesis fails along the ray");
  const auto& m = sc.model();
  CheckResult r;
  r.name = "cut_value";
  r.hypothesis_verified = true;
  r.probe_variable = "s";
  r.probes = {m.tau_v()};
  r.slack = {mf.C_kappa() - m.tau_v()};
  r.values["tau_V"] = m.tau_v();
  r.values["C_kappa"] = mf.C_kappa();
  if (m.truncated()) r.notes.push_back("tau_V of a truncated model is a lower estimate");
  finalize(r, sc.tol());
  return r;
}

CheckResult check_bounded_density(const Scenario& sc, double delta) {
  const std::string name = "bounded_density";
  const auto& m = sc.model();
  if (m.weight_kind() == WeightKind::radial_field) return vacuous(name, "needs a gradient weight");
  if (m.weight_kind() == WeightKind::gradient && m.spec().cp &&
      std::holds_alternative<FreeCp>(*m.spec().cp)) {
    return vacuous(name, "needs c_p in gradient mode");
  }
  if (m.weight_kind() == WeightKind::zero && m.c_p() != 1.0) {
    return vacuous(name, "needs c_p = 1 for a zero weight");
  }
  if (!sc.hypothesis_holds()) return vacuous(name, "curvature hypothesis fails along the ray");
  const auto t = sc.t_probes();
  const double excess = density_excess(m, t, delta);
  if (excess > 1e-12) return vacuous(name, "(1 - eps) f <= (n - 1) delta fails by " + fmt(excess));

  const auto& mf = sc.mf();
  const double e2d = std::exp(2.0 * delta);
  const double k = m.params().conformal_rate();
  const auto kd = sc.kappa().rescaled(delta);
  const ModelFunctions mfd = solve_model(kd, m.params().c, e2d * mf.domain_max());

  CheckResult r;
  r.name = name;
  r.hypothesis_verified = true;
  double dev = 0.0;
  for (double x : linspace(0.0, std::min(mfd.domain_max(), e2d * mf.domain_max()), 401)) {
    dev = std::max(dev, std::abs(mfd.s_kappa(x) - e2d * mf.s_kappa(x / e2d)));
  }
  r.values["scaling_identity_deviation"] = dev;
  r.values["C_kappa_delta"] = mfd.C_kappa();
  r.values["e2delta_C_kappa"] = e2d * mf.C_kappa();
  if (dev > 1e-8 * e2d) r.notes.push_back("s_{kappa e^{-4 delta}} deviates from the scaling identity");

  // H_kappa decreasing on its domain
  const double hi = std::min(mf.C_kappa(), mf.domain_max());
  bool decreasing = true;
  double prev = kInf;
  for (double s : chebyshev_probes(0.0, hi, 400)) {
    const double h = eval_derived(mf, s).H_kappa;
    if (h > prev + 1e-12 * std::max(1.0, std::abs(prev))) decreasing = false;
    prev = h;
  }
  r.values["H_decreasing"] = decreasing ? 1.0 : 0.0;
  if (decreasing) {
    const double t_end = std::min(m.t_max(), mfd.C_kappa());
    for (double x : t) {
      if (x >= t_end) continue;
      const double sd = mfd.s_kappa(x);
      const double bound = e2d * eval_derived(mfd, x).H_kappa * std::exp(-k * m.density(x));
      r.probes.push_back(x);
      r.slack.push_back(sd * sd * (bound - m.laplacian(x)));
    }
    r.curves.push_back({"laplacian_margin", "t", r.probes, r.slack});
  } else {
    r.notes.push_back("H_kappa is not decreasing: Laplacian part skipped");
  }
  if (mfd.has_finite_zero()) {
    r.probes.push_back(m.t_max());
    r.slack.push_back(mfd.C_kappa() - m.t_max());
    r.values["cut_slack"] = mfd.C_kappa() - m.t_max();
    if (m.truncated()) r.notes.push_back("t_max of a truncated model is a lower estimate of tau");
  }
  finalize(r, sc.tol());
  return r;
}

CheckResult check_diameter(const Scenario& sc, std::optional<double> delta) {
  const std::string name = "diameter";
  const auto& mf = sc.mf();
  const auto& m = sc.model();
  if (!mf.has_finite_zero()) return vacuous(name, "C_kappa = +inf");
  if (!sc.tensor_hypothesis_holds()) return vacuous(name, "curvature hypothesis fails");
  CheckResult r;
  r.name = name;
  r.hypothesis_verified = true;
  r.probe_variable = "s";
  if (!sc.hypothesis_full()) r.notes.push_back("radial hypothesis only (tangential curvature unavailable)");
  r.probes = {m.tau_v()};
  r.slack = {mf.C_kappa() - m.tau_v()};
  r.values["sup_s_V"] = m.tau_v();
  r.values["C_kappa"] = mf.C_kappa();
  if (m.truncated()) r.notes.push_back("sup over the truncated ray is a lower estimate");
  if (delta) {
    const double excess = density_excess(m, sc.t_probes(), *delta);
    if (m.weight_kind() == WeightKind::radial_field || excess > 1e-12) {
      r.notes.push_back("bounded-density bound skipped: (1 - eps) f <= (n - 1) delta not verified");
    } else {
      const double e2d = std::exp(2.0 * *delta);
      const ModelFunctions mfd =
          solve_model(sc.kappa().rescaled(*delta), m.params().c, e2d * mf.domain_max());
      r.values["bounded_density_bound"] = mfd.C_kappa();
      r.values["sup_d_p"] = m.t_max();
      r.probes.push_back(m.t_max());
      r.slack.push_back(mfd.C_kappa() - m.t_max());
    }
  }
  finalize(r, sc.tol());
  return r;
}

CheckResult check_volume_element(const Scenario& sc) {
  if (!sc.hypothesis_holds()) return vacuous("volume_element", "curvature hypothesis fails along the ray");
  const auto& m = sc.model();
  const auto& mf = sc.mf();
  const double c = m.params().c;
  const int n = m.n();
  const double hi = std::min(m.tau_v(), mf.C_kappa());
  CheckResult r;
  r.name = "volume_element";
  r.hypothesis_verified = true;
  r.probe_variable = "s";
  r.probes = chebyshev_probes(0.0, hi, sc.tol().pair_probes);
  const std::size_t k = r.probes.size();
  std::vector<double> d(k), th(k), sk(k);
  for_each_index(k, sc.tol().exec, [&](std::size_t i) {
    th[i] = m.theta_hat(r.probes[i]);
    sk[i] = mf.s_kappa(r.probes[i]);
    d[i] = std::log(sk[i]) / c - std::log(th[i]);
  });
  const PairMin pm = pair_min_increment(d, sc.tol().exec);
  std::vector<double> ratio(k);
  for (std::size_t i = 0; i < k; ++i) ratio[i] = -std::expm1(-pm.row_min[i]);
  // the last probe has no partner s2 > s1
  ratio.back() = k > 1 ? ratio[k - 2] : 0.0;
  r.slack = ratio;
  r.curves.push_back({"ratio_slack", "s", r.probes, ratio});
  if (m.params().c_is_dimensional()) {
    // theta_hat / s_kappa^{n-1} -> c_p^{1-n} at the pole
    const double norm = std::pow(m.c_p(), n - 1);
    std::vector<double> abs(k);
    for (std::size_t i = 0; i < k; ++i) {
      abs[i] = 1.0 - norm * th[i] / std::pow(sk[i], n - 1);
      r.slack[i] = std::min(r.slack[i], abs[i]);
    }
    r.curves.push_back({"absolute_slack", "s", r.probes, abs});
    if (m.c_p() != 1.0) r.notes.push_back("absolute bound normalised by c_p^{1-n}");
  }
  finalize(r, sc.tol());
  return r;
}

CheckResult check_bishop_gromov(const Scenario& sc, const std::vector<double>& radii) {
  if (!sc.hypothesis_holds()) return vacuous("bishop_gromov", "curvature hypothesis fails along the ray");
  const auto& m = sc.model();
  const auto& mf = sc.mf();
  const double c = m.params().c;
  const int n = m.n();
  const double w = unit_sphere_volume(n);
  const double norm = std::pow(m.c_p(), 1 - n);
  const bool dimensional = m.params().c_is_dimensional();
  const double tau = m.tau_v();
  const double T = m.t_max();
  const auto& tol = sc.tol();

  CheckResult r;
  r.name = "bishop_gromov";
  r.hypothesis_verified = true;
  r.probe_variable = "r";

  // balls of the re-parametrised distance
  std::vector<double> mono = linspace(tau / tol.radii_probes, tau, tol.radii_probes);
  std::vector<double> rv = mono;
  for (double x : radii) {
    if (!(x > 0.0)) continue;
    if (m.truncated() && x > tau * (1.0 + 1e-12)) {
      r.notes.push_back("radius " + fmt(x) + " beyond the truncation dropped");
      continue;
    }
    rv.push_back(x);
  }
  rv = sorted_unique(std::move(rv));
  const std::vector<double> nu = ball_volumes(m, rv, tol.exec);
  std::vector<double> S(rv.size());
  for_each_index(rv.size(), tol.exec, [&](std::size_t i) { S[i] = model_volume(mf, rv[i]); });

  std::vector<double> dq(rv.size());
  for (std::size_t i = 0; i < rv.size(); ++i) dq[i] = std::log(S[i]) - std::log(nu[i]);
  const PairMin pm = pair_min_increment(dq, tol.exec);
  std::vector<double> rel(rv.size()), abs(rv.size(), kInf), qv(rv.size());
  for (std::size_t i = 0; i < rv.size(); ++i) {
    rel[i] = std::isinf(pm.row_min[i]) ? kInf : -std::expm1(-pm.row_min[i]);
    qv[i] = nu[i] / S[i];
    if (dimensional) abs[i] = 1.0 - nu[i] / (w * norm * S[i]);
  }
  r.curves.push_back({"relative_slack", "r", rv, rel});
  if (dimensional) r.curves.push_back({"absolute_slack", "r", rv, abs});
  r.curves.push_back({"nu_over_S", "r", rv, qv});

  // monotonicity of nu / S across the probe radii
  std::vector<double> mono_slack;
  {
    std::vector<double> q;
    for (double x : mono) {
      const auto it = std::lower_bound(rv.begin(), rv.end(), x);
      q.push_back(qv[static_cast<std::size_t>(it - rv.begin())]);
    }
    for (std::size_t i = 0; i + 1 < q.size(); ++i) mono_slack.push_back(1.0 - q[i + 1] / q[i]);
    r.curves.push_back({"monotone_slack", "r", {mono.begin(), mono.end() - 1}, mono_slack});
    r.values["monotone_min_slack"] =
        mono_slack.empty() ? 0.0 : *std::min_element(mono_slack.begin(), mono_slack.end());
  }

  // radial variant: metric balls B_r, radii up to t_max
  std::vector<double> rr = linspace(T / tol.radii_probes, T, tol.radii_probes);
  for (double x : radii) {
    if (x > 0.0 && x <= T * (1.0 + 1e-12)) rr.push_back(std::min(x, T));
  }
  rr = sorted_unique(std::move(rr));
  std::vector<double> mu(rr.size()), SV(rr.size());
  const double p = 1.0 / c;
  for_each_index(rr.size(), tol.exec, [&](std::size_t i) {
    mu[i] = m.mu_ball(rr[i]);
    SV[i] = integrate([&](double t) { return std::pow(mf.s_kappa_bar(m.s_v(t)), p); }, 0.0, rr[i],
                      1e-12);
  });
  std::vector<double> dqr(rr.size());
  for (std::size_t i = 0; i < rr.size(); ++i) dqr[i] = std::log(SV[i]) - std::log(mu[i]);
  const PairMin pmr = pair_min_increment(dqr, tol.exec);
  std::vector<double> rrel(rr.size()), rabs(rr.size(), kInf);
  for (std::size_t i = 0; i < rr.size(); ++i) {
    rrel[i] = std::isinf(pmr.row_min[i]) ? kInf : -std::expm1(-pmr.row_min[i]);
    if (dimensional) rabs[i] = 1.0 - mu[i] / (w * norm * SV[i]);
  }
  r.curves.push_back({"radial_relative_slack", "r", rr, rrel});
  if (dimensional) r.curves.push_back({"radial_absolute_slack", "r", rr, rabs});

  // primary slack: pointwise minimum over every applicable inequality
  std::vector<double> all = rv;
  all.insert(all.end(), rr.begin(), rr.end());
  std::vector<double> kept;
  for (double x : sorted_unique(std::move(all))) {
    double s = kInf;
    const auto i = std::lower_bound(rv.begin(), rv.end(), x);
    if (i != rv.end() && *i == x) {
      const auto j = static_cast<std::size_t>(i - rv.begin());
      s = std::min({s, rel[j], abs[j]});
    }
    const auto k = std::lower_bound(rr.begin(), rr.end(), x);
    if (k != rr.end() && *k == x) {
      const auto j = static_cast<std::size_t>(k - rr.begin());
      s = std::min({s, rrel[j], rabs[j]});
    }
    if (s == kInf) continue;
    r.slack.push_back(s);
    kept.push_back(x);
  }
  r.probes = std::move(kept);
  for (std::size_t i = 0; i < rv.size(); ++i) {
    for (double x : radii) {
      if (x == rv[i]) {
        r.values["nu(" + fmt(x) + ")"] = nu[i];
        r.values["omega_S(" + fmt(x) + ")"] = w * norm * S[i];
      }
    }
  }
  if (!dimensional) r.notes.push_back("absolute bounds skipped: c != 1/(n-1)");
  if (m.truncated()) r.notes.push_back("radii limited to the truncated ray");
  finalize(r, tol);
  return r;
}

double max_admissible_constant_kappa(const WeightedModel& model, HypothesisMode mode,
                                     double safety) {
  const double T = model.t_max();
  std::vector<double> t = chebyshev_probes(0.0, T, 2000);
  for (int k = 2; k <= 7; ++k) {
    t.push_back(T * std::pow(10.0, -k));
    if (model.far_end() != FarEnd::truncated) t.push_back(T - T * std::pow(10.0, -k));
  }
  const double c = model.params().c;
  double best = kInf;
  for (double x : t) {
    double ric = model.ric_radial(x);
    if (mode == HypothesisMode::full) ric = std::min(ric, model.ric_tangential(x));
    const double cf = model.conformal_factor(x);
    best = std::min(best, c * ric / (cf * cf));
  }
  return best - safety * std::max(std::abs(best), 1e-12);
}

}  // namespace wrc
