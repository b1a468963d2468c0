#include "wrc/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "wrc/error.hpp"
#include "wrc/numerics.hpp"

namespace wrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLawTol = 1e-7;
constexpr double kFieldTol = 1e-8;

// phi(t) = c_p^{-1} s_kappa(c_p t)
RadialFunction scaled_model_phi(std::shared_ptr<const ModelFunctions> mf, double cp) {
  return RadialFunction("scaled-model", {{"cp", cp}}, [mf, cp](double t) {
    const double s = cp * t;
    const double u = mf->s_kappa(s);
    return Jet{u / cp, mf->ds_kappa(s), -cp * mf->kappa()(s) * u};
  });
}

FarEnd closing_end(const RadialFunction& phi, double T) {
  return std::abs(phi(T).d1 + 1.0) <= 1e-6 ? FarEnd::two_pole : FarEnd::singular;
}

double max_field(const WeightedModel& m, const std::vector<double>& t) {
  double worst = 0.0;
  for (double x : t) worst = std::max(worst, std::abs(m.a(x)));
  return worst;
}

RigidityReport vacuous_report(std::string name, std::string why) {
  RigidityReport r;
  r.name = std::move(name);
  r.status = RigidityStatus::vacuous;
  r.check.name = r.name;
  r.check.verdict = Verdict::vacuous;
  r.notes.push_back(std::move(why));
  return r;
}

RigidityCase describe(RigidityCaseKind kind, double eps) {
  switch (kind) {
    case RigidityCaseKind::N_eq_n:
      return {kind, eps, "V = 0", "phi(t) = s_{c_p^2 kappa}(t)"};
    case RigidityCaseKind::N_eq_1:
      return {kind, 0.0, "eps = 0", "phi(t) = c_p^{-1} e^{f_Vp/(n-1)} s_kappa(s_V(t))"};
    case RigidityCaseKind::N_other:
      return {kind, 0.0, "eps = 0, g(V, grad d_p) = 0", "phi(t) = s_{c_p^2 kappa}(t)"};
  }
  return {};
}

// Structural law plus warping law; fills values and returns whether both match.
bool verify_case(const WeightedModel& m, const ModelFunctions& mf, RigidityCaseKind kind,
                 const std::vector<double>& t, RigidityReport& rep) {
  bool ok = true;
  if (kind != RigidityCaseKind::N_eq_1) {
    const double field = max_field(m, t);
    rep.values["max_abs_radial_field"] = field;
    if (field > kFieldTol) {
      rep.notes.push_back("radial component of V does not vanish");
      ok = false;
    }
  }
  if (kind != RigidityCaseKind::N_eq_n && m.params().eps != 0.0) {
    rep.notes.push_back("equality with eps != 0 is excluded for this N");
    ok = false;
  }
  double dev = 0.0;
  try {
    for (double x : t) dev = std::max(dev, std::abs(m.phi_jet(x).v - warping_law(m, mf, kind, x)));
  } catch (const Error& e) {
    rep.notes.push_back(std::string("warping law not evaluable: ") + e.what());
    dev = kInf;
  }
  rep.values["law_deviation"] = dev;
  if (!(dev <= kLawTol)) {
    rep.notes.push_back("warping law not matched");
    ok = false;
  }
  return ok;
}

}  // namespace

const char* to_string(RigidityCaseKind k) {
  switch (k) {
    case RigidityCaseKind::N_eq_n: return "N_eq_n";
    case RigidityCaseKind::N_eq_1: return "N_eq_1";
    case RigidityCaseKind::N_other: return "N_other";
  }
  return "?";
}

const char* to_string(RigidityStatus s) {
  switch (s) {
    case RigidityStatus::classified: return "classified";
    case RigidityStatus::declined: return "declined";
    case RigidityStatus::not_maximal: return "not_maximal";
    case RigidityStatus::vacuous: return "vacuous";
  }
  return "?";
}

RigidityCaseKind case_for(const EpsParams& p) {
  if (p.N.equals(static_cast<double>(p.n))) return RigidityCaseKind::N_eq_n;
  if (p.N.equals(1.0)) return RigidityCaseKind::N_eq_1;
  return RigidityCaseKind::N_other;
}

double warping_law(const WeightedModel& m, const ModelFunctions& mf, RigidityCaseKind kind,
                   double t) {
  if (kind == RigidityCaseKind::N_eq_1) {
    return std::exp(m.f_vp(t) / (m.n() - 1)) * mf.s_kappa(m.s_v(t)) / m.c_p();
  }
  return mf.s_kappa(m.c_p() * t) / m.c_p();
}

WeightedModel build_equality_model(const EqualityBuild& b) {
  if (b.kind == RigidityCaseKind::N_eq_1) {
    if (!b.N.equals(1.0)) throw Error(ErrorKind::construction_failure, "case N_eq_1 needs N = 1");
  } else if (b.kind == RigidityCaseKind::N_eq_n) {
    if (!b.N.equals(static_cast<double>(b.n))) {
      throw Error(ErrorKind::construction_failure, "case N_eq_n needs N = n");
    }
  } else if (b.eps != 0.0 || b.N.equals(1.0) || b.N.equals(static_cast<double>(b.n))) {
    throw Error(ErrorKind::construction_failure, "case N_other needs eps = 0 and N outside {1, n}");
  }
  const EpsParams params = validate_range(b.n, b.N, b.eps);

  if (b.kind != RigidityCaseKind::N_eq_1) {
    const double fallback = b.cp * b.t_max + 1.0;
    auto mf = std::make_shared<const ModelFunctions>(
        solve_model(b.kappa, params.c, std::max(default_domain_max(b.kappa, fallback), fallback)));
    RadialFunction phi = scaled_model_phi(mf, b.cp);
    double T = b.t_max;
    FarEnd end = FarEnd::truncated;
    if (mf->has_finite_zero()) {
      T = mf->C_kappa() / b.cp;
      end = closing_end(phi, T);
    }
    ModelSpec spec{phi, Weight::zero(), params, T, end, b.killing_tangential, CpMode{FreeCp{b.cp}}};
    return WeightedModel(std::move(spec));
  }

  // N = 1, eps = 0: (s, u = s_kappa(s), w = s_kappa'(s)) integrated together
  const int n = b.n;
  const RadialFunction f = b.f ? *b.f : families::zero_density();
  const double f0 = f(0.0).v;
  const double cp = std::exp(-2.0 * f0 / (n - 1));
  const KappaProfile kappa = b.kappa;
  const bool in_s = b.f_in_s;

  // g = f_Vp/(n-1) with derivatives in t, given (t, s)
  auto g_jet = [f, f0, cp, n, in_s](double t, double s) {
    if (!in_s) {
      const Jet F = f(t);
      return Jet{(F.v - f0) / (n - 1), F.d1 / (n - 1), F.d2 / (n - 1)};
    }
    const Jet F = f(s);
    const double g = (F.v - f0) / (n - 1);
    const double sp = cp * std::exp(-2.0 * g);
    const double gp = F.d1 * sp / (n - 1);
    const double spp = -2.0 * gp * sp;
    return Jet{g, gp, (F.d2 * sp * sp + F.d1 * spp) / (n - 1)};
  };
  auto rhs = [&](double t, const ode::State<3>& y) {
    const double sp = cp * std::exp(-2.0 * g_jet(t, y[0]).v);
    return ode::State<3>{sp, y[2] * sp, -kappa(y[0]) * y[1] * sp};
  };

  const double fallback = b.t_max + 1.0;
  const ModelFunctions mf =
      solve_model(kappa, params.c, std::max(default_domain_max(kappa, fallback), fallback));
  const bool closes = mf.has_finite_zero();
  ode::Options opt;
  opt.rtol = 1e-13;
  opt.atol = 1e-15;
  opt.h_max = 0.02;
  std::vector<ode::Segment<3>> segs;
  double T = b.t_max;
  bool crossed = false;
  const double horizon = closes ? 1e4 : b.t_max;
  ode::integrate_steps<3>(rhs, 0.0, {0.0, 0.0, 1.0}, horizon, opt, [&](const ode::Segment<3>& seg) {
    segs.push_back(seg);
    if (closes && seg.t0 > 0.0 && seg.front()[1] > 0.0 && seg.back()[1] <= 0.0) {
      T = ode::bisect([&seg](double t) { return seg.at(t)[1]; }, seg.t0, seg.t1(), 1e-15);
      crossed = true;
      return false;
    }
    return true;
  });
  if (closes && !crossed) {
    throw Error(ErrorKind::construction_failure, "s_kappa(s(t)) has no zero on the horizon");
  }
  auto sol = std::make_shared<const ode::DenseSolution<3>>(std::move(segs));

  RadialFunction phi("equality-N1", {{"cp", cp}}, [sol, g_jet, kappa, cp](double t) {
    const auto y = (*sol)(t);
    const double s = y[0], u = y[1], w = y[2];
    const Jet g = g_jet(t, s);
    const double sp = cp * std::exp(-2.0 * g.v);
    const double spp = -2.0 * g.d1 * sp;
    const double e = std::exp(g.v) / cp;
    return Jet{e * u, e * (g.d1 * u + w * sp),
               e * ((g.d2 + g.d1 * g.d1) * u + 2.0 * g.d1 * w * sp - kappa(s) * u * sp * sp +
                    w * spp)};
  });
  Weight weight = Weight::gradient(f);
  if (in_s) {
    weight = Weight::gradient(RadialFunction("composed-in-s", f.params(), [sol, g_jet, f0, n](double t) {
      const Jet g = g_jet(t, (*sol)(t)[0]);
      return Jet{f0 + (n - 1) * g.v, (n - 1) * g.d1, (n - 1) * g.d2};
    }));
  }
  const Jet p0 = phi(0.0);
  if (std::abs(p0.v) > 1e-8 || std::abs(p0.d1 - 1.0) > 1e-8) {
    throw Error(ErrorKind::construction_failure, "constructed phi is not regular at the pole");
  }
  const FarEnd end = closes ? closing_end(phi, T) : FarEnd::truncated;
  ModelSpec spec{phi, weight, params, T, end, false, std::nullopt};
  return WeightedModel(std::move(spec));
}

WeightedModel build_bounded_density_model(int n, ExtendedN N, double eps, const KappaProfile& kappa,
                                          double delta) {
  const EpsParams params = validate_range(n, N, eps);
  const double e2d = std::exp(2.0 * delta);
  auto mf = std::make_shared<const ModelFunctions>(
      solve_model(kappa, params.c, default_domain_max(kappa, 20.0)));
  RadialFunction phi("bounded-density-model", {{"delta", delta}}, [mf, e2d](double t) {
    const double s = t / e2d;
    const double u = mf->s_kappa(s);
    return Jet{e2d * u, mf->ds_kappa(s), -mf->kappa()(s) * u / e2d};
  });
  double T = 10.0;
  FarEnd end = FarEnd::truncated;
  if (mf->has_finite_zero()) {
    T = e2d * mf->C_kappa();
    end = closing_end(phi, T);
  }
  const double f = (n - 1) * delta / (1.0 - eps);
  ModelSpec spec{phi, Weight::gradient(families::constant_density(f)), params, T, end, false,
                 std::nullopt};
  return WeightedModel(std::move(spec));
}

RigidityReport check_max_diameter(const Scenario& sc, std::optional<double> delta) {
  const std::string name = "max_diameter";
  const auto& m = sc.model();
  const auto& mf = sc.mf();
  if (m.far_end() != FarEnd::two_pole) return vacuous_report(name, "needs a two-pole model");
  if (!mf.has_finite_zero()) return vacuous_report(name, "C_kappa = +inf");
  const double C = mf.C_kappa();
  for (double s : linspace(0.0, C, 401)) {
    if (!(sc.kappa()(s) > 0.0)) return vacuous_report(name, "kappa is not positive on [0, C_kappa]");
  }
  if (!check_symmetry(mf)) return vacuous_report(name, "kappa is not symmetric about C_kappa / 2");
  if (!sc.tensor_hypothesis_holds()) return vacuous_report(name, "curvature hypothesis fails");

  RigidityReport rep;
  rep.name = name;
  rep.check = check_diameter(sc, delta);
  rep.check.name = name;
  const double tau = m.tau_v();
  const double T = m.t_max();
  const double k = m.params().conformal_rate();
  const double c = m.params().c;
  const auto t = sc.t_probes();
  rep.values["tau_V"] = tau;
  rep.values["C_kappa"] = C;

  // second pole q = gamma(T): f_{V,q} = f_Vp - f_Vp(T) along the same geodesic
  const double FT = m.f_vp(T);
  const double cq = m.c_p() * std::exp(-k * FT);
  double compat = 0.0;
  double q_slack = kInf;
  for (double x : t) {
    const double from_p = m.conformal_factor(x);
    const double from_q = cq * std::exp(-k * (m.f_vp(x) - FT));
    compat = std::max(compat, std::abs(from_q - from_p) / from_p);
    // compatible q-side reparametrisation: s_{V,q}(t) = tau_V - s_V(t)
    const double sq = m.tau_v() - m.s_v(x);
    const double bound = sc.kappa()(std::max(sq, 0.0)) * from_q * from_q / c;
    q_slack = std::min(q_slack, m.ric_radial(x) - bound);
  }
  rep.values["c_q"] = cq;
  rep.values["compatibility_deviation"] = compat;
  rep.values["q_hypothesis_min_slack"] = q_slack;

  if (tau < C - sc.tol().eq_tol) {
    rep.status = RigidityStatus::not_maximal;
    rep.notes.push_back("tau_V < C_kappa: diameter not maximal");
  } else if (q_slack < -sc.tol().check_tol || compat > 1e-10) {
    rep.status = RigidityStatus::vacuous;
    rep.notes.push_back("hypothesis from the second pole not verified");
  } else {
    const RigidityCaseKind kind = case_for(m.params());
    if (verify_case(m, mf, kind, t, rep)) {
      rep.status = RigidityStatus::classified;
      rep.rigidity_case = describe(kind, m.params().eps);
    } else {
      rep.status = RigidityStatus::declined;
    }
  }

  if (delta) {
    const double e2d = std::exp(2.0 * *delta);
    double excess = -kInf, spread = 0.0;
    for (double x : t) {
      const double v = (1.0 - m.params().eps) * m.density(x) - (m.n() - 1) * *delta;
      excess = std::max(excess, v);
      spread = std::max(spread, std::abs(v));
    }
    if (m.weight_kind() == WeightKind::radial_field || excess > 1e-12 || !sc.hypothesis_holds()) {
      rep.bounded_density_status = RigidityStatus::vacuous;
      rep.notes.push_back("bounded-density hypotheses not verified");
    } else {
      const ModelFunctions mfd = solve_model(sc.kappa().rescaled(*delta), c, e2d * mf.domain_max());
      rep.values["C_kappa_delta"] = mfd.C_kappa();
      rep.values["density_deviation"] = spread;
      if (T < mfd.C_kappa() - sc.tol().eq_tol) {
        rep.bounded_density_status = RigidityStatus::not_maximal;
      } else {
        double dev = 0.0;
        for (double x : t) dev = std::max(dev, std::abs(m.phi_jet(x).v - mfd.s_kappa(x)));
        rep.values["bounded_density_law_deviation"] = dev;
        const bool eps_ok = case_for(m.params()) == RigidityCaseKind::N_eq_n || m.params().eps == 0.0;
        const bool ok = spread <= kLawTol && dev <= kLawTol && eps_ok;
        rep.bounded_density_status = ok ? RigidityStatus::classified : RigidityStatus::declined;
        if (ok) rep.notes.push_back("(1 - eps) f = (n - 1) delta and phi = s_{kappa e^{-4 delta}}");
      }
    }
  }
  return rep;
}

RigidityReport check_volume_growth_rigidity(const Scenario& sc, const std::vector<double>& radii) {
  const std::string name = "volume_growth_rigidity";
  const auto& m = sc.model();
  const auto& mf = sc.mf();
  if (mf.has_finite_zero()) {
    return vacuous_report(name, "C_kappa < +inf: no rigidity statement is available");
  }
  if (!m.params().c_is_dimensional()) return vacuous_report(name, "needs c = 1/(n-1)");
  if (!sc.tensor_hypothesis_holds()) return vacuous_report(name, "curvature hypothesis fails");

  RigidityReport rep;
  rep.name = name;
  const double w = unit_sphere_volume(m.n());
  const double norm = std::pow(m.c_p(), 1 - m.n());
  std::vector<double> rv = linspace(m.tau_v() / 20.0, m.tau_v(), 20);
  for (double x : radii) {
    if (x > 0.0 && x <= m.tau_v()) rv.push_back(x);
  }
  std::sort(rv.begin(), rv.end());
  rv.erase(std::unique(rv.begin(), rv.end()), rv.end());
  const auto nu = ball_volumes(m, rv, sc.tol().exec);

  CheckResult& r = rep.check;
  r.name = name;
  r.hypothesis_verified = true;
  r.probe_variable = "r";
  r.probes = rv;
  double min_ratio = kInf;
  for (std::size_t i = 0; i < rv.size(); ++i) {
    const double ratio = nu[i] / (norm * model_volume(mf, rv[i]));
    min_ratio = std::min(min_ratio, ratio);
    r.slack.push_back(1.0 - ratio / w);
  }
  finalize(r, sc.tol());
  rep.values["min_ratio"] = min_ratio;
  rep.values["omega"] = w;
  if (m.truncated()) rep.notes.push_back("liminf estimated on the truncated ray");

  if (min_ratio < w * (1.0 - sc.tol().eq_tol)) {
    rep.status = RigidityStatus::not_maximal;
    rep.notes.push_back("volume growth below the model: no rigidity asserted");
    return rep;
  }
  const RigidityCaseKind kind = case_for(m.params());
  if (verify_case(m, mf, kind, sc.t_probes(), rep)) {
    rep.status = RigidityStatus::classified;
    rep.rigidity_case = describe(kind, m.params().eps);
  } else {
    rep.status = RigidityStatus::declined;
  }
  return rep;
}

}  // namespace wrc
