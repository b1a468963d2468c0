#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wrc/model_space.hpp"

namespace wrc {

/// Tail bound on an integrand g over [t0, +inf).
///   const_lower:  g >= c0 > 0
///   power_lower:  g >= c0 t^{-p}, c0 > 0, p <= 1
///   exp_upper:    |g| <= c0 e^{-p t}, p > 0
///   power_upper:  |g| <= c0 t^{-p}, p > 1
///   gauss_upper:  |g| <= c0 e^{-p t^2}, p > 0
///   nonpositive:  g <= 0
///   periodic:     g is 2T-periodic with mean c0 (closed models only)
enum class TailKind { const_lower, power_lower, exp_upper, power_upper, gauss_upper, nonpositive, periodic };
const char* to_string(TailKind k);
std::optional<TailKind> tail_kind_from_string(const std::string& s);

struct TailCertificate {
  TailKind kind = TailKind::const_lower;
  double t0 = 1.0;
  double c0 = 0.0;
  double p = 0.0;
  std::string source = "config";

  bool certifies_divergence() const;
  bool certifies_convergence() const;
  /// Bound on |int_r^inf g| for the convergent kinds (r >= t0).
  double tail_bound(double r) const;
  /// Lower bound on int_a^b g for the divergent kinds (a >= t0).
  double lower_increment(double a, double b) const;
  std::string rate() const;
};

enum class CompletenessStatus { yes, no, undetermined };
enum class AmbroseStatus { diverges, converges, not_divergent, undetermined };
enum class BlowupStatus { blowup, none_within_domain };
enum class CompactVerdict { compact_predicted, inconclusive };

const char* to_string(CompletenessStatus s);
const char* to_string(AmbroseStatus s);
const char* to_string(BlowupStatus s);
const char* to_string(CompactVerdict v);

struct EpsCompleteness {
  CompletenessStatus status = CompletenessStatus::undetermined;
  /// s_V(T_max) / c_p = int_0^T e^{-k f_Vp}.
  double partial = 0.0;
  double t_max = 0.0;
  std::optional<TailCertificate> certificate;
  /// Certified lower bounds of s_V / c_p past T_max (yes-status only): (t, bound).
  std::vector<std::pair<double, double>> extension;
  std::vector<std::string> notes;
};

struct AmbroseResult {
  AmbroseStatus status = AmbroseStatus::undetermined;
  /// int_1^T e^{k f_Vp} Ric_V^N(d/dt) dt.
  double partial = 0.0;
  double t_max = 0.0;
  std::optional<TailCertificate> certificate;
  std::string rate;
  /// Certified bound on the remaining tail (converges only), NaN when unknown.
  double tail_bound = 0.0;
  std::vector<std::string> notes;
};

struct BlowupResult {
  BlowupStatus status = BlowupStatus::none_within_domain;
  double R = 0.0;  // time at which lambda leaves through infinity
  bool to_minus_infinity = true;
  double t_start = 0.0;
  double lambda_start = 0.0;
  double t_end = 0.0;          // end of the integration when no blow-up occurred
  double lambda_end = 0.0;
  int inversions = 0;          // switches to the 1/lambda variable
};

struct CompactnessReport {
  EpsCompleteness eps_complete;
  AmbroseResult ambrose;
  BlowupResult blowup;
  CompactVerdict verdict = CompactVerdict::inconclusive;
  std::vector<std::string> notes;
};

struct CompactnessCertificates {
  std::optional<TailCertificate> eps_complete;
  std::optional<TailCertificate> ambrose;
};

EpsCompleteness check_eps_complete(const WeightedModel& model,
                                   const std::optional<TailCertificate>& supplied = std::nullopt);
AmbroseResult ambrose_integral(const WeightedModel& model,
                               const std::optional<TailCertificate>& supplied = std::nullopt);

/// lambda' = -P(t) - Q(t) lambda^2 from (t_start, lambda_start) up to t_end.
/// Past |lambda| = 1e3 the solver follows mu = 1/lambda (mu' = P mu^2 + Q)
/// and reports the zero crossing of mu as the blow-up radius.
BlowupResult riccati_blowup(const std::function<double(double)>& P,
                            const std::function<double(double)>& Q, double lambda_start,
                            double t_start, double t_end);
/// Constant data: P = Ric, Q = c.
BlowupResult riccati_blowup(double ric, double c, double lambda_start, double t_start,
                            double t_end);
/// The comparison ODE of the model along the ray; closed two-pole models are
/// continued past the far pole by reflection (the meridian is a closed geodesic).
BlowupResult riccati_blowup(const WeightedModel& model, double lambda_start, double t_start);

CompactnessReport analyze_compactness(const WeightedModel& model,
                                      const CompactnessCertificates& certs = {});

}  // namespace wrc
