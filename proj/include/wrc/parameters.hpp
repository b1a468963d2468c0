#pragma once

#include <string>
#include <variant>

namespace wrc {

/// Effective dimension N; either a finite real or +infinity.
class ExtendedN {
 public:
  static ExtendedN finite(double value);
  static ExtendedN infinity() { return ExtendedN(); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Throws DomainError when infinite.
  double value() const;
  bool equals(double x) const noexcept { return !infinite_ && value_ == x; }
  std::string to_string() const;

  friend bool operator==(const ExtendedN&, const ExtendedN&) = default;

 private:
  ExtendedN() = default;
  bool infinite_ = true;
  double value_ = 0.0;
};

/// Validated (n, N, eps) with the derived constants eps0 and c.
struct EpsParams {
  int n = 2;
  ExtendedN N = ExtendedN::infinity();
  double eps = 0.0;
  double eps0 = 1.0;  // +inf when N == n (eps unrestricted)
  double c = 1.0;
  bool requires_zero_V = false;

  /// 2(1-eps)/(n-1): the exponent scale of every conformal factor.
  double conformal_rate() const noexcept { return 2.0 * (1.0 - eps) / (n - 1); }
  /// 1/(N-n), 0 for N = +inf and for N = n (where V vanishes).
  double field_square_coeff() const noexcept;
  bool c_is_dimensional() const noexcept;

  friend bool operator==(const EpsParams&, const EpsParams&) = default;
};

EpsParams validate_range(int n, ExtendedN N, double eps);

struct GradientCp {};
struct FreeCp {
  double value = 1.0;
};
using CpMode = std::variant<GradientCp, FreeCp>;

/// c_p: exp(-2(1-eps) f(p)/(n-1)) in gradient mode, the supplied value otherwise.
double base_point_constant(const EpsParams& params, double f_at_p, const CpMode& mode);

}  // namespace wrc
