#include "wrc/parameters.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wrc/error.hpp"

namespace wrc {

ExtendedN ExtendedN::finite(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::range_violation, "N must be a finite real or the infinity state");
  }
  ExtendedN out;
  out.infinite_ = false;
  out.value_ = value;
  return out;
}

double ExtendedN::value() const {
  if (infinite_) throw Error(ErrorKind::domain_error, "N is infinite");
  return value_;
}

std::string ExtendedN::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << value_;
  return os.str();
}

double EpsParams::field_square_coeff() const noexcept {
  if (N.is_infinite() || requires_zero_V) return 0.0;
  return 1.0 / (N.value() - n);
}

bool EpsParams::c_is_dimensional() const noexcept {
  return std::abs(c - 1.0 / (n - 1)) < 1e-12;
}

EpsParams validate_range(int n, ExtendedN N, double eps) {
  if (n < 2) throw Error(ErrorKind::range_violation, "dimension n must be >= 2");
  if (!std::isfinite(eps)) throw Error(ErrorKind::range_violation, "eps must be finite");

  EpsParams p;
  p.n = n;
  p.N = N;
  p.eps = eps;
  const double base = 1.0 / (n - 1);

  if (N.equals(1.0)) {
    if (eps != 0.0) throw Error(ErrorKind::range_violation, "eps must be 0 when N = 1");
    p.eps0 = 0.0;
    p.c = base;
    return p;
  }
  if (N.equals(static_cast<double>(n))) {
    p.eps0 = std::numeric_limits<double>::infinity();
    p.c = base;
    p.requires_zero_V = true;
    return p;
  }

  // (N-n)/(N-1), with limit 1 at N = +inf.
  double ratio = 1.0;
  if (!N.is_infinite()) {
    const double Nv = N.value();
    if (Nv > 1.0 && Nv < n) {
      throw Error(ErrorKind::range_violation,
                  "N = " + N.to_string() + " lies in ]1, n[ for n = " + std::to_string(n));
    }
    ratio = (Nv - n) / (Nv - 1.0);
  }
  p.eps0 = 1.0 / ratio;
  if (!(std::abs(eps) < std::sqrt(p.eps0))) {
    std::ostringstream os;
    os << "|eps| = " << std::abs(eps) << " is not below sqrt(eps0) = " << std::sqrt(p.eps0);
    throw Error(ErrorKind::range_violation, os.str());
  }
  p.c = base * (1.0 - eps * eps * ratio);
  if (!(p.c > 0.0)) throw Error(ErrorKind::range_violation, "derived constant c is not positive");
  return p;
}

double base_point_constant(const EpsParams& params, double f_at_p, const CpMode& mode) {
  if (const auto* free = std::get_if<FreeCp>(&mode)) {
    if (!(free->value > 0.0)) throw Error(ErrorKind::non_positive, "c_p must be positive");
    return free->value;
  }
  return std::exp(-params.conformal_rate() * f_at_p);
}

}  // namespace wrc
