#include "flatproj/projector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flatproj/errors.hpp"

namespace flatproj {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_depth(double a, const char* where) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(std::string(where) + ": smoothing depth must be positive and finite, got " +
                      std::to_string(a));
  }
}

void require_non_negative_depth(double a, const char* where) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw DomainError(std::string(where) + ": smoothing depth must be non-negative, got " +
                      std::to_string(a));
  }
}

void require_not_nan(double x, const char* where) {
  if (std::isnan(x)) throw DomainError(std::string(where) + ": argument is NaN");
}

double sharp_step(double x) { return x > 0.0 ? 1.0 : 0.0; }

}  // namespace

double delta_seq(double x, const FlatteningParams& p) {
  if (!std::isfinite(x)) throw DomainError("delta_seq: argument must be finite");
  require_positive_depth(p.a, "delta_seq");
  const double a = p.a;
  if (p.family == DeltaFamily::Lorentz) return a / (kPi * (x * x + a * a));
  const double u = x / a;
  return std::exp(-u * u) / (a * std::sqrt(kPi));
}

double delta_seq_derivative(double x, const FlatteningParams& p) {
  if (!std::isfinite(x)) throw DomainError("delta_seq_derivative: argument must be finite");
  require_positive_depth(p.a, "delta_seq_derivative");
  const double a = p.a;
  if (p.family == DeltaFamily::Lorentz) {
    const double d = x * x + a * a;
    return -2.0 * a * x / (kPi * d * d);
  }
  return -2.0 * x / (a * a) * delta_seq(x, p);
}

double delta_cdf(double x, const FlatteningParams& p) {
  require_not_nan(x, "delta_cdf");
  require_positive_depth(p.a, "delta_cdf");
  if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
  if (p.family == DeltaFamily::Lorentz) return 0.5 + std::atan(x / p.a) / kPi;
  return 0.5 * std::erfc(-x / p.a);
}

double theta_flat(double x, const FlatteningParams& p) {
  require_not_nan(x, "theta_flat");
  require_non_negative_depth(p.a, "theta_flat");
  if (p.a == 0.0) return sharp_step(x);
  if (std::isinf(x)) {
    const bool high = x > 0.0;
    if (p.family == DeltaFamily::Gauss && p.gauss_orientation == GaussOrientation::AsPrinted) {
      return high ? 0.0 : 1.0;
    }
    return high ? 1.0 : 0.0;
  }
  const double u = x / p.a - 1.0;
  if (p.family == DeltaFamily::Lorentz) return 0.5 + std::atan(u) / kPi;
  if (p.gauss_orientation == GaussOrientation::AsPrinted) return 0.5 * std::erfc(u);
  return 0.5 * std::erfc(-u);
}

double theta_flat_derivative(double x, const FlatteningParams& p) {
  require_positive_depth(p.a, "theta_flat_derivative");
  if (std::isinf(x)) return 0.0;
  const double d = delta_seq(x - p.a, p);
  if (p.family == DeltaFamily::Gauss && p.gauss_orientation == GaussOrientation::AsPrinted) {
    return -d;
  }
  return d;
}

double zeta_flat(double x, const FlatteningParams& p) {
  require_not_nan(x, "zeta_flat");
  require_non_negative_depth(p.a, "zeta_flat");
  require_non_negative_depth(p.b, "zeta_flat");

  const bool sharp = p.a == 0.0 || p.b == 0.0;
  const bool as_printed =
      p.family == DeltaFamily::Gauss && p.gauss_orientation == GaussOrientation::AsPrinted;
  if (sharp || as_printed) {
    FlatteningParams neg = p;
    neg.a = p.b;
    return 1.0 - theta_flat(x, p) - theta_flat(-x, neg);
  }
  if (std::isinf(x)) return 0.0;

  if (p.family == DeltaFamily::Lorentz) {
    // atan(u) + atan(v) = atan2(u + v, 1 − uv) for u, v real.
    const double sum = x / p.a - x / p.b - 2.0;
    const double den = 1.0 + (x / p.a - 1.0) * (x / p.b + 1.0);
    return -std::atan2(sum, den) / kPi;
  }
  // Gauss: ζ = [1 − ϑ(x|a)] − ϑ(−x|b), each tail taken from the side that
  // avoids cancellation.
  if (x >= 0.0) {
    return 0.5 * std::erfc(x / p.a - 1.0) - 0.5 * std::erfc(x / p.b + 1.0);
  }
  return 0.5 * std::erfc(-x / p.b - 1.0) - 0.5 * std::erfc(1.0 - x / p.a);
}

double zeta_flat_derivative(double x, const FlatteningParams& p) {
  require_positive_depth(p.a, "zeta_flat_derivative");
  require_positive_depth(p.b, "zeta_flat_derivative");
  FlatteningParams neg = p;
  neg.a = p.b;
  return -theta_flat_derivative(x, p) + theta_flat_derivative(-x, neg);
}

double kappa(double z, const FlatteningParams& p) {
  if (!std::isfinite(z)) throw DomainError("kappa: argument must be finite");
  require_positive_depth(p.a, "kappa");
  require_positive_depth(p.b, "kappa");
  const double zeta = zeta_flat(z, p);
  if (!(zeta > kTransientZoneFloor)) {
    throw EvaluationError("kappa: z = " + std::to_string(z) +
                          " is outside transient zone (zeta = " + std::to_string(zeta) + ")");
  }
  return zeta_flat_derivative(z, p) / zeta;
}

std::complex<double> fourier_modulation(double k, const FlatteningParams& p) {
  if (!std::isfinite(k)) throw DomainError("fourier_modulation: argument must be finite");
  require_non_negative_depth(p.a, "fourier_modulation");
  const double a = p.a;
  const double damping =
      p.family == DeltaFamily::Lorentz ? -a * std::abs(k) : -0.25 * a * a * k * k;
  return std::exp(std::complex<double>(damping, k * a));
}

double point_projector_apply(std::span<const double> f_derivatives,
                             const PointProjectorSeries& series) {
  if (f_derivatives.size() < series.order()) {
    throw DomainError("point_projector_apply: " + std::to_string(series.order()) +
                      " derivatives required, got " + std::to_string(f_derivatives.size()));
  }
  double sum = 0.0;
  double sign = 1.0;
  for (std::size_t n = 0; n < series.order(); ++n) {
    const double c = series.coefficients[n];
    if (!std::isfinite(c) || !std::isfinite(f_derivatives[n])) {
      throw DomainError("point_projector_apply: non-finite coefficient or derivative");
    }
    sum += c * sign * f_derivatives[n];
    sign = -sign;
  }
  return sum;
}

double minkowski_dot(const FourVector& u, const FourVector& v) {
  return u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
}

void SwitchingSpec::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("SwitchingSpec: gamma must be positive");
  }
  require_positive_depth(base.a, "SwitchingSpec");
  require_positive_depth(base.b, "SwitchingSpec");
  for (double c : n) {
    if (!std::isfinite(c)) throw DomainError("SwitchingSpec: n must be finite");
  }
  if (std::abs(minkowski_dot(n, n) - 1.0) > 1e-12) {
    throw DomainError("SwitchingSpec: n must be a unit time-like vector (n.n = 1)");
  }
}

SwitchingFunction::SwitchingFunction(SwitchingSpec spec) : spec_(spec) {
  spec_.validate();
  zeta_at_origin_ = zeta_flat(0.0, spec_.base);
}

double SwitchingFunction::operator()(const FourVector& x) const {
  const double s = spec_.gamma * std::abs(minkowski_dot(spec_.n, x));
  const double g = zeta_flat(s, spec_.base) / zeta_at_origin_;
  return std::clamp(g, 0.0, 1.0);
}

SwitchingFunction make_switching_function(const SwitchingSpec& spec) {
  return SwitchingFunction(spec);
}

}  // namespace flatproj
