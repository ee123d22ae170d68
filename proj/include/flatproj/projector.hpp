#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace flatproj {

enum class DeltaFamily { Lorentz, Gauss };

/// Orientation of the Gauss step. `AsPrinted` is ½{1 − erf(x/a − 1)}, which
/// decreases in x; `Corrected` is ½{1 + erf(x/a − 1)}, the integral of the
/// shifted Gauss delta-sequence. The Lorentz step is always increasing.
enum class GaussOrientation { Corrected, AsPrinted };

/// Smoothing depths of a flattened projector.
///
/// `a` smooths the positive side and `b` the negative side. Both must be
/// positive for flattened evaluation; zero selects the sharp Heaviside branch
/// in the operations that document one.
struct FlatteningParams {
  double a = 1.0;
  double b = 1.0;
  DeltaFamily family = DeltaFamily::Lorentz;
  GaussOrientation gauss_orientation = GaussOrientation::Corrected;

  /// Both depths set to `depth`, corrected Gauss orientation.
  static FlatteningParams symmetric(double depth, DeltaFamily family = DeltaFamily::Lorentz) {
    return {depth, depth, family, GaussOrientation::Corrected};
  }
  /// Copy with both depths replaced.
  FlatteningParams with_depth(double depth) const {
    FlatteningParams p = *this;
    p.a = depth;
    p.b = depth;
    return p;
  }
};

/// ζ values at or below this are treated as outside the transient zone.
inline constexpr double kTransientZoneFloor = 1e-12;

/// Delta-sequence of width p.a, centred at zero.
double delta_seq(double x, const FlatteningParams& p);

/// First x-derivative of delta_seq.
double delta_seq_derivative(double x, const FlatteningParams& p);

/// Cumulative integral of the centred delta-sequence, ∫_{-∞}^{x} δ(u|a) du.
/// Increasing for both families; independent of gauss_orientation.
double delta_cdf(double x, const FlatteningParams& p);

/// Flattened Heaviside step ϑ(x|a). p.a == 0 gives the sharp step with
/// θ(0) = 0.
double theta_flat(double x, const FlatteningParams& p);

/// d/dx ϑ(x|a): the delta-sequence shifted to x = a (sign-flipped for the
/// as-printed Gauss orientation).
double theta_flat_derivative(double x, const FlatteningParams& p);

/// Flattened point projector ζ_{a,b}(x) = 1 − ϑ(x|a) − ϑ(−x|b).
double zeta_flat(double x, const FlatteningParams& p);

/// d/dx ζ_{a,b}(x).
double zeta_flat_derivative(double x, const FlatteningParams& p);

/// Logarithmic derivative ζ′/ζ. Throws EvaluationError where ζ does not exceed
/// kTransientZoneFloor.
double kappa(double z, const FlatteningParams& p);

/// Smooth factor multiplying δ₊(k) in the Fourier image of ϑ(x|a):
/// exp(ika − a|k|) (Lorentz) or exp(ika − a²k²/4) (Gauss).
std::complex<double> fourier_modulation(double k, const FlatteningParams& p);

/// Truncated point-projector series Σ aₙ δ⁽ⁿ⁾(x).
struct PointProjectorSeries {
  std::vector<double> coefficients{1.0};

  std::size_t order() const { return coefficients.size(); }
};

/// Distributional pairing ⟨ζ, f⟩ = Σ aₙ (−1)ⁿ f⁽ⁿ⁾(0). `f_derivatives[n]` is
/// f⁽ⁿ⁾(0); it must supply at least series.order() entries.
double point_projector_apply(std::span<const double> f_derivatives,
                             const PointProjectorSeries& series);

/// Minkowski 4-vector (x₀, x₁, x₂, x₃), signature (+, −, −, −).
using FourVector = std::array<double, 4>;

double minkowski_dot(const FourVector& u, const FourVector& v);

struct SwitchingSpec {
  double gamma = 1.0;
  FourVector n{1.0, 0.0, 0.0, 0.0};
  FlatteningParams base = FlatteningParams::symmetric(1.0);

  /// Throws DomainError unless gamma > 0, the base depths are positive and
  /// n is a unit time-like vector (|n·n − 1| ≤ 1e-12).
  void validate() const;
};

/// Covariant switching function g(x) = ζ(s)/ζ(0), s = γ|n·x|, clamped to [0, 1].
class SwitchingFunction {
 public:
  explicit SwitchingFunction(SwitchingSpec spec);

  double operator()(const FourVector& x) const;
  const SwitchingSpec& spec() const { return spec_; }

 private:
  SwitchingSpec spec_;
  double zeta_at_origin_;
};

SwitchingFunction make_switching_function(const SwitchingSpec& spec);

}  // namespace flatproj
