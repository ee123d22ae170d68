#pragma once

#include <span>

#include "flatproj/numerics.hpp"
#include "flatproj/projector.hpp"

namespace flatproj {

enum class WindowAxis { Time, Space, Frequency };

/// A strict window |u| < half_width on one axis, with a shift (τ, ξ or the
/// frequency-axis analogue) applied by the evolution operators.
struct WindowSpec {
  double half_width = 1.0;
  WindowAxis axis = WindowAxis::Time;
  double shift = 0.0;

  void validate() const;
};

/// θ(T² − u²): 1 inside the open window, 0 outside and on the edges.
double window_projector(double u, const WindowSpec& w);

/// Window smoothed by the centred delta-sequence:
/// Φ(u + T) − Φ(u − T) with Φ the delta-sequence CDF.
double smoothed_window(double u, const WindowSpec& w, const FlatteningParams& smoothing);

/// n-th u-derivative of smoothed_window, n ∈ {0, 1, 2}.
double smoothed_window_derivative(double u, int n, const WindowSpec& w,
                                  const FlatteningParams& smoothing);

/// Default sampling for window-layer profiles: ±(half_width + 10a), step a/20.
Grid window_layer_grid(const WindowSpec& w, const FlatteningParams& smoothing);

/// First commutator of the shift generator with the window,
/// shift·[δ(T − u|a) − δ(T + u|a)], sampled on `grid`: a double layer at the
/// window edges.
SampledFunction commutator_first_order(const WindowSpec& w, const FlatteningParams& smoothing,
                                       const Grid& grid);
SampledFunction commutator_first_order(const WindowSpec& w, const FlatteningParams& smoothing);

/// L¹ norm of the truncation error when the smoothed window displaced by the
/// commutator series (to the given order, 1 or 2) is compared with the exactly
/// displaced smoothed window W(u − τ). The first-order term is
/// commutator_first_order; the second adds (τ²/2)·[δ′(u + T) − δ′(u − T)].
double shifted_window_vs_series(const WindowSpec& w, int order, const FlatteningParams& smoothing);

/// (1/π) ∫ sin((ω − η)T)/(ω − η)·f(η) dη by the trapezoid rule on f's grid;
/// the kernel takes its limit value T at η = ω.
Complex duhamel_spectrum(const SampledFunction& f, double half_width, double omega);

/// Σₙ f(nπ/Ω)·sinc(Ωt/π − n), normalised sinc, for samples f(nπ/Ω) with
/// n = first_index, first_index + 1, …
double shannon_reconstruct(std::span<const double> samples, long first_index, double band, double t);

/// Same, taking samples from a grid whose step must equal π/Ω and whose
/// start must be a multiple of it.
double shannon_reconstruct(const SampledFunction& samples, double band, double t);

/// Frequency-axis double layer: commutator_first_order with half-width Ω.
SampledFunction bandpass_double_layer(double band, double shift, const FlatteningParams& smoothing);

/// ε₂ + (ε₁ − ε₂)·ϑ(z|a).
double graded_permittivity_profile(double eps1, double eps2, const FlatteningParams& p, double z);
Complex graded_permittivity_profile(Complex eps1, Complex eps2, const FlatteningParams& p, double z);

}  // namespace flatproj
