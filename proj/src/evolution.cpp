#include "flatproj/evolution.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "flatproj/errors.hpp"

namespace flatproj {

namespace {

constexpr double kPi = std::numbers::pi;

void require_smoothing(const FlatteningParams& p, const char* where) {
  if (!(p.a > 0.0) || !std::isfinite(p.a)) {
    throw DomainError(std::string(where) + ": smoothing depth must be positive");
  }
}

// sin(πx)/(πx) with exact zeros at non-zero integers.
double normalized_sinc(double x) {
  if (x == 0.0) return 1.0;
  const double n = std::nearbyint(x);
  const double r = x - n;
  if (r == 0.0) return 0.0;
  const double parity = std::fmod(std::abs(n), 2.0) == 0.0 ? 1.0 : -1.0;
  return parity * std::sin(kPi * r) / (kPi * x);
}

double tail_extent(const FlatteningParams& p) {
  return p.family == DeltaFamily::Gauss ? 10.0 * p.a : 50.0 * p.a;
}

}  // namespace

void WindowSpec::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("WindowSpec: half_width must be positive");
  }
  if (!std::isfinite(shift)) throw DomainError("WindowSpec: shift must be finite");
}

double window_projector(double u, const WindowSpec& w) {
  w.validate();
  return std::abs(u) < w.half_width ? 1.0 : 0.0;
}

double smoothed_window(double u, const WindowSpec& w, const FlatteningParams& smoothing) {
  return smoothed_window_derivative(u, 0, w, smoothing);
}

double smoothed_window_derivative(double u, int n, const WindowSpec& w,
                                  const FlatteningParams& smoothing) {
  w.validate();
  require_smoothing(smoothing, "smoothed_window");
  const double t = w.half_width;
  switch (n) {
    case 0:
      return delta_cdf(u + t, smoothing) - delta_cdf(u - t, smoothing);
    case 1:
      return delta_seq(u + t, smoothing) - delta_seq(u - t, smoothing);
    case 2:
      return delta_seq_derivative(u + t, smoothing) - delta_seq_derivative(u - t, smoothing);
    default:
      throw DomainError("smoothed_window_derivative: order must be 0, 1 or 2");
  }
}

Grid window_layer_grid(const WindowSpec& w, const FlatteningParams& smoothing) {
  w.validate();
  require_smoothing(smoothing, "window_layer_grid");
  const double half_span = w.half_width + 10.0 * smoothing.a;
  const double step = smoothing.a / 20.0;
  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half_span / step));
  return Grid::spanning(-half_span, half_span, intervals + 1);
}

SampledFunction commutator_first_order(const WindowSpec& w, const FlatteningParams& smoothing,
                                       const Grid& grid) {
  w.validate();
  require_smoothing(smoothing, "commutator_first_order");
  const double t = w.half_width;
  const double shift = w.shift;
  return SampledFunction::sample_real(grid, [&](double u) {
    if (shift == 0.0) return 0.0;
    return shift * (delta_seq(t - u, smoothing) - delta_seq(t + u, smoothing));
  });
}

SampledFunction commutator_first_order(const WindowSpec& w, const FlatteningParams& smoothing) {
  return commutator_first_order(w, smoothing, window_layer_grid(w, smoothing));
}

double shifted_window_vs_series(const WindowSpec& w, int order, const FlatteningParams& smoothing) {
  w.validate();
  require_smoothing(smoothing, "shifted_window_vs_series");
  if (order != 1 && order != 2) {
    throw DomainError("shifted_window_vs_series: order must be 1 or 2");
  }
  const double tau = w.shift;
  if (!(std::abs(tau) < 0.5 * w.half_width)) {
    throw DomainError("shifted_window_vs_series: |shift| must be below half_width/2");
  }
  if (tau == 0.0) return 0.0;

  const double half_span = w.half_width + std::abs(tau) + tail_extent(smoothing);
  const double step = smoothing.a / 40.0;
  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * half_span / step));
  const Grid grid = Grid::spanning(-half_span, half_span, intervals + 1);

  std::vector<Complex> err(grid.count());
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double u = grid.point(i);
    const double exact = smoothed_window(u - tau, w, smoothing);
    double series = smoothed_window(u, w, smoothing);
    // Commutator term τ[δ(T − u) − δ(T + u)] = −τ·W′(u).
    series -= tau * smoothed_window_derivative(u, 1, w, smoothing);
    if (order == 2) series += 0.5 * tau * tau * smoothed_window_derivative(u, 2, w, smoothing);
    err[i] = std::abs(exact - series);
  }
  return integrate(SampledFunction(grid, std::move(err))).real();
}

Complex duhamel_spectrum(const SampledFunction& f, double half_width, double omega) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("duhamel_spectrum: half_width must be positive");
  }
  const Grid& g = f.grid();
  if (!(omega >= g.start() + g.step() && omega <= g.last() - g.step())) {
    throw DomainError("duhamel_spectrum: omega must lie at least one step inside the grid");
  }
  Complex sum{};
  const std::size_t n = g.count();
  for (std::size_t j = 0; j < n; ++j) {
    const double x = omega - g.point(j);
    const double xt = x * half_width;
    const double kernel =
        std::abs(xt) < 1e-8 ? half_width * (1.0 - xt * xt / 6.0) : std::sin(xt) / x;
    const double weight = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
    sum += weight * kernel * f[j];
  }
  return sum * g.step() / kPi;
}

double shannon_reconstruct(std::span<const double> samples, long first_index, double band, double t) {
  if (!(band > 0.0) || !std::isfinite(band)) {
    throw DomainError("shannon_reconstruct: band must be positive");
  }
  if (!std::isfinite(t)) throw DomainError("shannon_reconstruct: t must be finite");
  const double x = band * t / kPi;
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double n = static_cast<double>(first_index + static_cast<long>(i));
    sum += samples[i] * normalized_sinc(x - n);
  }
  return sum;
}

double shannon_reconstruct(const SampledFunction& samples, double band, double t) {
  if (!(band > 0.0)) throw DomainError("shannon_reconstruct: band must be positive");
  const double spacing = kPi / band;
  const Grid& g = samples.grid();
  if (std::abs(g.step() - spacing) > 1e-12 * spacing) {
    throw DomainError("shannon_reconstruct: sample spacing must equal pi/band");
  }
  const double first = g.start() / spacing;
  const double first_index = std::nearbyint(first);
  if (std::abs(first - first_index) > 1e-9) {
    throw DomainError("shannon_reconstruct: samples must start on the lattice n*pi/band");
  }
  const std::vector<double> values = samples.real_part();
  return shannon_reconstruct(values, static_cast<long>(first_index), band, t);
}

SampledFunction bandpass_double_layer(double band, double shift, const FlatteningParams& smoothing) {
  const WindowSpec w{band, WindowAxis::Frequency, shift};
  return commutator_first_order(w, smoothing);
}

double graded_permittivity_profile(double eps1, double eps2, const FlatteningParams& p, double z) {
  return eps2 + (eps1 - eps2) * theta_flat(z, p);
}

Complex graded_permittivity_profile(Complex eps1, Complex eps2, const FlatteningParams& p, double z) {
  return eps2 + (eps1 - eps2) * theta_flat(z, p);
}

}  // namespace flatproj
