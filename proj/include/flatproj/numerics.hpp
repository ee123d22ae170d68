#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace flatproj {

using Complex = std::complex<double>;

/// Uniform grid: points start + i·step for i in [0, count).
class Grid {
 public:
  Grid(double start, double step, std::size_t count);

  /// Grid with `count` points spanning [first, last] inclusive.
  static Grid spanning(double first, double last, std::size_t count);
  /// Grid from first to (at most) last with the given step; `last` is
  /// included when it lies on the lattice within 1e-9 of a step.
  static Grid stepped(double first, double last, double step);

  double start() const { return start_; }
  double step() const { return step_; }
  std::size_t count() const { return count_; }
  double point(std::size_t i) const { return start_ + static_cast<double>(i) * step_; }
  double last() const { return point(count_ - 1); }
  std::vector<double> points() const;

 private:
  double start_;
  double step_;
  std::size_t count_;
};

/// Complex samples on a uniform grid. All values are finite.
class SampledFunction {
 public:
  SampledFunction(Grid grid, std::vector<Complex> values);

  static SampledFunction sample(const Grid& grid, const std::function<Complex(double)>& fn);
  static SampledFunction sample_real(const Grid& grid, const std::function<double(double)>& fn);

  const Grid& grid() const { return grid_; }
  const std::vector<Complex>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  std::vector<double> real_part() const;

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

/// Kernel weight w(q) multiplying f(q) inside a principal-value integral.
using KernelWeight = std::function<Complex(double)>;

/// Cubic (4-point Lagrange) interpolation of the samples at x; x must lie in
/// the grid span.
Complex interpolate(const SampledFunction& f, double x);

/// ∫ f over the full grid span: trapezoid rule with the O(h²) Euler-Maclaurin
/// end correction from one-sided differences.
Complex integrate(const SampledFunction& f);

/// ∫ f over [grid start, upper] (upper within the span); the partial last
/// cell uses the interpolated endpoint value.
Complex integrate_to(const SampledFunction& f, double upper);

/// PV ∫ f(q)·w(q)/(q − pole) dq over the grid span.
///
/// The pole singularity is subtracted analytically (g(pole)·ln((B − pole)/(pole − A)))
/// and the bounded remainder (g(q) − g(pole))/(q − pole) is integrated on each
/// side of the pole separately, so weights with a kink at the pole
/// (e.g. exp(−a|q − pole|)) keep second-order accuracy. Samples closer than
/// half a step to the pole are replaced by a one-sided derivative estimate.
///
/// Throws DomainError if the pole is outside the open grid span and
/// AccuracyError if it lies within half a step of either end.
Complex pv_integral(const SampledFunction& f, double pole,
                    const std::optional<KernelWeight>& weight = std::nullopt);

/// Continuous-convention Fourier transform F(k) = ∫ f(x)·exp(i·sign·k·x) dx
/// evaluated by FFT on the conjugate grid (step 2π/(count·step)). The output
/// grid starts at `out_start`, or at −⌊count/2⌋·dk (zero-centred) when omitted.
/// Parseval: Σ|f|²·dx = Σ|F|²·dk/(2π).
SampledFunction discrete_fourier(const SampledFunction& f, int sign,
                                 std::optional<double> out_start = std::nullopt);

/// Inverse of discrete_fourier: (1/2π)∫ F(k)·exp(−i·sign·k·x) dk on the grid
/// conjugate to F's, starting at x_start.
SampledFunction inverse_discrete_fourier(const SampledFunction& spectrum, int sign, double x_start);

}  // namespace flatproj
