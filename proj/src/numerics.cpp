#include "flatproj/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "flatproj/errors.hpp"

namespace flatproj {

namespace {

constexpr double kPi = std::numbers::pi;

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Trapezoid over equally spaced values with the h² end correction
// −(h²/12)[f′(end) − f′(start)], derivatives from one-sided 3-point stencils.
Complex corrected_trapezoid(const Complex* v, std::size_t n, double h) {
  if (n < 2) return Complex{};
  Complex sum = 0.5 * (v[0] + v[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) sum += v[i];
  sum *= h;
  if (n >= 3) {
    const Complex d_start = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    const Complex d_end = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    sum -= (h * h / 12.0) * (d_end - d_start);
  }
  return sum;
}

// Derivative at x2 of the quadratic through (x0, g0), (x1, g1), (x2, g2).
Complex quadratic_slope_at_last(double x0, double x1, double x2, Complex g0, Complex g1,
                                Complex g2) {
  return g0 * ((x2 - x1) / ((x0 - x1) * (x0 - x2))) +
         g1 * ((x2 - x0) / ((x1 - x0) * (x1 - x2))) +
         g2 * (((x2 - x0) + (x2 - x1)) / ((x2 - x0) * (x2 - x1)));
}

Complex unit_phase(long double theta) {
  return {static_cast<double>(std::cos(theta)), static_cast<double>(std::sin(theta))};
}

}  // namespace

Grid::Grid(double start, double step, std::size_t count) : start_(start), step_(step), count_(count) {
  if (!std::isfinite(start) || !std::isfinite(step) || !(step > 0.0)) {
    throw DomainError("Grid: start must be finite and step positive");
  }
  if (count < 2) throw DomainError("Grid: at least two points are required");
}

Grid Grid::spanning(double first, double last, std::size_t count) {
  if (count < 2) throw DomainError("Grid: at least two points are required");
  if (!(last > first)) throw DomainError("Grid: last must exceed first");
  return Grid(first, (last - first) / static_cast<double>(count - 1), count);
}

Grid Grid::stepped(double first, double last, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("Grid: step must be positive");
  if (!(last > first)) throw DomainError("Grid: last must exceed first");
  const double intervals = (last - first) / step;
  const auto n = static_cast<std::size_t>(std::floor(intervals + 1e-9)) + 1;
  return Grid(first, step, n);
}

std::vector<double> Grid::points() const {
  std::vector<double> out(count_);
  for (std::size_t i = 0; i < count_; ++i) out[i] = point(i);
  return out;
}

SampledFunction::SampledFunction(Grid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.count()) {
    throw DomainError("SampledFunction: " + std::to_string(values_.size()) +
                      " values for a grid of " + std::to_string(grid_.count()) + " points");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!finite(values_[i])) {
      throw DomainError("SampledFunction: non-finite value at index " + std::to_string(i));
    }
  }
}

SampledFunction SampledFunction::sample(const Grid& grid, const std::function<Complex(double)>& fn) {
  std::vector<Complex> v(grid.count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.point(i));
  return SampledFunction(grid, std::move(v));
}

SampledFunction SampledFunction::sample_real(const Grid& grid, const std::function<double(double)>& fn) {
  std::vector<Complex> v(grid.count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.point(i));
  return SampledFunction(grid, std::move(v));
}

std::vector<double> SampledFunction::real_part() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](const Complex& z) { return z.real(); });
  return out;
}

Complex interpolate(const SampledFunction& f, double x) {
  const Grid& g = f.grid();
  const double tol = 1e-12 * g.step();
  if (!(x >= g.start() - tol && x <= g.last() + tol)) {
    throw DomainError("interpolate: x = " + std::to_string(x) + " outside the grid span");
  }
  const std::size_t n = g.count();
  const std::size_t width = std::min<std::size_t>(4, n);
  const double pos = (x - g.start()) / g.step();
  auto first = static_cast<long>(std::floor(pos)) - static_cast<long>(width / 2 - 1);
  first = std::clamp<long>(first, 0, static_cast<long>(n - width));

  Complex sum{};
  for (std::size_t i = 0; i < width; ++i) {
    const double xi = g.point(first + i);
    double basis = 1.0;
    for (std::size_t j = 0; j < width; ++j) {
      if (j == i) continue;
      const double xj = g.point(first + j);
      basis *= (x - xj) / (xi - xj);
    }
    sum += basis * f[first + i];
  }
  return sum;
}

Complex integrate(const SampledFunction& f) {
  return corrected_trapezoid(f.values().data(), f.size(), f.grid().step());
}

Complex integrate_to(const SampledFunction& f, double upper) {
  const Grid& g = f.grid();
  if (!(upper >= g.start() && upper <= g.last() + 1e-12 * g.step())) {
    throw DomainError("integrate_to: upper limit outside the grid span");
  }
  upper = std::min(upper, g.last());
  const auto full = static_cast<std::size_t>(std::floor((upper - g.start()) / g.step() + 1e-12));
  const std::size_t last_node = std::min(full, g.count() - 1);
  Complex sum = corrected_trapezoid(f.values().data(), last_node + 1, g.step());
  const double rest = upper - g.point(last_node);
  if (rest > 0.0) sum += 0.5 * rest * (f[last_node] + interpolate(f, upper));
  return sum;
}

Complex pv_integral(const SampledFunction& f, double pole, const std::optional<KernelWeight>& weight) {
  const Grid& grid = f.grid();
  const double lo = grid.start();
  const double hi = grid.last();
  const double h = grid.step();
  const std::size_t n = grid.count();

  if (!std::isfinite(pole) || !(pole > lo && pole < hi)) {
    throw DomainError("pv_integral: pole " + std::to_string(pole) + " outside the grid span (" +
                      std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  if (pole - lo < 0.5 * h || hi - pole < 0.5 * h) {
    throw AccuracyError("pv_integral: pole within half a step of the grid boundary");
  }

  auto w = [&](double q) { return weight ? (*weight)(q) : Complex(1.0); };
  auto g_at = [&](std::size_t j) { return f[j] * w(grid.point(j)); };
  const Complex g_pole = interpolate(f, pole) * w(pole);

  // Last node at least half a step left of the pole, first node at least half
  // a step right of it.
  const double pos = (pole - lo) / h;
  auto left = static_cast<long>(std::floor(pos - 0.5));
  auto right = static_cast<long>(std::ceil(pos + 0.5));
  left = std::clamp<long>(left, 0, static_cast<long>(n) - 1);
  right = std::clamp<long>(right, 0, static_cast<long>(n) - 1);
  if (grid.point(left) > pole - 0.5 * h && left > 0) --left;
  if (grid.point(right) < pole + 0.5 * h && right + 1 < static_cast<long>(n)) ++right;

  auto remainder = [&](std::size_t j) { return (g_at(j) - g_pole) / (grid.point(j) - pole); };

  Complex total{};

  // Left of the pole.
  {
    const auto count = static_cast<std::size_t>(left) + 1;
    std::vector<Complex> vals(count);
    for (std::size_t j = 0; j < count; ++j) vals[j] = remainder(j);
    total += corrected_trapezoid(vals.data(), count, h);

    const double xl = grid.point(left);
    Complex slope;
    if (left >= 1) {
      slope = quadratic_slope_at_last(grid.point(left - 1), xl, pole, g_at(left - 1), g_at(left), g_pole);
    } else {
      slope = vals.back();
    }
    total += 0.5 * (pole - xl) * (vals.back() + slope);
  }

  // Right of the pole.
  {
    const std::size_t first = static_cast<std::size_t>(right);
    const std::size_t count = n - first;
    std::vector<Complex> vals(count);
    for (std::size_t j = 0; j < count; ++j) vals[j] = remainder(first + j);
    total += corrected_trapezoid(vals.data(), count, h);

    const double xr = grid.point(first);
    Complex slope;
    if (first + 1 < n) {
      slope = quadratic_slope_at_last(grid.point(first + 1), xr, pole, g_at(first + 1), g_at(first), g_pole);
    } else {
      slope = vals.front();
    }
    total += 0.5 * (xr - pole) * (slope + vals.front());
  }

  total += g_pole * std::log((hi - pole) / (pole - lo));
  return total;
}

SampledFunction discrete_fourier(const SampledFunction& f, int sign, std::optional<double> out_start) {
  if (sign != 1 && sign != -1) throw DomainError("discrete_fourier: sign must be +1 or -1");
  const Grid& g = f.grid();
  const std::size_t n = g.count();
  const long double dx = g.step();
  const long double dk = 2.0L * std::numbers::pi_v<long double> / (static_cast<long double>(n) * dx);
  const long double k0 =
      out_start ? static_cast<long double>(*out_start) : -static_cast<long double>(n / 2) * dk;
  const long double x0 = g.start();
  const long double s = sign;

  std::vector<Complex> in(n);
  for (std::size_t j = 0; j < n; ++j) {
    in[j] = f[j] * unit_phase(s * k0 * static_cast<long double>(j) * dx);
  }

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Complex> out;
  // Eigen's fwd uses exp(−2πi jm/N); inv (unscaled) uses exp(+2πi jm/N).
  if (sign > 0) {
    fft.inv(out, in);
  } else {
    fft.fwd(out, in);
  }

  for (std::size_t m = 0; m < n; ++m) {
    const long double k = k0 + static_cast<long double>(m) * dk;
    out[m] *= static_cast<double>(dx) * unit_phase(s * k * x0);
  }
  return SampledFunction(Grid(static_cast<double>(k0), static_cast<double>(dk), n), std::move(out));
}

SampledFunction inverse_discrete_fourier(const SampledFunction& spectrum, int sign, double x_start) {
  if (sign != 1 && sign != -1) throw DomainError("inverse_discrete_fourier: sign must be +1 or -1");
  SampledFunction back = discrete_fourier(spectrum, -sign, x_start);
  std::vector<Complex> v = back.values();
  for (auto& z : v) z /= 2.0 * kPi;
  return SampledFunction(back.grid(), std::move(v));
}

}  // namespace flatproj
