#include "flatproj/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flatproj/errors.hpp"

namespace flatproj {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

void require_flattening(double a, const char* where) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw DomainError(std::string(where) + ": flattening depth must be non-negative");
  }
}

void require_half_range(const SampledFunction& f, const char* where) {
  if (f.grid().start() < 0.0) {
    throw DomainError(std::string(where) + ": samples must lie on [0, eta_max]");
  }
}

}  // namespace

void SusceptibilityModel::validate() const {
  if (!(plasma_frequency >= 0.0) || !(resonance >= 0.0) || !(damping >= 0.0) ||
      !std::isfinite(plasma_frequency) || !std::isfinite(resonance) || !std::isfinite(damping)) {
    throw DomainError("SusceptibilityModel: frequencies must be finite and non-negative");
  }
  if (kind == SusceptibilityKind::LorentzOscillator && !(resonance > 0.0)) {
    throw DomainError("SusceptibilityModel: a Lorentz oscillator needs a positive resonance");
  }
  if (kind == SusceptibilityKind::Drude && resonance != 0.0) {
    throw DomainError("SusceptibilityModel: the Drude model has zero resonance frequency");
  }
}

Grid SusceptibilityModel::default_frequency_grid() const {
  validate();
  const double scale = std::max({resonance, plasma_frequency, damping});
  double width = damping;
  if (resonance > 0.0) width = damping > 0.0 ? std::min(damping, resonance) : resonance;
  if (!(width > 0.0) || !(scale > 0.0)) {
    throw DomainError("SusceptibilityModel: cannot size a frequency grid for this model");
  }
  return Grid::stepped(0.0, 40.0 * scale, width / 30.0);
}

Complex susceptibility_eval(const SusceptibilityModel& model, double omega) {
  model.validate();
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw DomainError("susceptibility_eval: frequency must be finite and non-negative");
  }
  const double w0 = model.kind == SusceptibilityKind::Drude ? 0.0 : model.resonance;
  const Complex den{w0 * w0 - omega * omega, -model.damping * omega};
  if (den == Complex{}) {
    throw DomainError("susceptibility_eval: model is singular at omega = " + std::to_string(omega));
  }
  const double wp2 = model.plasma_frequency * model.plasma_frequency;
  return 1.0 + wp2 / den;
}

Complex f_hilbert(const SampledFunction& f, double a, double k) {
  require_flattening(a, "f_hilbert");
  std::optional<KernelWeight> weight;
  if (a > 0.0) {
    weight = [a, k](double q) {
      const double d = q - k;
      return std::exp(Complex(-a * std::abs(d), a * d));
    };
  }
  return pv_integral(f, k, weight) / (kPi * kI);
}

Complex subtraction_correction(const SampledFunction& f, double a, double k) {
  require_flattening(a, "subtraction_correction");
  const Grid& g = f.grid();
  if (!(k >= g.start() && k <= g.last())) {
    throw DomainError("subtraction_correction: k outside the grid span");
  }
  if (a == 0.0) return {};
  const Complex below = integrate_to(f, k);
  const Complex above = integrate(f) - below;
  return (a / kPi) * ((1.0 - kI) * below + (1.0 + kI) * above);
}

Complex subtraction_expansion(const SampledFunction& f, double a, double k) {
  return pv_integral(f, k) / kPi + subtraction_correction(f, a, k);
}

double kk_subtraction_shift(const SampledFunction& eps2, double a) {
  require_flattening(a, "kk_subtraction_shift");
  require_half_range(eps2, "kk_subtraction_shift");
  if (a == 0.0) return 0.0;
  return 2.0 * a / kPi * integrate(eps2).real();
}

double kk_real_from_imag(const SampledFunction& eps2, double a, double omega) {
  require_flattening(a, "kk_real_from_imag");
  require_half_range(eps2, "kk_real_from_imag");
  // η/(η² − ω²) = [η/(η + ω)]·1/(η − ω)
  const KernelWeight weight = [omega](double eta) { return Complex(eta / (eta + omega)); };
  const double principal = pv_integral(eps2, omega, weight).real();
  return 2.0 / kPi * principal + kk_subtraction_shift(eps2, a);
}

double kk_imag_from_real(const SampledFunction& eps1, double omega, const KKMode& mode) {
  const double a = mode.flattening;
  require_flattening(a, "kk_imag_from_real");
  require_half_range(eps1, "kk_imag_from_real");
  if (omega == 0.0) return 0.0;

  const Grid& g = eps1.grid();
  std::vector<Complex> phi = eps1.values();
  if (mode.integrand == KKIntegrand::Standard) {
    for (auto& v : phi) v -= 1.0;
  }
  const SampledFunction integrand(g, std::move(phi));

  const KernelWeight weight = [omega](double eta) { return Complex(1.0 / (eta + omega)); };
  double principal = pv_integral(integrand, omega, weight).real();

  // Tail beyond η_max with φ held at its last value:
  // ∫_M^∞ dη/(η² − ω²) = ln((M + ω)/(M − ω))/(2ω).
  const double top = g.last();
  const double tail_value = integrand[integrand.size() - 1].real();
  principal += tail_value * std::log1p(2.0 * omega / (top - omega)) / (2.0 * omega);

  double result = -2.0 * omega / kPi * principal;
  if (a > 0.0) {
    const double upper = std::min(omega, top);
    double below = 0.0;
    if (upper > g.start()) below = integrate_to(eps1, upper).real();
    result -= 2.0 * a / kPi * below;
  }
  return result;
}

}  // namespace flatproj
