#include "flatproj/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flatproj/errors.hpp"
#include "flatproj/evolution.hpp"

namespace flatproj {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

// Normal wave-number component q = √(ε − ε₁ sin²α) in units of k0, on the
// branch that decays away from the interface (Im q ≥ 0, Re q ≥ 0 if real).
Complex normal_component(Complex eps, double incidence_eps, double alpha) {
  const double s = std::sin(alpha);
  Complex q = std::sqrt(eps - incidence_eps * s * s);
  if (q.imag() < 0.0 || (q.imag() == 0.0 && q.real() < 0.0)) q = -q;
  return q;
}

Complex admittance(Complex eps, Complex q, Polarization pol) {
  return pol == Polarization::TE ? q : eps / q;
}

struct Matrix2 {
  Complex m11{1.0}, m12{}, m21{}, m22{1.0};

  Matrix2 operator*(const Matrix2& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22, m21 * o.m11 + m22 * o.m21,
            m21 * o.m12 + m22 * o.m22};
  }
};

void require_zone(const FlatteningParams& p, const char* where) {
  if (!(p.a > 0.0) || !(p.b > 0.0)) {
    throw DomainError(std::string(where) + ": layer depths must be positive");
  }
}

}  // namespace

void InterfaceScenario::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("InterfaceScenario: omega must be positive");
  if (!(alpha >= 0.0 && alpha < 0.5 * kPi)) {
    throw DomainError("InterfaceScenario: alpha must lie in [0, pi/2)");
  }
  if (!(eps1 > 0.0) || !std::isfinite(eps1)) throw DomainError("InterfaceScenario: eps1 must be positive");
  if (!std::isfinite(eps2.real()) || !std::isfinite(eps2.imag()) || eps2.imag() < 0.0) {
    throw DomainError("InterfaceScenario: eps2 must be finite with non-negative imaginary part");
  }
  if (eps2 == Complex{}) throw DomainError("InterfaceScenario: eps2 must be non-zero");
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("InterfaceScenario: c must be positive");
}

double InterfaceScenario::wavelength() const { return 2.0 * kPi * c / omega; }

double InterfaceScenario::k0() const { return omega / c; }

LayerDepths layer_depths(const InterfaceScenario& s) {
  s.validate();
  const double cos_alpha = std::cos(s.alpha);
  if (cos_alpha <= 1e-9) throw DomainError("layer_depths: depth diverges at grazing incidence");
  const double a = s.c / (s.eps1 * s.omega * cos_alpha);
  const double b = a * std::sqrt(s.eps1 / std::abs(s.eps2));
  return {a, b};
}

Complex decompose_field(const FieldDecomposition& v, double z) {
  FlatteningParams lower = v.flattening;
  lower.a = v.flattening.b;
  return (v.incident + v.reflected) * theta_flat(z, v.flattening) +
         v.transmitted * theta_flat(-z, lower) + v.near_field * zeta_flat(z, v.flattening);
}

double intensity_decomposition(const FieldDecomposition& v, double z) {
  FlatteningParams lower = v.flattening;
  lower.a = v.flattening.b;
  return std::norm(v.incident + v.reflected) * theta_flat(z, v.flattening) +
         std::norm(v.transmitted) * theta_flat(-z, lower) +
         std::norm(v.near_field) * zeta_flat(z, v.flattening);
}

double double_layer_density(double strength, const FlatteningParams& p, double z) {
  require_zone(p, "double_layer_density");
  if (!std::isfinite(strength)) throw DomainError("double_layer_density: strength must be finite");
  const double k = kappa(z, p);
  return strength * k / (4.0 * kPi);
}

double magnetic_layer_density(double strength, const FlatteningParams& p, double z) {
  require_zone(p, "magnetic_layer_density");
  if (!std::isfinite(strength)) throw DomainError("magnetic_layer_density: strength must be finite");
  return strength * kappa(z, p) / (4.0 * kPi);
}

double layer_balance_residual(double strength, const FlatteningParams& p, double z) {
  FlatteningParams lower = p;
  lower.a = p.b;
  const double sheet = strength * (delta_seq(z - p.a, p) - delta_seq(z + p.b, lower));
  return sheet + 4.0 * kPi * double_layer_density(strength, p, z) * zeta_flat(z, p);
}

TransientZone transient_zone(const FlatteningParams& p, double level) {
  require_zone(p, "transient_zone");
  if (!(level > kTransientZoneFloor && level < zeta_flat(0.0, p))) {
    throw DomainError("transient_zone: level must lie between the floor and zeta(0)");
  }
  auto edge = [&](double direction) {
    double inside = 0.0;
    double outside = direction * std::max(p.a, p.b);
    while (zeta_flat(outside, p) >= level) {
      inside = outside;
      outside *= 2.0;
      if (!std::isfinite(outside)) throw EvaluationError("transient_zone: zone edge not bracketed");
    }
    for (int it = 0; it < 200 && std::abs(outside - inside) > 1e-14 * std::abs(outside); ++it) {
      const double mid = 0.5 * (inside + outside);
      (zeta_flat(mid, p) >= level ? inside : outside) = mid;
    }
    return inside;
  };
  return {edge(-1.0), edge(1.0)};
}

DoubleLayerResult double_layer_profile(double strength, const FlatteningParams& p, LayerKind kind,
                                       const Grid& grid) {
  auto density = kind == LayerKind::Electric ? double_layer_density : magnetic_layer_density;
  SampledFunction profile =
      SampledFunction::sample_real(grid, [&](double z) { return density(strength, p, z); });
  return {strength, std::move(profile), kind};
}

ReflectionResult fresnel_coefficients(const InterfaceScenario& s) {
  s.validate();
  const Complex eps1{s.eps1, 0.0};
  const Complex q1 = normal_component(eps1, s.eps1, s.alpha);
  const Complex q2 = normal_component(s.eps2, s.eps1, s.alpha);
  const Complex eta1 = admittance(eps1, q1, s.polarization);
  const Complex eta2 = admittance(s.eps2, q2, s.polarization);
  return {(eta1 - eta2) / (eta1 + eta2), 2.0 * eta1 / (eta1 + eta2)};
}

double transmittance(const InterfaceScenario& s, Complex t) {
  s.validate();
  const Complex eps1{s.eps1, 0.0};
  const Complex eta1 = admittance(eps1, normal_component(eps1, s.eps1, s.alpha), s.polarization);
  const Complex eta2 = admittance(s.eps2, normal_component(s.eps2, s.eps1, s.alpha), s.polarization);
  return (eta2 / eta1).real() * std::norm(t);
}

StackResponse stack_response(double incidence_eps, const std::vector<Slab>& slabs,
                             Complex substrate_eps, double alpha, Polarization pol, double k0) {
  if (!(incidence_eps > 0.0)) throw DomainError("stack_response: incidence medium must be lossless");
  if (!(k0 > 0.0)) throw DomainError("stack_response: k0 must be positive");

  const Complex eps_in{incidence_eps, 0.0};
  const Complex eta_in = admittance(eps_in, normal_component(eps_in, incidence_eps, alpha), pol);
  const Complex q_sub = normal_component(substrate_eps, incidence_eps, alpha);
  const Complex eta_sub = admittance(substrate_eps, q_sub, pol);

  Matrix2 total;
  for (const Slab& slab : slabs) {
    if (!(slab.thickness >= 0.0)) throw DomainError("stack_response: negative slab thickness");
    if (slab.thickness == 0.0) continue;
    const Complex q = normal_component(slab.eps, incidence_eps, alpha);
    const Complex eta = admittance(slab.eps, q, pol);
    const Complex phase = k0 * q * slab.thickness;
    const Complex c = std::cos(phase);
    const Complex sn = std::sin(phase);
    total = total * Matrix2{c, -kI * sn / eta, -kI * eta * sn, c};
  }

  const Complex b = total.m11 + total.m12 * eta_sub;
  const Complex c = total.m21 + total.m22 * eta_sub;
  const Complex den = eta_in * b + c;
  StackResponse out;
  out.r = (eta_in * b - c) / den;
  out.t = 2.0 * eta_in / den;
  out.energy_residual = std::norm(out.r) + (eta_sub / eta_in).real() * std::norm(out.t) - 1.0;
  out.evanescent = q_sub.real() == 0.0 && q_sub.imag() > 0.0;
  return out;
}

std::vector<Slab> graded_slabs(const InterfaceScenario& s, const FlatteningParams& p, int slices) {
  s.validate();
  if (slices < 16) throw DomainError("graded_interface_reflection: at least 16 slices are required");
  if (!(p.a > 0.0) || !(p.b > 0.0)) throw DomainError("graded_slabs: depths must be positive");
  const double widest = std::max(p.a, p.b);
  const double top = p.a + 8.0 * widest;
  const double bottom = -(p.b + 8.0 * widest);
  const double thickness = (top - bottom) / slices;

  std::vector<Slab> slabs(static_cast<std::size_t>(slices));
  for (int i = 0; i < slices; ++i) {
    const double z_mid = top - (i + 0.5) * thickness;
    slabs[i] = {graded_permittivity_profile(Complex(s.eps1), s.eps2, p, z_mid), thickness};
  }
  return slabs;
}

GradedResult graded_interface_reflection(const InterfaceScenario& s, const FlatteningParams& p,
                                         int slices, double tolerance, int max_slices) {
  // The stack response is referred to its outer faces; move both reference
  // planes back to z = 0 so r and t compare directly with the sharp values.
  const double widest = std::max(p.a, p.b);
  const double top = p.a + 8.0 * widest;
  const double depth = p.b + 8.0 * widest;
  const Complex q1 = normal_component(Complex(s.eps1), s.eps1, s.alpha);
  const Complex q2 = normal_component(s.eps2, s.eps1, s.alpha);
  const Complex r_shift = std::exp(-2.0 * kI * s.k0() * q1 * top);
  const Complex t_shift = std::exp(-kI * s.k0() * (q1 * top + q2 * depth));
  auto solve = [&](int n) {
    StackResponse out = stack_response(s.eps1, graded_slabs(s, p, n), s.eps2, s.alpha, s.polarization, s.k0());
    out.r *= r_shift;
    out.t *= t_shift;
    return out;
  };
  int n = slices;
  StackResponse coarse = solve(n);
  for (;;) {
    if (n > max_slices / 2) {
      throw ConvergenceError("graded_interface_reflection: reflection not settled at " +
                             std::to_string(n) + " slices");
    }
    StackResponse fine = solve(2 * n);
    n *= 2;
    if (std::abs(fine.r - coarse.r) < tolerance) {
      return {fine.r, fine.t, fine.energy_residual, n, fine.evanescent};
    }
    coarse = fine;
  }
}

}  // namespace flatproj
