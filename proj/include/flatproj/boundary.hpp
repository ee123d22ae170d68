#pragma once

#include <vector>

#include "flatproj/numerics.hpp"
#include "flatproj/projector.hpp"

namespace flatproj {

enum class Polarization { TE, TM };

/// Plane wave of angular frequency ω incident from the upper medium (z > 0,
/// permittivity ε₁) at angle α onto the lower medium (z < 0, ε₂).
struct InterfaceScenario {
  double omega = 1.0;
  double alpha = 0.0;
  Polarization polarization = Polarization::TE;
  double eps1 = 1.0;
  Complex eps2{4.0, 0.0};
  double c = 1.0;

  void validate() const;
  /// Vacuum wavelength 2πc/ω.
  double wavelength() const;
  /// Free-space wavenumber ω/c.
  double k0() const;
};

struct LayerDepths {
  double a;
  double b;
};

/// Uncertainty-principle depths a = c/(ε₁ ω cos α), b = a·√(ε₁/|ε₂|).
/// Throws DomainError near grazing incidence.
LayerDepths layer_depths(const InterfaceScenario& s);

/// Amplitudes of the incident, reflected, transmitted and near-surface parts
/// of one field component, plus the flattening of the interface.
struct FieldDecomposition {
  Complex incident{};
  Complex reflected{};
  Complex transmitted{};
  Complex near_field{};
  FlatteningParams flattening = FlatteningParams::symmetric(0.0);
};

/// (V_I + V_R)·ϑ(z|a) + V_T·ϑ(−z|b) + V₀·ζ_{a,b}(z). With a = b = 0 this is
/// the sharp two-term form.
Complex decompose_field(const FieldDecomposition& amplitudes, double z);

/// |V_I + V_R|²·ϑ(z|a) + |V_T|²·ϑ(−z|b) + |V₀|²·ζ_{a,b}(z).
double intensity_decomposition(const FieldDecomposition& amplitudes, double z);

enum class LayerKind { Electric, Magnetic };

/// ρ₀(z) = strength·κ(z)/(4π): induced charge density of the double layer of
/// the given strength (D₀z or B₀z). Throws EvaluationError outside the
/// transient zone.
double double_layer_density(double strength, const FlatteningParams& p, double z);

/// Magnetic counterpart of double_layer_density with its own depths (a′, b′).
double magnetic_layer_density(double strength, const FlatteningParams& p, double z);

/// Balance of the divergence equation at z:
/// strength·[δ(z − a|a) − δ(z + b|b)] + 4π·ρ₀(z)·ζ(z). Zero up to rounding.
double layer_balance_residual(double strength, const FlatteningParams& p, double z);

/// z-interval on which ζ exceeds `level`, found by bisection from the origin.
struct TransientZone {
  double lower;
  double upper;
};
TransientZone transient_zone(const FlatteningParams& p, double level = 1e-6);

struct DoubleLayerResult {
  double strength;
  SampledFunction charge_density_profile;
  LayerKind kind;
};

/// Samples the induced density over `grid`, which must lie inside the
/// transient zone.
DoubleLayerResult double_layer_profile(double strength, const FlatteningParams& p, LayerKind kind,
                                       const Grid& grid);

struct ReflectionResult {
  Complex r;
  Complex t;
};

/// Sharp-interface amplitude coefficients in the tilted-admittance convention
/// (η = n cos θ for TE, n/cos θ for TM): r = (η₁ − η₂)/(η₁ + η₂),
/// t = 2η₁/(η₁ + η₂), both ratios of tangential electric field. For TE these
/// are the usual Fresnel ratios; for TM, r is the negative of the
/// magnetic-field Fresnel ratio. Beyond the critical angle |r| = 1.
ReflectionResult fresnel_coefficients(const InterfaceScenario& s);

/// Power transmittance Re(η₂/η₁)·|t|² matching the admittance convention.
double transmittance(const InterfaceScenario& s, Complex t);

/// One homogeneous slab of a stratified stack.
struct Slab {
  Complex eps;
  double thickness;
};

/// Response of a stack of slabs between a lossless incidence medium and a
/// substrate, by the 2×2 characteristic-matrix method. `slabs` are ordered
/// from the incidence side.
struct StackResponse {
  Complex r;
  Complex t;
  /// |r|² + Re(η_s/η_i)|t|² − 1 (zero for lossless stacks).
  double energy_residual;
  /// Transmitted wave in the substrate is evanescent (decaying branch).
  bool evanescent;
};

StackResponse stack_response(double incidence_eps, const std::vector<Slab>& slabs,
                             Complex substrate_eps, double alpha, Polarization pol, double k0);

struct GradedResult {
  Complex r;
  Complex t;
  double energy_residual;
  int slices;
  bool evanescent;
};

/// Slices used to discretise ε(z) = ε₂ + (ε₁ − ε₂)·ϑ(z|a) over
/// [−(b + 8·max(a, b)), a + 8·max(a, b)], midpoint values. Both depths must be
/// positive.
std::vector<Slab> graded_slabs(const InterfaceScenario& s, const FlatteningParams& p, int slices);

/// Reflection and transmission of the flattened interface, both referred to
/// the plane z = 0 like the sharp coefficients. The slice count
/// is doubled until successive r differ by less than `tolerance`; throws
/// ConvergenceError if that needs more than `max_slices`.
GradedResult graded_interface_reflection(const InterfaceScenario& s, const FlatteningParams& p,
                                         int slices, double tolerance = 1e-6,
                                         int max_slices = 1 << 20);

}  // namespace flatproj
