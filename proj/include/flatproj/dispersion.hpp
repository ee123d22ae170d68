#pragma once

#include "flatproj/numerics.hpp"

namespace flatproj {

enum class SusceptibilityKind { LorentzOscillator, Drude };

/// Single-resonance dielectric model ε(ω) = 1 + ω_p²/(ω₀² − ω² − iγω).
/// Drude is the ω₀ = 0 specialisation.
struct SusceptibilityModel {
  double plasma_frequency = 1.0;
  double resonance = 1.0;
  double damping = 0.1;
  SusceptibilityKind kind = SusceptibilityKind::LorentzOscillator;

  void validate() const;
  /// Frequency grid on [0, η_max] with η_max = 40·max(ω₀, ω_p, γ) and step
  /// min(γ, ω₀)/30, fine enough to resolve the resonance line.
  Grid default_frequency_grid() const;
};

Complex susceptibility_eval(const SusceptibilityModel& model, double omega);

/// Integrand of the Kramers-Kronig imaginary-part reconstruction.
enum class KKIntegrand {
  AsPrinted,  ///< ε₁(η) in the principal-value term
  Standard,   ///< ε₁(η) − 1 in the principal-value term
};

/// Reconstruction choice for kk_imag_from_real: integrand convention and the
/// flattening depth a of the subtraction term.
struct KKMode {
  KKIntegrand integrand = KKIntegrand::Standard;
  double flattening = 0.0;
};

/// (1/πi)·PV ∫ f(q)·exp(ia(q − k) − a|q − k|)/(q − k) dq. a = 0 is the classic
/// Hilbert relation.
Complex f_hilbert(const SampledFunction& f, double a, double k);

/// The a-linear term of the kernel expansion, (a/π)∫ f(q)(1 + i·sgn(q − k)) dq.
Complex subtraction_correction(const SampledFunction& f, double a, double k);

/// Two-term expansion (1/π)·PV ∫ f/(q − k) dq + subtraction_correction(f, a, k).
/// The leading term carries 1/π rather than the 1/(πi) of f_hilbert, so only
/// differences in a are comparable with f_hilbert.
Complex subtraction_expansion(const SampledFunction& f, double a, double k);

/// ε₁(ω) − 1 from samples of ε₂ on [η₀ ≥ 0, η_max]:
/// (2/π)·PV ∫ η ε₂(η)/(η² − ω²) dη + (2a/π)∫ ε₂(η) dη.
double kk_real_from_imag(const SampledFunction& eps2, double a, double omega);

/// The ω-independent shift (2a/π)∫ ε₂(η) dη added by kk_real_from_imag.
double kk_subtraction_shift(const SampledFunction& eps2, double a);

/// ε₂(ω) from samples of ε₁ on [η₀ ≥ 0, η_max]:
/// −(2ω/π)·PV ∫ φ(η)/(η² − ω²) dη − (2a/π)∫₀^ω ε₁(η) dη, with a = mode.flattening
/// and φ = ε₁ (AsPrinted) or ε₁ − 1 (Standard). Beyond η_max, φ is held at its
/// last sample and the tail integral is added in closed form.
double kk_imag_from_real(const SampledFunction& eps1, double omega, const KKMode& mode = {});

}  // namespace flatproj
