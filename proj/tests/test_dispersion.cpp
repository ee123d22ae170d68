#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "flatproj/dispersion.hpp"
#include "flatproj/errors.hpp"
#include "support.hpp"

using namespace flatproj;
using testing::check_close;
using testing::check_rel;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

SusceptibilityModel oscillator(double wp, double w0, double gamma) {
  return {wp, w0, gamma, SusceptibilityKind::LorentzOscillator};
}

SampledFunction eps2_samples(const SusceptibilityModel& m, const Grid& g) {
  return SampledFunction::sample_real(g, [&](double w) { return susceptibility_eval(m, w).imag(); });
}

SampledFunction eps1_samples(const SusceptibilityModel& m, const Grid& g) {
  return SampledFunction::sample_real(g, [&](double w) { return susceptibility_eval(m, w).real(); });
}

SampledFunction lorentzian(double span, double h) {
  return SampledFunction::sample_real(Grid::stepped(-span, span, h), [](double q) { return 1.0 / (1.0 + q * q); });
}

}  // namespace

TEST_CASE("susceptibility closed forms") {
  const auto m = oscillator(1.0, 2.0, 0.1);
  check_close(susceptibility_eval(m, 0.0), Complex(1.25, 0.0), 1e-15);
  check_close(susceptibility_eval(m, 2.0).imag(), 5.0, 1e-12);
  const SusceptibilityModel drude{2.0, 0.0, 0.5, SusceptibilityKind::Drude};
  check_close(susceptibility_eval(drude, 1.0), 1.0 + 4.0 / Complex(-1.0, -0.5), 1e-14);
  CHECK_THROWS_AS(susceptibility_eval(drude, 0.0), DomainError);
  CHECK_THROWS_AS(susceptibility_eval(m, -1.0), DomainError);
  CHECK_THROWS_AS(oscillator(1.0, 0.0, 0.1).validate(), DomainError);
  CHECK_THROWS_AS((SusceptibilityModel{1.0, 1.0, 0.1, SusceptibilityKind::Drude}.validate()), DomainError);
}

TEST_CASE("f-sum rule") {
  const auto m = oscillator(1.0, 2.0, 0.1);
  auto f = [&](double w) { return w * susceptibility_eval(m, w).imag(); };
  // Split at the resonance; the outer piece is mapped to a finite interval.
  const double value = GK::integrate(f, 0.0, 2.0, 20, 1e-12) + GK::integrate(f, 2.0, 4.0, 20, 1e-12) +
                       GK::integrate(f, 4.0, std::numeric_limits<double>::infinity(), 20, 1e-12);
  check_close(value, kPi / 2.0, 1e-3);

  // Sampled on the default grid, the missing tail is ≈ γω_p²/η_max.
  const Grid g = m.default_frequency_grid();
  const auto eta_eps2 = SampledFunction::sample_real(g, f);
  check_close(integrate(eta_eps2).real() + m.damping / g.last(), kPi / 2.0, 1e-4);
}

TEST_CASE("property: passivity of the oscillator") {
  auto g = testing::rng(31337);
  for (int i = 0; i < 5000; ++i) {
    const auto m = oscillator(testing::uniform(g, 0.1, 3), testing::uniform(g, 0.1, 3), testing::uniform(g, 1e-3, 1));
    CHECK(susceptibility_eval(m, testing::uniform(g, 0.0, 50.0)).imag() >= 0.0);
  }
}

TEST_CASE("default frequency grid") {
  const Grid g = oscillator(1.0, 2.0, 0.3).default_frequency_grid();
  CHECK(g.start() == 0.0);
  check_close(g.step(), 0.01, 1e-15);
  check_close(g.last(), 80.0, 1e-9);
}

TEST_CASE("flattened Hilbert transform at a = 0") {
  const auto f = lorentzian(50.0, 0.01);
  // (1/πi)·PV∫ f/(q − 2) = i·k/(1 + k²) at k = 2.
  check_close(f_hilbert(f, 0.0, 2.0), Complex(0.0, 0.4), 1e-3);
  for (double k : {-3.0, -0.5, 0.0, 1.0, 4.0}) check_close(f_hilbert(f, 0.0, k), Complex(0.0, k / (1 + k * k)), 1e-3);
}

TEST_CASE("kernel damping far from the pole") {
  // Bump supported on [55, 65], pole at k = 2: every |q − k| > 50.
  const auto f = SampledFunction::sample_real(Grid::stepped(-70.0, 70.0, 0.01), [](double q) {
    return std::abs(q - 60.0) < 5.0 ? std::pow(std::cos(kPi * (q - 60.0) / 10.0), 2) : 0.0;
  });
  const double plain = std::abs(f_hilbert(f, 0.0, 2.0));
  const double damped = std::abs(f_hilbert(f, 0.2, 2.0));
  CHECK(plain > 0.0);
  CHECK(damped <= std::exp(-10.0) * plain);
}

TEST_CASE("property: damping bound grows with the depth") {
  const double k = 0.0;
  const double gap = 20.0;
  const auto f = SampledFunction::sample_real(Grid::stepped(-60.0, 60.0, 0.01), [&](double q) {
    return q > k + gap ? std::exp(-0.05 * (q - k - gap)) : 0.0;
  });
  for (auto [a1, a2] : {std::pair{0.01, 0.05}, std::pair{0.05, 0.2}, std::pair{0.0, 0.1}}) {
    auto envelope = [&](double q) { return q > k + gap ? std::exp(-0.05 * (q - k - gap)) * std::exp(-a1 * (q - k)) / (q - k) : 0.0; };
    const double bound = GK::integrate(envelope, k + gap, 60.0, 20, 1e-12) / kPi;
    CHECK(std::abs(f_hilbert(f, a2, k)) <= std::exp(-(a2 - a1) * gap) * bound * (1 + 1e-6));
  }
}

TEST_CASE("small-depth expansion of the flattened Hilbert transform") {
  const auto f = lorentzian(50.0, 0.01);
  for (double k : {0.5, 2.0}) {
    const double a = 1e-3;
    const Complex exact = f_hilbert(f, a, k) - f_hilbert(f, 0.0, k);
    const Complex first = subtraction_correction(f, a, k);
    INFO("k = " << k);
    CHECK(std::abs(exact - first) <= 0.05 * std::abs(first));
    // The expansion's a-dependent part is the same term.
    check_close(subtraction_expansion(f, a, k) - subtraction_expansion(f, 0.0, k), first, 1e-15);
  }
}

TEST_CASE("expansion error is second order in the depth") {
  const auto m = oscillator(1.0, 2.0, 0.3);
  // ε₂ is odd in η; sample the full line.
  const auto f = SampledFunction::sample_real(Grid::stepped(-80.0, 80.0, 0.01), [&](double w) {
    return w >= 0 ? susceptibility_eval(m, w).imag() : -susceptibility_eval(m, -w).imag();
  });
  auto err = [&](double a) {
    return std::abs(f_hilbert(f, a, 1.0) - f_hilbert(f, 0.0, 1.0) - subtraction_correction(f, a, 1.0));
  };
  const double ratio = err(1e-2) / err(5e-3);
  INFO("ratio " << ratio);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("subtraction expansion structure") {
  const auto f = lorentzian(30.0, 0.01);
  check_close(subtraction_expansion(f, 0.0, 0.7), pv_integral(f, 0.7) / kPi, 1e-15);
  check_close(subtraction_correction(f, 0.05, 0.0).imag(), 0.0, 1e-10);
  CHECK(std::abs(subtraction_correction(f, 0.05, 0.0).real()) > 0.0);
}

TEST_CASE("property: linearity of the transforms") {
  auto g = testing::rng(2718);
  const Grid half = Grid::stepped(0.0, 20.0, 0.02);
  const Grid full = Grid::stepped(-20.0, 20.0, 0.02);
  for (int trial = 0; trial < 5; ++trial) {
    const double c1 = testing::uniform(g, -2, 2), c2 = testing::uniform(g, -2, 2);
    const double s1 = testing::uniform(g, 0.5, 3), s2 = testing::uniform(g, 0.5, 3);
    auto u = [&](double x) { return std::exp(-x * x / s1) * std::cos(x); };
    auto v = [&](double x) { return 1.0 / (1.0 + s2 * x * x); };
    auto mix = [&](double x) { return c1 * u(x) + c2 * v(x); };
    const double w = testing::uniform(g, 0.5, 5.0);
    const double a = testing::uniform(g, 0.0, 0.3);

    auto lin = [&](auto&& op, const Grid& grid) {
      const Complex lhs = op(SampledFunction::sample_real(grid, mix));
      const Complex rhs = c1 * op(SampledFunction::sample_real(grid, u)) + c2 * op(SampledFunction::sample_real(grid, v));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    };
    lin([&](const SampledFunction& f) { return f_hilbert(f, a, w); }, full);
    lin([&](const SampledFunction& f) { return subtraction_expansion(f, a, w); }, full);
    lin([&](const SampledFunction& f) { return Complex(kk_real_from_imag(f, a, w)); }, half);
    lin([&](const SampledFunction& f) { return Complex(kk_imag_from_real(f, w, {KKIntegrand::AsPrinted, a})); }, half);
  }
}

TEST_CASE("real part from imaginary part") {
  const Grid g = Grid::stepped(0.0, 80.0, 0.01);
  check_close(kk_real_from_imag(SampledFunction::sample_real(g, [](double) { return 0.0; }), 0.0, 1.3), 0.0, 0.0);

  const auto m = oscillator(1.0, 2.0, 0.3);
  const auto eps2 = eps2_samples(m, g);
  const double exact = susceptibility_eval(m, 1.0).real() - 1.0;
  check_rel(kk_real_from_imag(eps2, 0.0, 1.0), exact, 1e-2);

  double num = 0.0, den = 0.0;
  for (int i = 0; i <= 98; ++i) {
    const double w = 0.1 + 0.05 * i;
    const double e1 = susceptibility_eval(m, w).real();
    const double r = 1.0 + kk_real_from_imag(eps2, 0.0, w);
    num += (r - e1) * (r - e1);
    den += e1 * e1;
  }
  CHECK(std::sqrt(num / den) < 1e-2);
}

TEST_CASE("subtraction shift is frequency independent") {
  const Grid g = Grid::stepped(0.0, 80.0, 0.01);
  const auto m = oscillator(1.0, 2.0, 0.3);
  const auto eps2 = eps2_samples(m, g);
  const double a = 0.05;
  const double shift = kk_subtraction_shift(eps2, a);
  for (double w : {0.3, 1.0, 1.9, 2.6, 4.4}) {
    check_close(kk_real_from_imag(eps2, a, w) - kk_real_from_imag(eps2, 0.0, w), shift, 1e-8 * std::abs(shift));
  }
  auto f = [&](double w) { return susceptibility_eval(m, w).imag(); };
  const double oracle = 2.0 * a / kPi *
                        (GK::integrate(f, 0.0, 2.0, 20, 1e-13) + GK::integrate(f, 2.0, 80.0, 20, 1e-13));
  check_rel(shift, oracle, 1e-6);
}

TEST_CASE("imaginary part from real part") {
  const Grid g = Grid::stepped(0.0, 80.0, 0.01);
  const auto vacuum = SampledFunction::sample_real(g, [](double) { return 1.0; });
  // Third-order principal-value quadrature: about 1e-7 at this step.
  check_close(kk_imag_from_real(vacuum, 1.0, {KKIntegrand::AsPrinted, 0.0}), 0.0, 5e-7);
  check_close(kk_imag_from_real(vacuum, 1.0, {KKIntegrand::Standard, 0.0}), 0.0, 0.0);
  check_close(kk_imag_from_real(vacuum, 2.0, {KKIntegrand::AsPrinted, 0.1}), -0.4 / kPi, 5e-7);

  const auto m = oscillator(1.0, 2.0, 0.3);
  const auto eps1 = eps1_samples(m, g);
  check_rel(kk_imag_from_real(eps1, 1.5, {}), susceptibility_eval(m, 1.5).imag(), 2e-2);
  check_rel(kk_imag_from_real(eps1, 2.0, {}), susceptibility_eval(m, 2.0).imag(), 2e-2);
  CHECK(kk_imag_from_real(eps1, 0.0, {}) == 0.0);
}

TEST_CASE("dispersion domain checks") {
  const auto f = SampledFunction::sample_real(Grid::stepped(-1.0, 1.0, 0.1), [](double) { return 1.0; });
  CHECK_THROWS_AS(kk_real_from_imag(f, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(kk_imag_from_real(f, 0.5, {}), DomainError);
  CHECK_THROWS_AS(f_hilbert(f, -0.1, 0.0), DomainError);
  CHECK_THROWS_AS(subtraction_correction(f, 0.1, 3.0), DomainError);
}
