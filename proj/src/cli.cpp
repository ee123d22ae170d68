#include "flatproj/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "flatproj/boundary.hpp"
#include "flatproj/dispersion.hpp"
#include "flatproj/errors.hpp"
#include "flatproj/evolution.hpp"
#include "flatproj/projector.hpp"

namespace flatproj::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string normalise_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw DomainError(key + ": expected a finite number, got '" + text + "'");
  }
  return v;
}

// Typed access to the resolved parameter map of one command.
class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& values) : values_(values) {}

  const std::string& text(const std::string& key) const { return values_.at(key); }

  double number(const std::string& key) const { return parse_number(key, text(key)); }

  double positive(const std::string& key) const {
    const double v = number(key);
    if (!(v > 0.0)) throw DomainError(key + ": must be positive");
    return v;
  }

  double non_negative(const std::string& key) const {
    const double v = number(key);
    if (!(v >= 0.0)) throw DomainError(key + ": must be non-negative");
    return v;
  }

  int integer(const std::string& key, int min_value) const {
    const double v = number(key);
    if (v != std::floor(v) || v < min_value || v > 1e9) {
      throw DomainError(key + ": expected an integer >= " + std::to_string(min_value));
    }
    return static_cast<int>(v);
  }

  std::string choice(const std::string& key, std::initializer_list<const char*> options) const {
    const std::string v = lower(text(key));
    for (const char* o : options) {
      if (v == o) return v;
    }
    std::string msg = key + ": expected one of";
    for (const char* o : options) msg += std::string(" ") + o;
    throw DomainError(msg + ", got '" + text(key) + "'");
  }

  // start:end:step
  Grid range(const std::string& key) const {
    const std::string& r = text(key);
    const auto c1 = r.find(':');
    const auto c2 = c1 == std::string::npos ? std::string::npos : r.find(':', c1 + 1);
    if (c2 == std::string::npos || r.find(':', c2 + 1) != std::string::npos) {
      throw DomainError(key + ": expected start:end:step, got '" + r + "'");
    }
    const double start = parse_number(key, trim(r.substr(0, c1)));
    const double stop = parse_number(key, trim(r.substr(c1 + 1, c2 - c1 - 1)));
    const double step = parse_number(key, trim(r.substr(c2 + 1)));
    if (!(step > 0.0) || !(stop > start)) throw DomainError(key + ": need end > start and step > 0");
    if ((stop - start) / step > 1e7) throw DomainError(key + ": more than 1e7 points");
    return Grid::stepped(start, stop, step);
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(key, trim(item)));
    if (out.empty()) throw DomainError(key + ": empty list");
    return out;
  }

 private:
  const std::map<std::string, std::string>& values_;
};

DeltaFamily family_of(const Params& p) {
  return p.choice("family", {"lorentz", "gauss"}) == "gauss" ? DeltaFamily::Gauss : DeltaFamily::Lorentz;
}

double relative_l2(const std::vector<double>& approx, const std::vector<double>& exact) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    num += (approx[i] - exact[i]) * (approx[i] - exact[i]);
    den += exact[i] * exact[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// Least-squares slope of log(err) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& err) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Table projector_table(const Params& p) {
  FlatteningParams fp;
  fp.family = family_of(p);
  fp.gauss_orientation = p.choice("orientation", {"corrected", "as-printed"}) == "as-printed"
                             ? GaussOrientation::AsPrinted
                             : GaussOrientation::Corrected;
  fp.a = p.positive("a");
  fp.b = p.positive("b");
  const Grid grid = p.range("range");
  FlatteningParams lower_side = fp;
  lower_side.a = fp.b;

  Table t;
  t.columns = {"z", "theta", "zeta", "kappa", "partition_residual"};
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double z = grid.point(i);
    const double th = theta_flat(z, fp);
    const double ze = zeta_flat(z, fp);
    double k = std::nan("");
    try {
      k = kappa(z, fp);
    } catch (const EvaluationError&) {
    }
    const double residual = th + theta_flat(-z, lower_side) + ze - 1.0;
    worst = std::max(worst, std::abs(residual));
    t.rows.push_back({z, th, ze, k, residual});
  }
  t.summary = {{"max_partition_residual", worst}};
  return t;
}

Table kk_table(const Params& p) {
  SusceptibilityModel model;
  const bool drude = p.choice("model", {"lorentz-osc", "drude"}) == "drude";
  model.kind = drude ? SusceptibilityKind::Drude : SusceptibilityKind::LorentzOscillator;
  model.plasma_frequency = p.positive("wp");
  model.resonance = drude ? 0.0 : p.positive("w0");
  model.damping = p.positive("gamma");
  const double a = p.non_negative("a");
  const KKIntegrand integrand =
      p.choice("mode", {"standard", "as-printed"}) == "as-printed" ? KKIntegrand::AsPrinted : KKIntegrand::Standard;
  const bool real_part = p.choice("direction", {"real", "imag"}) == "real";
  const Grid omegas = p.range("range");
  model.validate();

  Grid eta = model.default_frequency_grid();
  if (drude) eta = Grid(eta.step(), eta.step(), eta.count() - 1);
  if (omegas.start() <= eta.start() || omegas.last() >= eta.last()) {
    throw DomainError("range: frequencies must lie inside the model grid (" + std::to_string(eta.start()) +
                      ", " + std::to_string(eta.last()) + ")");
  }
  const auto eps = SampledFunction::sample(eta, [&](double w) { return susceptibility_eval(model, w); });
  std::vector<Complex> eps2_vals(eps.size()), eps1_vals(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    eps2_vals[i] = eps[i].imag();
    eps1_vals[i] = eps[i].real();
  }
  const SampledFunction eps2(eta, std::move(eps2_vals));
  const SampledFunction eps1(eta, std::move(eps1_vals));

  Table t;
  t.columns = real_part ? std::vector<std::string>{"omega", "eps1_recon", "eps1_exact", "abs_err"}
                        : std::vector<std::string>{"omega", "eps2_recon", "eps2_exact", "abs_err"};
  std::vector<double> recon, exact;
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < omegas.count(); ++i) {
    const double w = omegas.point(i);
    const Complex e = susceptibility_eval(model, w);
    const double r = real_part ? 1.0 + kk_real_from_imag(eps2, a, w) : kk_imag_from_real(eps1, w, {integrand, a});
    const double x = real_part ? e.real() : e.imag();
    recon.push_back(r);
    exact.push_back(x);
    if (x != 0.0) worst_rel = std::max(worst_rel, std::abs(r - x) / std::abs(x));
    t.rows.push_back({w, r, x, std::abs(r - x)});
  }
  t.summary = {{"rel_l2_err", relative_l2(recon, exact)}, {"max_rel_err", worst_rel}};
  if (real_part) t.summary.push_back({"subtraction_shift", kk_subtraction_shift(eps2, a)});
  return t;
}

Table hilbert_table(const Params& p) {
  const double a = p.non_negative("a");
  const double span = p.positive("span");
  const double step = p.positive("step");
  const Grid ks = p.range("range");
  if (span / step > 1e7) throw DomainError("span/step: more than 1e7 samples");
  if (!(ks.start() > -span && ks.last() < span)) throw DomainError("range: must lie inside (-span, span)");
  const Grid q = Grid::stepped(-span, span, step);
  const auto f = SampledFunction::sample_real(q, [](double x) { return 1.0 / (1.0 + x * x); });

  Table t;
  t.columns = {"k", "f_re", "f_im", "oracle_im", "expansion_re", "expansion_im"};
  double worst = 0.0;
  for (std::size_t i = 0; i < ks.count(); ++i) {
    const double k = ks.point(i);
    const Complex v = f_hilbert(f, a, k);
    const Complex e = subtraction_expansion(f, a, k);
    const double oracle = k / (1.0 + k * k);
    if (a == 0.0) worst = std::max(worst, std::abs(v - Complex(0.0, oracle)));
    t.rows.push_back({k, v.real(), v.imag(), oracle, e.real(), e.imag()});
  }
  if (a == 0.0) t.summary = {{"max_oracle_err", worst}};
  return t;
}

Table boundary_table(const Params& p) {
  InterfaceScenario s;
  s.polarization = p.choice("pol", {"te", "tm"}) == "tm" ? Polarization::TM : Polarization::TE;
  s.alpha = p.non_negative("alpha");
  s.eps1 = p.positive("eps1");
  s.eps2 = Complex(p.number("eps2"), p.non_negative("eps2_imag"));
  s.omega = p.positive("omega");
  s.c = p.positive("c");
  const double flatten = p.positive("flatten");
  const int slices = p.integer("slices", 16);
  const double tolerance = p.positive("tolerance");
  s.validate();

  FlatteningParams fp;
  fp.family = family_of(p);
  fp.a = flatten * s.wavelength();
  fp.b = fp.a * std::sqrt(s.eps1 / std::abs(s.eps2));

  const ReflectionResult sharp = fresnel_coefficients(s);
  const GradedResult g = graded_interface_reflection(s, fp, slices, tolerance);
  const double diff = std::abs(g.r - sharp.r);

  Table t;
  t.columns = {"flatten", "a", "b", "r_re", "r_im", "t_re", "t_im", "r_fresnel_re", "r_fresnel_im",
               "abs_diff", "energy_residual", "slices"};
  t.rows.push_back({flatten, fp.a, fp.b, g.r.real(), g.r.imag(), g.t.real(), g.t.imag(), sharp.r.real(),
                    sharp.r.imag(), diff, g.energy_residual, static_cast<double>(g.slices)});
  t.summary = {{"abs_diff", diff}, {"energy_residual", g.energy_residual}, {"evanescent", g.evanescent ? 1.0 : 0.0}};
  return t;
}

Table window_table(const Params& p) {
  WindowSpec w;
  w.half_width = p.positive("half_width");
  w.shift = p.number("shift");
  const std::string axis = p.choice("axis", {"time", "space", "frequency"});
  w.axis = axis == "space" ? WindowAxis::Space : axis == "frequency" ? WindowAxis::Frequency : WindowAxis::Time;
  w.validate();
  const FlatteningParams fp = FlatteningParams::symmetric(p.positive("a"), family_of(p));
  const Grid grid = p.text("range").empty() ? window_layer_grid(w, fp) : p.range("range");

  const SampledFunction layer = commutator_first_order(w, fp, grid);
  Table t;
  t.columns = {"u", "window", "smoothed", "commutator"};
  std::vector<Complex> magnitude(layer.size());
  for (std::size_t i = 0; i < grid.count(); ++i) {
    const double u = grid.point(i);
    magnitude[i] = std::abs(layer[i]);
    t.rows.push_back({u, window_projector(u, w), smoothed_window(u, w, fp), layer[i].real()});
  }
  t.summary = {{"l1_mass", integrate(SampledFunction(grid, std::move(magnitude))).real()}};
  return t;
}

Table evolve_series(const Params& p) {
  WindowSpec w;
  w.half_width = p.positive("half_width");
  const FlatteningParams fp = FlatteningParams::symmetric(p.positive("a"), family_of(p));
  const std::vector<double> taus = p.list("taus");
  for (double tau : taus) {
    if (!(tau > 0.0) || !(tau < 0.5 * w.half_width)) throw DomainError("taus: each shift must lie in (0, T/2)");
  }
  Table t;
  t.columns = {"tau", "err_order1", "err_order2"};
  std::vector<double> e1, e2;
  for (double tau : taus) {
    w.shift = tau;
    e1.push_back(shifted_window_vs_series(w, 1, fp));
    e2.push_back(shifted_window_vs_series(w, 2, fp));
    t.rows.push_back({tau, e1.back(), e2.back()});
  }
  if (taus.size() >= 2) t.summary = {{"slope_order1", loglog_slope(taus, e1)}, {"slope_order2", loglog_slope(taus, e2)}};
  return t;
}

Table evolve_duhamel(const Params& p) {
  const double half_width = p.positive("half_width");
  const double freq = p.positive("freq");
  const double dt = p.positive("step");
  const int pad = p.integer("pad", 1);
  const double peak_window = p.positive("peak_window");
  const long intervals = std::lround(2.0 * half_width / dt);
  if (std::abs(intervals * dt - 2.0 * half_width) > 1e-9 * half_width) {
    throw DomainError("step: must divide the window 2T");
  }
  if (static_cast<double>(intervals) * pad > 1e7) throw DomainError("step/pad: more than 1e7 samples");

  // Truncated signal with half weight at ±T, zero-padded to the right.
  const std::size_t n = static_cast<std::size_t>(intervals) * static_cast<std::size_t>(pad);
  std::vector<Complex> signal(n, Complex{});
  for (long j = 0; j <= intervals; ++j) {
    const double time = -half_width + j * dt;
    signal[static_cast<std::size_t>(j) % n] += ((j == 0 || j == intervals) ? 0.5 : 1.0) * std::cos(freq * time);
  }
  const SampledFunction spectrum = discrete_fourier(SampledFunction(Grid(-half_width, dt, n), std::move(signal)), 1);

  // Unwindowed spectrum π[δ(η − ν) + δ(η + ν)] on a lattice holding ±ν.
  const double h_eta = std::min(1e-2, freq / 100.0);
  const double reach = std::ceil((freq + peak_window + 1.0) / h_eta) * h_eta;
  const Grid eta(-reach, h_eta, static_cast<std::size_t>(std::lround(2.0 * reach / h_eta)) + 1);
  std::vector<Complex> spikes(eta.count(), Complex{});
  for (double centre : {-freq, freq}) {
    spikes[static_cast<std::size_t>(std::lround((centre + reach) / h_eta))] = kPi / h_eta;
  }
  const SampledFunction f_eta(eta, std::move(spikes));
  const double nu = std::lround(freq / h_eta) * h_eta;

  auto exact = [&](double w) {
    auto term = [&](double d) { return d == 0.0 ? half_width : std::sin(d * half_width) / d; };
    return term(w - nu) + term(w + nu);
  };

  Table t;
  t.columns = {"omega", "duhamel", "fft", "exact"};
  std::vector<double> duhamel, fft;
  for (std::size_t m = 0; m < spectrum.size(); ++m) {
    const double w = spectrum.grid().point(m);
    if (std::abs(w - freq) > peak_window) continue;
    const double d = duhamel_spectrum(f_eta, half_width, w).real();
    duhamel.push_back(d);
    fft.push_back(spectrum[m].real());
    t.rows.push_back({w, d, spectrum[m].real(), exact(w)});
  }
  if (t.rows.empty()) throw DomainError("peak_window: no spectral samples near the peak");
  t.summary = {{"rel_l2_err", relative_l2(duhamel, fft)}};
  return t;
}

Table evolve_shannon(const Params& p) {
  const double band = p.positive("band");
  const int samples = p.integer("samples", 3);
  const bool cosine = p.choice("signal", {"cos", "sinc2"}) == "cos";
  const long first = -static_cast<long>(samples / 2);
  const double spacing = kPi / band;
  // cos(Ωt/2), or sinc²(Ωt/2π) whose spectrum is a triangle on |ω| ≤ Ω.
  auto signal = [&](double t) {
    const double x = 0.5 * band * t;
    if (cosine) return std::cos(x);
    return x == 0.0 ? 1.0 : std::pow(std::sin(x) / x, 2);
  };
  std::vector<double> values(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) values[j] = signal((first + j) * spacing);
  const Grid times =
      p.text("range").empty() ? Grid::stepped(-10.0 * spacing, 10.0 * spacing, 0.05 * spacing) : p.range("range");

  Table t;
  t.columns = {"t", "recon", "exact", "abs_err"};
  double worst = 0.0;
  for (std::size_t i = 0; i < times.count(); ++i) {
    const double time = times.point(i);
    const double r = shannon_reconstruct(values, first, band, time);
    const double e = signal(time);
    worst = std::max(worst, std::abs(r - e));
    t.rows.push_back({time, r, e, std::abs(r - e)});
  }
  t.summary = {{"max_abs_err", worst}};
  return t;
}

Table evolve_table(const Params& p) {
  const std::string kind = p.choice("kind", {"series", "duhamel", "shannon"});
  if (kind == "series") return evolve_series(p);
  if (kind == "duhamel") return evolve_duhamel(p);
  return evolve_shannon(p);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open output file " + path.string());
    out << content;
    out.close();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw DomainError("failed writing output file " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DomainError("cannot move output into place at " + path.string());
  }
}

}  // namespace

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = {
      {"projector",
       "Flattened step, point projector and kappa on a z range",
       {{"family", "lorentz", "delta-sequence family: lorentz or gauss"},
        {"orientation", "corrected", "Gauss step orientation: corrected or as-printed"},
        {"a", "1", "upper depth a > 0"},
        {"b", "1", "lower depth b > 0"},
        {"range", "-5:5:0.01", "z grid start:end:step"}}},
      {"kk",
       "Kramers-Kronig reconstruction for a single-resonance model",
       {{"model", "lorentz-osc", "lorentz-osc or drude"},
        {"wp", "1", "plasma frequency"},
        {"w0", "1", "resonance frequency (ignored for drude)"},
        {"gamma", "0.1", "damping"},
        {"a", "0", "flattening depth of the subtraction term"},
        {"mode", "standard", "imaginary-part integrand: standard or as-printed"},
        {"direction", "real", "reconstruct real (from imag) or imag (from real)"},
        {"range", "0.1:5:0.05", "omega grid start:end:step"}}},
      {"hilbert",
       "Flattened Hilbert transform of 1/(1+q^2)",
       {{"a", "0", "flattening depth"},
        {"range", "-5:5:0.1", "k grid start:end:step"},
        {"span", "200", "q samples cover [-span, span]"},
        {"step", "0.01", "q sample spacing"}}},
      {"boundary",
       "Graded-interface reflection against the sharp Fresnel value",
       {{"pol", "TE", "TE or TM"},
        {"alpha", "0", "incidence angle in radians"},
        {"eps1", "1", "permittivity of the incidence medium"},
        {"eps2", "4", "real part of the lower permittivity"},
        {"eps2_imag", "0", "imaginary part of the lower permittivity"},
        {"omega", "1", "angular frequency"},
        {"c", "1", "speed of light"},
        {"flatten", "1e-4", "upper depth a in wavelengths; b follows the depth ratio"},
        {"family", "lorentz", "profile family: lorentz or gauss"},
        {"slices", "512", "initial slice count (>= 16)"},
        {"tolerance", "1e-6", "slice-doubling convergence threshold on r"}}},
      {"window",
       "Smoothed window and its first-order commutator layer",
       {{"half_width", "1", "window half-width"},
        {"shift", "0.05", "shift applied by the evolution"},
        {"axis", "time", "time, space or frequency"},
        {"a", "0.05", "smoothing depth"},
        {"family", "gauss", "smoothing family: lorentz or gauss"},
        {"range", "", "u grid start:end:step (default +-(T + 10a), step a/20)"}}},
      {"evolve",
       "Commutator series, Duhamel spectrum or Shannon reconstruction",
       {{"kind", "series", "series, duhamel or shannon"},
        {"half_width", "1", "window half-width T (series, duhamel)"},
        {"a", "0.25", "smoothing depth (series)"},
        {"family", "gauss", "smoothing family (series)"},
        {"taus", "0.02,0.04,0.08", "comma-separated shifts (series)"},
        {"freq", "3", "signal frequency (duhamel)"},
        {"step", "0.01", "time step (duhamel)"},
        {"pad", "8", "zero-padding factor (duhamel)"},
        {"peak_window", "1", "half-width of the reported band around the peak (duhamel)"},
        {"band", "3.141592653589793", "band limit (shannon)"},
        {"samples", "201", "number of samples, centred on t = 0 (shannon)"},
        {"signal", "cos", "test signal cos(band*t/2) or sinc2 (shannon)"},
        {"range", "", "t grid start:end:step (shannon; default +-10 sample spacings)"}}},
  };
  return specs;
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    const std::string body = trim(line);
    if (body.empty() || (body.front() == '[' && body.back() == ']')) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw DomainError("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = normalise_key(lower(trim(body.substr(0, eq))));
    if (key.empty()) throw DomainError("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(body.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::map<std::string, std::string> resolve_params(const RunConfig& config) {
  const auto& specs = command_specs();
  const auto it = std::find_if(specs.begin(), specs.end(), [&](const CommandSpec& s) { return s.name == config.command; });
  if (it == specs.end()) throw DomainError("unknown command '" + config.command + "'");
  std::map<std::string, std::string> resolved;
  for (const auto& ps : it->params) resolved[ps.key] = ps.default_value;
  for (const auto& [raw, value] : config.params) {
    const std::string key = normalise_key(raw);
    if (!resolved.count(key)) throw DomainError(config.command + ": unknown parameter '" + raw + "'");
    resolved[key] = value;
  }
  return resolved;
}

Table compute(const RunConfig& config) {
  const auto resolved = resolve_params(config);
  const Params p(resolved);
  if (config.command == "projector") return projector_table(p);
  if (config.command == "kk") return kk_table(p);
  if (config.command == "hilbert") return hilbert_table(p);
  if (config.command == "boundary") return boundary_table(p);
  if (config.command == "window") return window_table(p);
  return evolve_table(p);
}

std::string render_csv(const std::string& command, const std::map<std::string, std::string>& params,
                       const Table& table) {
  std::string out = "# flatproj " + command;
  for (const auto& [k, v] : params) out += " " + k + "=" + v;
  out += "\n";
  for (const auto& [k, v] : table.summary) out += "# " + k + "=" + format_number(v) + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
    out += "\n";
  }
  return out;
}

std::string render_json(const std::string& command, const std::map<std::string, std::string>& params,
                        const Table& table) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::json doc;
  doc["provenance"] = {{"command", command}, {"params", params}};
  doc["columns"] = table.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (double v : row) r.push_back(num(v));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [k, v] : table.summary) summary[k] = num(v);
  doc["summary"] = std::move(summary);
  return doc.dump(2) + "\n";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    const auto resolved = resolve_params(config);
    const Table table = compute(config);
    const std::string text = config.format == OutputFormat::JSON ? render_json(config.command, resolved, table)
                                                                 : render_csv(config.command, resolved, table);
    if (config.output_path.empty()) {
      out << text;
      out.flush();
    } else {
      std::filesystem::path path(config.output_path);
      if (const char* dir = std::getenv("FLATPROJ_OUTPUT_DIR"); dir && *dir && path.is_relative()) {
        path = std::filesystem::path(dir) / path;
      }
      write_atomically(path, text);
      for (const auto& [k, v] : table.summary) diag << k << " = " << format_number(v) << "\n";
      diag << "wrote " << table.rows.size() << " rows to " << path.string() << "\n";
    }
    return 0;
  } catch (const DomainError& e) {
    diag << "flatproj: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    diag << "flatproj: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    diag << "flatproj: numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace flatproj::cli
