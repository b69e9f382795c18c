#include "bsvhhg/field.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include <gsl/gsl_integration.h>
#include <nlohmann/json.hpp>

#include "bsvhhg/error.hpp"
#include "bsvhhg/units.hpp"

namespace bsv::field {

namespace {

constexpr double kTwoPi = 2.0 * units::kPi;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

// <n> = I V / (c hbar w), with I in W/cm^2, V in cm^3 and c in cm/s.
double photons_per_intensity(double volume_cm3, double omega_rad_s) {
  return volume_cm3 / (units::kSpeedOfLight * 1e2 * units::kHbar * omega_rad_s);
}

}  // namespace

DriverPulse::DriverPulse(const PulseParameters& params) : params_(params) {
  require_positive(params.wavelength_nm, "wavelength");
  require_positive(params.duration_fs, "pulse duration");
  if (params.samples_per_cycle < 8) {
    throw DomainError("samples_per_cycle must be at least 8");
  }
  if (!std::isfinite(params.carrier_phase)) {
    throw DomainError("carrier phase must be finite");
  }
  omega_ = units::omega_au_from_wavelength_nm(params.wavelength_nm);
  duration_ = units::fs_to_au(params.duration_fs);
  const double cycles = duration_ / period();
  intervals_ = static_cast<std::size_t>(std::ceil(cycles * params.samples_per_cycle - 1e-9));
  intervals_ = std::max<std::size_t>(intervals_, 2);
  dt_ = duration_ / static_cast<double>(intervals_);
}

double DriverPulse::period() const noexcept { return kTwoPi / omega_; }

std::vector<double> DriverPulse::times() const {
  std::vector<double> t(size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = time(i);
  return t;
}

double DriverPulse::envelope_sample(std::size_t i) const noexcept {
  if (i == 0 || i >= intervals_) return 0.0;
  const double s = std::sin(units::kPi * static_cast<double>(i) / static_cast<double>(intervals_));
  return s * s;
}

double DriverPulse::field_sample(double amplitude_au, std::size_t i) const noexcept {
  return amplitude_au * envelope_sample(i) * std::cos(omega_ * time(i) + params_.carrier_phase);
}

DriverPulse DriverPulse::with_carrier_phase(double theta) const {
  PulseParameters p = params_;
  p.carrier_phase = theta;
  return DriverPulse(p);
}

DriverPulse DriverPulse::refined(int factor) const {
  if (factor < 1) throw DomainError("refinement factor must be >= 1");
  DriverPulse out = *this;
  out.params_.samples_per_cycle *= factor;
  out.intervals_ = intervals_ * static_cast<std::size_t>(factor);
  out.dt_ = duration_ / static_cast<double>(out.intervals_);
  return out;
}

FieldTrace sample_field_au(const DriverPulse& pulse, double amplitude_au) {
  if (!std::isfinite(amplitude_au)) throw DomainError("field amplitude must be finite");
  const std::size_t n = pulse.size();
  FieldTrace trace;
  trace.time = pulse.times();
  trace.field.resize(n);
  trace.vector_potential.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) trace.field[i] = pulse.field_sample(amplitude_au, i);
  const double half_dt = 0.5 * pulse.dt();
  for (std::size_t i = 1; i < n; ++i) {
    trace.vector_potential[i] =
        trace.vector_potential[i - 1] - half_dt * (trace.field[i - 1] + trace.field[i]);
  }
  return trace;
}

FieldTrace sample_field(const DriverPulse& pulse, double amplitude_v_per_cm) {
  return sample_field_au(pulse, units::field_au_from_v_per_cm(amplitude_v_per_cm));
}

double husimi_marginal(double r, double x) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("squeezing parameter must be >= 0");
  const double var = 1.0 + std::exp(2.0 * r);
  return std::exp(-0.5 * x * x / var) / std::sqrt(kTwoPi * var);
}

double intensity_from_squeezing(double r, double volume_cm3, double omega_rad_s) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("squeezing parameter must be >= 0");
  require_positive(volume_cm3, "quantization volume");
  require_positive(omega_rad_s, "mode frequency");
  const double s = std::sinh(r);
  return s * s / photons_per_intensity(volume_cm3, omega_rad_s);
}

double squeezing_from_intensity(double intensity_w_cm2, double volume_cm3, double omega_rad_s) {
  if (!std::isfinite(intensity_w_cm2) || intensity_w_cm2 < 0.0) {
    throw DomainError("intensity must be >= 0");
  }
  require_positive(volume_cm3, "quantization volume");
  require_positive(omega_rad_s, "mode frequency");
  return std::asinh(std::sqrt(intensity_w_cm2 * photons_per_intensity(volume_cm3, omega_rad_s)));
}

FieldStateDistribution FieldStateDistribution::coherent(double peak_amplitude_v_per_cm,
                                                        double wavelength_nm) {
  if (!std::isfinite(peak_amplitude_v_per_cm) || peak_amplitude_v_per_cm < 0.0) {
    throw DomainError("coherent amplitude must be >= 0");
  }
  require_positive(wavelength_nm, "wavelength");
  FieldStateDistribution d;
  d.kind_ = StateKind::Coherent;
  d.wavelength_nm_ = wavelength_nm;
  d.omega_si_ = units::omega_si_from_wavelength_nm(wavelength_nm);
  d.peak_amplitude_ = peak_amplitude_v_per_cm;
  d.mean_intensity_ = units::intensity_w_cm2_from_field_v_per_cm(peak_amplitude_v_per_cm);
  return d;
}

FieldStateDistribution FieldStateDistribution::coherent_from_intensity(double intensity_w_cm2,
                                                                       double wavelength_nm) {
  if (!std::isfinite(intensity_w_cm2) || intensity_w_cm2 < 0.0) {
    throw DomainError("intensity must be >= 0");
  }
  return coherent(units::field_v_per_cm_from_intensity_w_cm2(intensity_w_cm2), wavelength_nm);
}

FieldStateDistribution FieldStateDistribution::bsv_from_squeezing(double r, double volume_cm3,
                                                                  double wavelength_nm) {
  require_positive(wavelength_nm, "wavelength");
  FieldStateDistribution d;
  d.kind_ = StateKind::Bsv;
  d.r_ = r;
  d.volume_cm3_ = volume_cm3;
  d.wavelength_nm_ = wavelength_nm;
  d.omega_si_ = units::omega_si_from_wavelength_nm(wavelength_nm);
  d.mean_intensity_ = intensity_from_squeezing(r, volume_cm3, d.omega_si_);
  d.check_consistency();
  return d;
}

FieldStateDistribution FieldStateDistribution::bsv_from_intensity(double intensity_w_cm2,
                                                                  double volume_cm3,
                                                                  double wavelength_nm) {
  require_positive(wavelength_nm, "wavelength");
  FieldStateDistribution d;
  d.kind_ = StateKind::Bsv;
  d.volume_cm3_ = volume_cm3;
  d.wavelength_nm_ = wavelength_nm;
  d.omega_si_ = units::omega_si_from_wavelength_nm(wavelength_nm);
  d.r_ = squeezing_from_intensity(intensity_w_cm2, volume_cm3, d.omega_si_);
  d.mean_intensity_ = intensity_w_cm2;
  d.check_consistency();
  return d;
}

void FieldStateDistribution::check_consistency() const {
  if (kind_ != StateKind::Bsv) return;
  const double implied = intensity_from_squeezing(r_, volume_cm3_, omega_si_);
  const double scale = std::max(std::abs(mean_intensity_), 1e-300);
  if (std::abs(implied - mean_intensity_) > 1e-10 * scale && mean_intensity_ != 0.0) {
    throw DomainError("BSV squeezing and mean intensity are inconsistent");
  }
}

double FieldStateDistribution::mean_photon_number() const noexcept {
  if (kind_ == StateKind::Bsv) {
    const double s = std::sinh(r_);
    return s * s;
  }
  return mean_intensity_ * photons_per_intensity(volume_cm3_, omega_si_);
}

double FieldStateDistribution::vacuum_field_v_per_cm() const noexcept {
  const double volume_m3 = volume_cm3_ * 1e-6;
  const double e_vac = std::sqrt(units::kHbar * omega_si_ / (2.0 * units::kVacuumPermittivity * volume_m3));
  return e_vac * 1e-2;
}

double FieldStateDistribution::marginal_std_v_per_cm() const noexcept {
  if (kind_ != StateKind::Bsv) return 0.0;
  return vacuum_field_v_per_cm() * std::sqrt(1.0 + std::exp(2.0 * r_));
}

double FieldStateDistribution::density(double amplitude_v_per_cm) const {
  if (kind_ != StateKind::Bsv) throw DomainError("Q(E) density is defined for BSV only");
  const double e_vac = vacuum_field_v_per_cm();
  return husimi_marginal(r_, amplitude_v_per_cm / e_vac) / e_vac;
}

double QuadratureEnsemble::weight_sum() const noexcept {
  double s = 0.0;
  for (const auto& n : nodes) s += n.weight;
  return s;
}

double QuadratureEnsemble::moment(int order) const noexcept {
  double s = 0.0;
  for (const auto& n : nodes) s += n.weight * std::pow(n.amplitude, order);
  return s;
}

QuadratureEnsemble build_ensemble(const FieldStateDistribution& dist, int node_count) {
  QuadratureEnsemble ens;
  ens.kind = dist.kind();
  ens.squeezing = dist.squeezing();
  if (dist.kind() == StateKind::Coherent) {
    ens.nodes.push_back({dist.peak_amplitude(), 1.0});
    return ens;
  }
  if (node_count < kMinBsvNodes) {
    throw DomainError("BSV ensembles need at least " + std::to_string(kMinBsvNodes) + " nodes");
  }

  // Weight exp(-x^2/2): nodes are standard-normal abscissae directly.
  using Workspace = std::unique_ptr<gsl_integration_fixed_workspace,
                                    decltype(&gsl_integration_fixed_free)>;
  Workspace ws(gsl_integration_fixed_alloc(gsl_integration_fixed_hermite,
                                           static_cast<std::size_t>(node_count), 0.0, 0.5, 0.0, 0.0),
               &gsl_integration_fixed_free);
  if (!ws) throw NumericalResolutionError("Gauss-Hermite rule allocation failed");
  const double* x = gsl_integration_fixed_nodes(ws.get());
  const double* w = gsl_integration_fixed_weights(ws.get());

  const double sigma = dist.marginal_std_v_per_cm();
  const double norm = std::sqrt(kTwoPi);
  const auto n = static_cast<std::size_t>(node_count);
  ens.nodes.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t m = n - 1 - k;
    const double xs = 0.5 * (x[k] - x[m]);
    const double ws_k = 0.5 * (w[k] + w[m]);
    ens.nodes[k] = {sigma * xs, ws_k / norm};
  }
  if (n % 2 == 1) ens.nodes[n / 2].amplitude = 0.0;
  return ens;
}

QuadratureEnsemble build_trapezoid_ensemble(const FieldStateDistribution& dist, int node_count,
                                            double half_width_sigmas) {
  if (dist.kind() != StateKind::Bsv) return build_ensemble(dist, 1);
  if (node_count < 3) throw DomainError("trapezoid ensemble needs at least 3 nodes");
  require_positive(half_width_sigmas, "trapezoid half width");
  const double sigma = dist.marginal_std_v_per_cm();
  const auto n = static_cast<std::size_t>(node_count);
  const double h = 2.0 * half_width_sigmas / static_cast<double>(n - 1);
  QuadratureEnsemble ens;
  ens.kind = StateKind::Bsv;
  ens.squeezing = dist.squeezing();
  ens.nodes.resize(n);
  for (std::size_t k = 0; k < (n + 1) / 2; ++k) {
    const std::size_t m = n - 1 - k;
    const double xs = 0.5 * h * static_cast<double>(m - k);
    double w = h * std::exp(-0.5 * xs * xs);
    if (k == 0) w *= 0.5;
    ens.nodes[m] = {sigma * xs, w};
    ens.nodes[k] = {-sigma * xs, w};
  }
  const double total = ens.weight_sum();
  for (auto& node : ens.nodes) node.weight /= total;
  return ens;
}

QuadratureEnsemble build_ensemble(const FieldStateDistribution& dist, int node_count, QuadratureRule rule) {
  return rule == QuadratureRule::Trapezoid ? build_trapezoid_ensemble(dist, node_count)
                                           : build_ensemble(dist, node_count);
}

void to_json(nlohmann::json& j, const QuadratureEnsemble& ensemble) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : ensemble.nodes) {
    nodes.push_back({{"amplitude_v_per_cm", n.amplitude}, {"weight", n.weight}});
  }
  j = {{"kind", ensemble.kind == StateKind::Bsv ? "bsv" : "coherent"},
       {"squeezing", ensemble.squeezing},
       {"nodes", std::move(nodes)}};
}

}  // namespace bsv::field
