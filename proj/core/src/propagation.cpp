#include "bsvhhg/propagation.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "bsvhhg/error.hpp"
#include "bsvhhg/parallel.hpp"
#include "bsvhhg/units.hpp"

namespace bsv::propagation {

MediumConfig MediumConfig::argon_h15() { return MediumConfig{}; }

std::vector<std::string> MediumConfig::validate() const {
  if (!(density > 0.0)) throw DomainError("medium density must be positive");
  if (!(length >= 0.0)) throw DomainError("medium length must be >= 0");
  if (!(absorption_cross_section > 0.0)) throw DomainError("absorption cross-section must be positive");
  if (!(spot_area > 0.0)) throw DomainError("spot area must be positive");
  if (!(confocal_parameter > 0.0)) throw DomainError("confocal parameter must be positive");
  if (!std::isfinite(dispersion_mismatch)) throw DomainError("dispersion mismatch must be finite");
  std::vector<std::string> warnings;
  if (confocal_parameter < 10.0 * length) {
    warnings.push_back(fmt::format("loose-focusing assumption violated: d_f = {} cm < 10 L_m = {} cm",
                                   confocal_parameter, 10.0 * length));
  }
  return warnings;
}

double absorption_length(double cross_section_cm2, double density_cm3) {
  if (!(cross_section_cm2 > 0.0) || !(density_cm3 > 0.0)) {
    throw DomainError("absorption length needs positive cross-section and density");
  }
  return 1.0 / (cross_section_cm2 * density_cm3);
}

double electron_mismatch(int q, double omega_rad_s, double density_cm3, double yield) {
  if (!(yield >= 0.0 && yield <= 1.0)) throw DomainError("ionization yield must lie in [0, 1]");
  const double e = units::kElementaryCharge;
  const double omega_q = q * omega_rad_s;
  const double density_m3 = density_cm3 * 1e6;
  const double per_m = -e * e * omega_q * density_m3 * yield /
                       (2.0 * units::kVacuumPermittivity * units::kSpeedOfLight * units::kElectronMass *
                        omega_rad_s * omega_rad_s);
  return per_m * 1e-2;
}

double coherence_length(double dk_rad_per_cm) {
  if (dk_rad_per_cm == 0.0) return std::numeric_limits<double>::infinity();
  return units::kPi / std::abs(dk_rad_per_cm);
}

double onaxis_prefactor(double density_cm3, double absorption_len, double coherence_len, OnAxisForm form) {
  const double ratio = absorption_len / coherence_len;  // 0 for L_c = inf
  const double la_power = form == OnAxisForm::Corrected ? absorption_len * absorption_len : absorption_len;
  return 4.0 * density_cm3 * density_cm3 * la_power / (1.0 + 4.0 * units::kPi * units::kPi * ratio * ratio);
}

double onaxis_bracket(double medium_length, double absorption_len, double coherence_len, OnAxisForm form) {
  if (!(medium_length >= 0.0) || !(absorption_len > 0.0) || !(coherence_len > 0.0)) {
    throw DomainError("on-axis lengths must be non-negative (L_a, L_c positive)");
  }
  const double reduced = medium_length / absorption_len;
  const double phase = std::isinf(coherence_len) ? 0.0 : units::kPi * medium_length / coherence_len;
  const double cross = form == OnAxisForm::Corrected ? std::exp(-0.5 * reduced) : std::exp(0.5 * reduced);
  const double bracket = 1.0 + std::exp(-reduced) - 2.0 * std::cos(phase) * cross;
  // At L_m = 0 the corrected form is exactly 1 + 1 - 2.
  return form == OnAxisForm::Corrected ? std::max(bracket, 0.0) : bracket;
}

double onaxis_photon_number(double nq_single, double medium_length, double absorption_len, double coherence_len,
                            double density_cm3, OnAxisForm form) {
  return onaxis_prefactor(density_cm3, absorption_len, coherence_len, form) * nq_single *
         onaxis_bracket(medium_length, absorption_len, coherence_len, form);
}

PhaseMatchState phase_match(const MediumConfig& medium, int q, double omega_rad_s, double yield, OnAxisForm form) {
  PhaseMatchState s;
  s.electron_mismatch = electron_mismatch(q, omega_rad_s, medium.density, yield);
  s.total_mismatch = medium.dispersion_mismatch + s.electron_mismatch;
  s.coherence_length = coherence_length(s.total_mismatch);
  s.absorption_length = absorption_length(medium.absorption_cross_section, medium.density);
  s.prefactor = onaxis_prefactor(medium.density, s.absorption_length, s.coherence_length, form);
  s.reduced_length = medium.length / s.absorption_length;
  return s;
}

std::vector<NodeResponse> node_responses(const hhg::EnsembleSpectrum& spectra, const field::DriverPulse& pulse,
                                         const ionization::AtomSpecies& species, int q,
                                         const ionization::IonizationOptions& ionization, unsigned threads) {
  const auto& nodes = spectra.nodes;
  auto yields = parallel_map(nodes.size(), threads, [&](std::size_t k) {
    if (!nodes[k].evaluated) return 0.0;
    const std::size_t mirror = nodes.size() - 1 - k;
    if (mirror < k && nodes[mirror].amplitude == -nodes[k].amplitude) return -1.0;
    return ionization::final_yield(pulse, nodes[k].amplitude, species, ionization).total;
  });
  std::vector<NodeResponse> out(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    auto& r = out[k];
    r.amplitude = nodes[k].amplitude;
    r.intensity = units::intensity_w_cm2_from_field_v_per_cm(nodes[k].amplitude);
    r.weight = nodes[k].weight;
    r.evaluated = nodes[k].evaluated;
    if (!r.evaluated) continue;
    r.yield = yields[k] < 0.0 ? yields[nodes.size() - 1 - k] : yields[k];
    r.photon_number = hhg::harmonic_photon_number(nodes[k].spectrum, q);
  }
  return out;
}

std::vector<NodeResponse> node_responses(const field::QuadratureEnsemble& ensemble, const field::DriverPulse& pulse,
                                         const ionization::AtomSpecies& species, int q,
                                         const ResponseOptions& options) {
  const auto spectra = hhg::ensemble_spectrum(ensemble, pulse, species, options.hhg);
  return node_responses(spectra, pulse, species, q, options.ionization, options.hhg.threads);
}

double propagated_average(const std::vector<NodeResponse>& nodes, const MediumConfig& medium, int q,
                          double omega_rad_s, OnAxisForm form) {
  double sum = 0.0;
  for (const auto& node : nodes) {
    if (!node.evaluated) continue;
    const auto pm = phase_match(medium, q, omega_rad_s, node.yield, form);
    sum += node.weight * onaxis_photon_number(node.photon_number, medium.length, pm.absorption_length,
                                              pm.coherence_length, medium.density, form);
  }
  return sum;
}

double ensemble_propagated(const field::QuadratureEnsemble& ensemble, const field::DriverPulse& pulse,
                           const ionization::AtomSpecies& species, const MediumConfig& medium, int q,
                           const ResponseOptions& options, OnAxisForm form) {
  const auto nodes = node_responses(ensemble, pulse, species, q, options);
  return propagated_average(nodes, medium, q, units::omega_si_from_wavelength_nm(pulse.wavelength_nm()), form);
}

std::vector<double> medium_length_scan(const std::vector<NodeResponse>& nodes, const MediumConfig& medium, int q,
                                       double omega_rad_s, const std::vector<double>& lengths, OnAxisForm form) {
  for (std::size_t i = 1; i < lengths.size(); ++i) {
    if (!(lengths[i] > lengths[i - 1])) throw DomainError("medium-length grid must be strictly increasing");
  }
  std::vector<double> out;
  out.reserve(lengths.size());
  MediumConfig m = medium;
  for (double len : lengths) {
    m.length = len;
    out.push_back(propagated_average(nodes, m, q, omega_rad_s, form));
  }
  return out;
}

}  // namespace bsv::propagation
