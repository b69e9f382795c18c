#pragma once

#include <string>
#include <vector>

#include "bsvhhg/field.hpp"
#include "bsvhhg/hhg.hpp"
#include "bsvhhg/ionization.hpp"

namespace bsv::propagation {

/// Lengths in cm, densities in cm^-3.
struct MediumConfig {
  double density = 1e18;
  double length = 0.2;
  double absorption_cross_section = 1e-17;  // cm^2, at the harmonic of interest
  double dispersion_mismatch = 2e-6;        // rad/cm
  double spot_area = 1.3e-6;                // cm^2
  double confocal_parameter = 10.0;

  /// Argon, 15th harmonic.
  static MediumConfig argon_h15();

  /// Throws DomainError on invalid values; returns warnings.
  std::vector<std::string> validate() const;
};

double absorption_length(double cross_section_cm2, double density_cm3);

/// Free-electron mismatch -e^2 w_q rho Y / (2 eps0 c m_e w^2) in rad/cm.
double electron_mismatch(int q, double omega_rad_s, double density_cm3, double yield);

/// pi / |dk| in cm; +inf for dk = 0.
double coherence_length(double dk_rad_per_cm);

enum class OnAxisForm {
  Corrected,     // B with L_a^2 and a decaying e^{-L'/2} cross term
  PaperLiteral,  // B with L_a and e^{+L'/2}, for comparison only
};

struct PhaseMatchState {
  double electron_mismatch = 0.0;  // rad/cm
  double total_mismatch = 0.0;     // rad/cm
  double coherence_length = 0.0;   // cm
  double absorption_length = 0.0;  // cm
  double prefactor = 0.0;          // B
  double reduced_length = 0.0;     // L' = L_m / L_a
};

PhaseMatchState phase_match(const MediumConfig& medium, int q, double omega_rad_s, double yield,
                            OnAxisForm form = OnAxisForm::Corrected);

/// 1 + e^{-L'} - 2 cos(pi L_m / L_c) e^{-+L'/2}
double onaxis_bracket(double medium_length, double absorption_len, double coherence_len,
                      OnAxisForm form = OnAxisForm::Corrected);
double onaxis_prefactor(double density_cm3, double absorption_len, double coherence_len,
                        OnAxisForm form = OnAxisForm::Corrected);

/// B N_q [bracket]; relative units.
double onaxis_photon_number(double nq_single, double medium_length, double absorption_len, double coherence_len,
                            double density_cm3, OnAxisForm form = OnAxisForm::Corrected);

/// Single-atom inputs of one ensemble node.
struct NodeResponse {
  double amplitude = 0.0;  // V/cm
  double intensity = 0.0;  // W/cm^2
  double weight = 0.0;
  double yield = 0.0;      // end-of-pulse ionization probability fed to dk_el
  double photon_number = 0.0;  // single-atom N_q
  bool evaluated = false;
};

struct ResponseOptions {
  hhg::EnsembleOptions hhg;
  ionization::IonizationOptions ionization;  // which channels enter the plasma yield
};

std::vector<NodeResponse> node_responses(const field::QuadratureEnsemble& ensemble, const field::DriverPulse& pulse,
                                         const ionization::AtomSpecies& species, int q,
                                         const ResponseOptions& options = {});

/// Builds node responses from an already computed ensemble spectrum.
std::vector<NodeResponse> node_responses(const hhg::EnsembleSpectrum& spectra, const field::DriverPulse& pulse,
                                         const ionization::AtomSpecies& species, int q,
                                         const ionization::IonizationOptions& ionization = {},
                                         unsigned threads = 1);

/// sum_k w_k B_k N_q(E_k) [bracket_k] over evaluated nodes.
double propagated_average(const std::vector<NodeResponse>& nodes, const MediumConfig& medium, int q,
                          double omega_rad_s, OnAxisForm form = OnAxisForm::Corrected);

double ensemble_propagated(const field::QuadratureEnsemble& ensemble, const field::DriverPulse& pulse,
                           const ionization::AtomSpecies& species, const MediumConfig& medium, int q,
                           const ResponseOptions& options = {}, OnAxisForm form = OnAxisForm::Corrected);

/// Propagated average at each medium length of an increasing grid.
std::vector<double> medium_length_scan(const std::vector<NodeResponse>& nodes, const MediumConfig& medium, int q,
                                       double omega_rad_s, const std::vector<double>& lengths,
                                       OnAxisForm form = OnAxisForm::Corrected);

}  // namespace bsv::propagation
