#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bsvhhg/field.hpp"
#include "bsvhhg/ionization.hpp"

namespace bsv::hhg {

/// |a(t)| = exp(-1/2 int_0^t Gamma_ADK), on the pulse grid.
std::vector<double> depletion_factor(const field::DriverPulse& pulse, double amplitude_v_per_cm,
                                     const ionization::AtomSpecies& species,
                                     double regularizer = ionization::kDefaultRegularizer);

/// E~(t) = E(t) a(t), atomic units.
std::vector<double> modified_field(const field::DriverPulse& pulse, double amplitude_v_per_cm,
                                   const ionization::AtomSpecies& species,
                                   double regularizer = ionization::kDefaultRegularizer);

struct SfaOptions {
  double spreading_regularizer = 0.1;  // eps_t in (eps_t + i tau/2)^{-3/2}, a.u.
  double excursion_cycles = 1.0;       // t - t1 window
  double taper_fraction = 0.25;        // cos^2 roll-off over the tail of the window
  double max_phase_step = 1.0;         // rad of action per integration step
  int max_refinement = 64;
  double depletion_floor = 1e-12;      // skip t once a(t - window) drops below this
  double regularizer = ionization::kDefaultRegularizer;
};

/// Real dipole d(t) in a.u. on the pulse grid.
struct DipoleTrace {
  std::vector<double> time;
  std::vector<double> dipole;
  double dt = 0.0;
  double omega = 0.0;    // fundamental, a.u.
  int refinement = 1;    // integration grid = pulse grid / refinement
};

/// Refinement factor the dipole integral needs at a field amplitude (a.u.).
int required_refinement(const field::DriverPulse& pulse, double amplitude_au,
                        const ionization::AtomSpecies& species, const SfaOptions& options = {});

/// Saddle-point SFA dipole with the hydrogenic 1s matrix element and
/// ADK ground-state depletion.
DipoleTrace sfa_dipole(const field::DriverPulse& pulse, double amplitude_v_per_cm,
                       const ionization::AtomSpecies& species, const SfaOptions& options = {});

inline constexpr double kDefaultMaxOrder = 100.0;

struct HarmonicSpectrum {
  std::vector<double> order;  // w / w0
  std::vector<double> power;  // |dt FT[w d]|^2, a.u.
  double omega = 0.0;
  double resolution = 0.0;    // harmonic orders per bin
  std::string window = "hann";
  std::size_t fft_length = 0;
  double parseval_residual = 0.0;
  std::optional<int> cutoff_order;

  bool empty() const noexcept { return order.empty(); }
};

/// Hann-windowed, zero-padded power spectrum up to `max_order`.
HarmonicSpectrum spectrum(const DipoleTrace& dipole, double max_order = kDefaultMaxOrder);

/// int_{q-1}^{q+1} P d(order) / (q w0); relative units.
double harmonic_photon_number(const HarmonicSpectrum& spec, int q);

/// Peak power (dB) of each odd order q >= 3 within [q - 1/2, q + 1/2].
std::vector<std::pair<int, double>> odd_harmonic_peaks_db(const HarmonicSpectrum& spec);

inline constexpr double kDefaultCutoffDrop = 20.0;  // dB

/// Highest odd order whose peak lies within drop_db of the median plateau
/// peak. The plateau is the lowest-order run of >= 3 consecutive odd
/// harmonics spanning at most 10 dB; empty when there is none.
std::optional<int> detect_cutoff(const HarmonicSpectrum& spec, double drop_db = kDefaultCutoffDrop);

/// (Ip + 3.17 Up) / w with Up = E^2 / (4 w^2), atomic units.
double semiclassical_cutoff_order(double ionization_potential, double field_au, double omega);

struct EnsembleOptions {
  SfaOptions sfa;
  double max_order = kDefaultMaxOrder;
  double min_weight = 1e-16;  // nodes below this weight are not evaluated
  unsigned threads = 1;
};

struct NodeSpectrum {
  double amplitude = 0.0;  // V/cm
  double weight = 0.0;
  bool evaluated = false;
  HarmonicSpectrum spectrum;
};

struct EnsembleSpectrum {
  HarmonicSpectrum mean;        // sum_k w_k P_k
  std::vector<NodeSpectrum> nodes;
  double skipped_weight = 0.0;  // total weight of nodes below min_weight
};

EnsembleSpectrum ensemble_spectrum(const field::QuadratureEnsemble& ensemble, const field::DriverPulse& pulse,
                                   const ionization::AtomSpecies& species, const EnsembleOptions& options = {});

void to_json(nlohmann::json& j, const HarmonicSpectrum& spec);

}  // namespace bsv::hhg
