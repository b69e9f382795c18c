#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace bsv::field {

enum class Envelope { SinSquared };

struct PulseParameters {
  double wavelength_nm = 800.0;
  double duration_fs = 13.0;
  double carrier_phase = 0.0;  // rad
  int samples_per_cycle = 1024;
};

/// Classical pulse template E(t) = E f(t) cos(w t + theta) with a sin^2
/// envelope on a uniform grid over [0, tau]. Times are in atomic units.
class DriverPulse {
 public:
  explicit DriverPulse(const PulseParameters& params);

  const PulseParameters& parameters() const noexcept { return params_; }
  double wavelength_nm() const noexcept { return params_.wavelength_nm; }
  double omega() const noexcept { return omega_; }
  double period() const noexcept;
  double duration() const noexcept { return duration_; }
  double carrier_phase() const noexcept { return params_.carrier_phase; }
  Envelope envelope() const noexcept { return Envelope::SinSquared; }

  std::size_t size() const noexcept { return intervals_ + 1; }
  std::size_t intervals() const noexcept { return intervals_; }
  double dt() const noexcept { return dt_; }
  double time(std::size_t i) const noexcept { return static_cast<double>(i) * dt_; }
  std::vector<double> times() const;

  /// Envelope sample f(t_i); exactly zero at both grid ends.
  double envelope_sample(std::size_t i) const noexcept;
  /// Field E(t_i) for an amplitude in atomic units.
  double field_sample(double amplitude_au, std::size_t i) const noexcept;

  /// Same pulse with a carrier phase shifted to `theta`.
  DriverPulse with_carrier_phase(double theta) const;
  /// Same pulse on a grid `factor` times finer.
  DriverPulse refined(int factor) const;

 private:
  PulseParameters params_;
  double omega_ = 0.0;
  double duration_ = 0.0;
  std::size_t intervals_ = 0;
  double dt_ = 0.0;
};

/// Sampled field and vector potential, atomic units.
struct FieldTrace {
  std::vector<double> time;
  std::vector<double> field;
  std::vector<double> vector_potential;
};

/// E(t) and A(t) = -int_0^t E dt' (cumulative trapezoid, A(0) = 0).
/// A negative amplitude is the same pulse with theta -> theta + pi.
FieldTrace sample_field(const DriverPulse& pulse, double amplitude_v_per_cm);
FieldTrace sample_field_au(const DriverPulse& pulse, double amplitude_au);

enum class StateKind { Coherent, Bsv };

/// Amplitude distribution Q(E) of the driving mode. For BSV this is the
/// marginal over the anti-squeezed quadrature (the squeezed one is dropped);
/// for a coherent state it is a point mass at the peak amplitude.
class FieldStateDistribution {
 public:
  static FieldStateDistribution coherent(double peak_amplitude_v_per_cm, double wavelength_nm);
  static FieldStateDistribution coherent_from_intensity(double intensity_w_cm2, double wavelength_nm);
  static FieldStateDistribution bsv_from_squeezing(double r, double volume_cm3, double wavelength_nm);
  static FieldStateDistribution bsv_from_intensity(double intensity_w_cm2, double volume_cm3,
                                                   double wavelength_nm);

  StateKind kind() const noexcept { return kind_; }
  double squeezing() const noexcept { return r_; }
  double quantization_volume_cm3() const noexcept { return volume_cm3_; }
  double mode_frequency() const noexcept { return omega_si_; }  // rad/s
  double wavelength_nm() const noexcept { return wavelength_nm_; }
  double mean_intensity() const noexcept { return mean_intensity_; }   // W/cm^2
  double peak_amplitude() const noexcept { return peak_amplitude_; }   // V/cm, coherent only
  double mean_photon_number() const noexcept;

  /// Single-mode vacuum field sqrt(hbar w / (2 eps0 V)) in V/cm.
  double vacuum_field_v_per_cm() const noexcept;
  /// Standard deviation of the BSV amplitude marginal in V/cm.
  double marginal_std_v_per_cm() const noexcept;
  /// Q(E) in 1/(V/cm); BSV only.
  double density(double amplitude_v_per_cm) const;

 private:
  FieldStateDistribution() = default;
  void check_consistency() const;

  StateKind kind_ = StateKind::Coherent;
  double r_ = 0.0;
  double volume_cm3_ = 1e-14;
  double omega_si_ = 0.0;
  double wavelength_nm_ = 800.0;
  double mean_intensity_ = 0.0;
  double peak_amplitude_ = 0.0;
};

struct QuadratureNode {
  double amplitude;  // V/cm
  double weight;
};

struct QuadratureEnsemble {
  StateKind kind = StateKind::Coherent;
  double squeezing = 0.0;
  std::vector<QuadratureNode> nodes;

  std::size_t size() const noexcept { return nodes.size(); }
  double weight_sum() const noexcept;
  /// sum_k w_k E_k^order
  double moment(int order) const noexcept;
};

/// Husimi amplitude marginal in natural quadrature units (vacuum variance 1):
/// zero-mean Gaussian with variance 1 + e^{2r}.
double husimi_marginal(double r, double x);

/// c hbar w sinh^2(r) / V in W/cm^2 (V in cm^3, w in rad/s).
double intensity_from_squeezing(double r, double volume_cm3, double omega_rad_s);
double squeezing_from_intensity(double intensity_w_cm2, double volume_cm3, double omega_rad_s);

inline constexpr int kDefaultNodes = 64;
inline constexpr int kMinBsvNodes = 16;

/// Coherent -> one node (E0, 1). BSV -> Gauss-Hermite nodes mapped onto the
/// marginal width, symmetric about zero.
QuadratureEnsemble build_ensemble(const FieldStateDistribution& dist, int node_count = kDefaultNodes);

inline constexpr double kTrapezoidHalfWidth = 6.0;  // standard deviations

/// Dense trapezoid rule on +-half_width standard deviations, renormalized,
/// with exactly mirrored nodes.
QuadratureEnsemble build_trapezoid_ensemble(const FieldStateDistribution& dist, int node_count = 2048,
                                            double half_width_sigmas = kTrapezoidHalfWidth);

enum class QuadratureRule { GaussHermite, Trapezoid };

QuadratureEnsemble build_ensemble(const FieldStateDistribution& dist, int node_count, QuadratureRule rule);

void to_json(nlohmann::json& j, const QuadratureEnsemble& ensemble);

}  // namespace bsv::field
