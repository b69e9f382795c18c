#pragma once

#include <optional>
#include <vector>

// Quadratures X1 = a^dag + a and X2 = -i(a^dag - a); vacuum variance is 1.

namespace bsv::decoherence {

/// Beam-splitter loss with transmission t; absorbed fraction A = 1 - t.
class LossChannel {
 public:
  explicit LossChannel(double transmission);
  static LossChannel from_absorption(double absorbed_fraction);

  double transmission() const noexcept { return t_; }
  double absorption() const noexcept { return 1.0 - t_; }
  /// Loss `this` followed by `next`.
  LossChannel then(const LossChannel& next) const;

 private:
  double t_;
};

struct QuadratureVariances {
  double x1 = 1.0;  // anti-squeezed
  double x2 = 1.0;  // squeezed
};

struct GaussianStateSummary {
  QuadratureVariances variances;
  double mean_photon_number = 0.0;
  double heisenberg_excess = 0.0;
};

/// (t e^{2r} + 1 - t, t e^{-2r} + 1 - t)
QuadratureVariances lossy_variances(double r, double t);
/// Applies a loss channel to arbitrary input variances.
QuadratureVariances apply_loss(const QuadratureVariances& in, double t);

double heisenberg_excess(double r, double t);
GaussianStateSummary lossy_bsv(double r, double t);

struct WignerGrid {
  std::vector<double> x1;
  std::vector<double> x2;
  std::vector<double> values;  // row-major, values[i * x2.size() + j] at (x1[i], x2[j])

  double at(std::size_t i, std::size_t j) const { return values[i * x2.size() + j]; }
};

/// Zero-mean Gaussian with covariance diag(var1, var2) on the given axes.
WignerGrid wigner_lossy_bsv(double r, double t, const std::vector<double>& x1, const std::vector<double>& x2);

/// Uniform axis of `points` samples over +-half_width.
std::vector<double> symmetric_axis(double half_width, std::size_t points);

/// <a^dag^n a^n>_noisy / <a^dag^n a^n>_0 = t^n.
double autocorrelator_scaling(int n, double t);

/// g2 of the lossy state over g2 of the input: 1 for t > 0, empty at t = 0
/// where g2 is undefined.
std::optional<double> g2_ratio(double t);

/// N_abs = fraction * n * rho * S * L_m
double absorbed_photons(double density_cm3, double spot_area_cm2, double length_cm, int photons_per_ionization,
                        double saturated_fraction);

inline constexpr double kQuantumnessThreshold = 0.125;
inline constexpr double kDefaultSaturatedFraction = 0.4;

/// Length at which N_abs / N_IR reaches the threshold:
/// A_thr N_IR / (fraction n rho S), i.e. 5 N_IR / (16 n rho S) for the defaults.
double max_quantum_length(double photons_ir, int photons_per_ionization, double density_cm3, double spot_area_cm2,
                          double saturated_fraction = kDefaultSaturatedFraction,
                          double threshold = kQuantumnessThreshold);

/// true iff A <= 1/8.
bool quantumness_verdict(double absorbed_fraction);

}  // namespace bsv::decoherence
