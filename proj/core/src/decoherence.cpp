#include "bsvhhg/decoherence.hpp"

#include <cmath>

#include "bsvhhg/error.hpp"
#include "bsvhhg/units.hpp"

namespace bsv::decoherence {

namespace {

void check_transmission(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("transmission must lie in [0, 1]");
}

void check_squeezing(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeezing parameter must be >= 0");
}

}  // namespace

LossChannel::LossChannel(double transmission) : t_(transmission) { check_transmission(transmission); }

LossChannel LossChannel::from_absorption(double absorbed_fraction) { return LossChannel(1.0 - absorbed_fraction); }

LossChannel LossChannel::then(const LossChannel& next) const { return LossChannel(t_ * next.t_); }

QuadratureVariances apply_loss(const QuadratureVariances& in, double t) {
  check_transmission(t);
  return {t * in.x1 + (1.0 - t), t * in.x2 + (1.0 - t)};
}

QuadratureVariances lossy_variances(double r, double t) {
  check_squeezing(r);
  return apply_loss({std::exp(2.0 * r), std::exp(-2.0 * r)}, t);
}

double heisenberg_excess(double r, double t) {
  check_squeezing(r);
  check_transmission(t);
  // x1 x2 - 1 = t (1 - t) (e^{2r} + e^{-2r} - 2), written without cancellation.
  const double s = std::sinh(r);
  return t * (1.0 - t) * 4.0 * s * s;
}

GaussianStateSummary lossy_bsv(double r, double t) {
  GaussianStateSummary g;
  g.variances = lossy_variances(r, t);
  const double s = std::sinh(r);
  g.mean_photon_number = t * s * s;
  g.heisenberg_excess = heisenberg_excess(r, t);
  return g;
}

std::vector<double> symmetric_axis(double half_width, std::size_t points) {
  if (!(half_width > 0.0) || points < 2) throw DomainError("axis needs positive width and >= 2 points");
  std::vector<double> axis(points);
  const double step = 2.0 * half_width / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) axis[i] = -half_width + step * static_cast<double>(i);
  return axis;
}

WignerGrid wigner_lossy_bsv(double r, double t, const std::vector<double>& x1, const std::vector<double>& x2) {
  if (x1.size() < 2 || x2.size() < 2) throw DomainError("Wigner grid needs at least 2 points per axis");
  for (double v : x1) {
    if (!std::isfinite(v)) throw DomainError("Wigner grid must be finite");
  }
  for (double v : x2) {
    if (!std::isfinite(v)) throw DomainError("Wigner grid must be finite");
  }
  const auto var = lossy_variances(r, t);
  WignerGrid g{x1, x2, std::vector<double>(x1.size() * x2.size())};
  const double norm = 1.0 / (2.0 * units::kPi * std::sqrt(var.x1 * var.x2));
  for (std::size_t i = 0; i < x1.size(); ++i) {
    for (std::size_t j = 0; j < x2.size(); ++j) {
      const double q = x1[i] * x1[i] / var.x1 + x2[j] * x2[j] / var.x2;
      g.values[i * x2.size() + j] = norm * std::exp(-0.5 * q);
    }
  }
  return g;
}

double autocorrelator_scaling(int n, double t) {
  if (n < 1) throw DomainError("autocorrelator order must be >= 1");
  check_transmission(t);
  return std::pow(t, n);
}

std::optional<double> g2_ratio(double t) {
  check_transmission(t);
  if (t == 0.0) return std::nullopt;
  return autocorrelator_scaling(2, t) / (autocorrelator_scaling(1, t) * autocorrelator_scaling(1, t));
}

double absorbed_photons(double density_cm3, double spot_area_cm2, double length_cm, int photons_per_ionization,
                        double saturated_fraction) {
  if (density_cm3 < 0.0 || spot_area_cm2 < 0.0 || length_cm < 0.0 || photons_per_ionization < 0 ||
      saturated_fraction < 0.0) {
    throw DomainError("absorbed-photon inputs must be >= 0");
  }
  return saturated_fraction * photons_per_ionization * density_cm3 * spot_area_cm2 * length_cm;
}

double max_quantum_length(double photons_ir, int photons_per_ionization, double density_cm3, double spot_area_cm2,
                          double saturated_fraction, double threshold) {
  if (!(photons_ir > 0.0) || photons_per_ionization <= 0 || !(density_cm3 > 0.0) || !(spot_area_cm2 > 0.0) ||
      !(saturated_fraction > 0.0) || !(threshold > 0.0)) {
    throw DomainError("quantum-length inputs must be positive");
  }
  return threshold * photons_ir / (saturated_fraction * photons_per_ionization * density_cm3 * spot_area_cm2);
}

bool quantumness_verdict(double absorbed_fraction) {
  if (!(absorbed_fraction >= 0.0 && absorbed_fraction <= 1.0)) {
    throw DomainError("absorbed fraction must lie in [0, 1]");
  }
  return absorbed_fraction <= kQuantumnessThreshold;
}

}  // namespace bsv::decoherence
