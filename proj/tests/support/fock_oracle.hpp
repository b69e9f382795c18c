#pragma once

#include <vector>

// Number-basis reference for the lossy squeezed vacuum. Independent of the
// closed-form decoherence module: builds the squeezed vacuum amplitudes, mixes
// them with an ancilla vacuum on a beam splitter and traces the ancilla out.

namespace bsv::testing {

class FockState {
 public:
  /// Squeezed vacuum whose X1 = a + a^dag quadrature is anti-squeezed,
  /// truncated at n_max photons and renormalized.
  static FockState squeezed_vacuum(double r, int n_max);

  /// Reduced state of the transmitted mode after a beam splitter with
  /// transmission t and a vacuum ancilla.
  FockState after_loss(double t) const;

  int n_max() const noexcept { return n_max_; }
  double trace() const;
  double mean_photon_number() const;
  /// <a^dag^k a^k>
  double factorial_moment(int k) const;
  double variance_x1() const;
  double variance_x2() const;

 private:
  FockState(int n_max, std::vector<double> rho) : n_max_(n_max), rho_(std::move(rho)) {}
  double at(int m, int n) const { return rho_[static_cast<std::size_t>(m) * (n_max_ + 1) + n]; }
  double re_a2() const;  // Re <a^2>

  int n_max_;
  std::vector<double> rho_;  // real, row-major (n_max+1)^2
};

}  // namespace bsv::testing
