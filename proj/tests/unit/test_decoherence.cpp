#include <gtest/gtest.h>

#include <cmath>

#include "bsvhhg/decoherence.hpp"
#include "bsvhhg/error.hpp"
#include "fock_oracle.hpp"

using namespace bsv;
using namespace bsv::decoherence;
using bsv::testing::FockState;

namespace {

// Truncation needed for the number-basis reference to converge to ~1e-7.
int oracle_cutoff(double r) { return r <= 0.5 ? 60 : 600; }

}  // namespace

TEST(LossChannel, Composition) {
  const LossChannel a(0.8);
  const LossChannel b = LossChannel::from_absorption(0.25);
  EXPECT_DOUBLE_EQ(b.transmission(), 0.75);
  EXPECT_DOUBLE_EQ(a.then(b).transmission(), 0.6);
  EXPECT_DOUBLE_EQ(a.then(b).absorption(), 0.4);
  EXPECT_THROW(LossChannel(1.2), DomainError);
  EXPECT_THROW(LossChannel(-0.1), DomainError);
}

TEST(Variances, Endpoints) {
  const auto lossless = lossy_variances(1.3, 1.0);
  EXPECT_DOUBLE_EQ(lossless.x1, std::exp(2.6));
  EXPECT_DOUBLE_EQ(lossless.x2, std::exp(-2.6));
  const auto dark = lossy_variances(1.3, 0.0);
  EXPECT_DOUBLE_EQ(dark.x1, 1.0);
  EXPECT_DOUBLE_EQ(dark.x2, 1.0);
  EXPECT_THROW(lossy_variances(-0.1, 0.5), DomainError);
}

TEST(Variances, PinnedValue) {
  // Regression pin, from an independent 30-digit evaluation.
  EXPECT_NEAR(lossy_variances(2.0, 7.0 / 8.0).x2, 0.141026184027642, 1e-14);
}

TEST(Variances, Semigroup) {
  for (double r : {0.3, 1.0, 2.0}) {
    for (double t1 : {0.1, 0.5, 0.9}) {
      for (double t2 : {0.2, 0.7}) {
        const auto two_step = apply_loss(lossy_variances(r, t1), t2);
        const auto one_step = lossy_variances(r, t1 * t2);
        EXPECT_NEAR(two_step.x1, one_step.x1, 1e-12 * one_step.x1);
        EXPECT_NEAR(two_step.x2, one_step.x2, 1e-12);
      }
    }
  }
}

TEST(Variances, MatchNumberBasisOracle) {
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    const auto psi = FockState::squeezed_vacuum(r, oracle_cutoff(r));
    for (double t : {1.0, 0.875, 0.5, 0.1, 0.0}) {
      const auto rho = psi.after_loss(t);
      const auto v = lossy_variances(r, t);
      EXPECT_NEAR(rho.trace(), 1.0, 1e-10);
      EXPECT_NEAR(rho.variance_x1(), v.x1, 1e-6 * v.x1) << "r=" << r << " t=" << t;
      EXPECT_NEAR(rho.variance_x2(), v.x2, 1e-6) << "r=" << r << " t=" << t;
      EXPECT_NEAR(rho.mean_photon_number(), lossy_bsv(r, t).mean_photon_number,
                  1e-6 * (1.0 + rho.mean_photon_number()));
    }
  }
}

TEST(HeisenbergExcess, PinnedAndIdentity) {
  // Regression pin, from an independent 30-digit evaluation.
  EXPECT_NEAR(heisenberg_excess(2.0, 0.5), 13.1541164180082, 1e-11);
  for (double r : {0.0, 0.4, 1.5, 3.0}) {
    for (int k = 0; k <= 20; ++k) {
      const double t = k / 20.0;
      const auto v = lossy_variances(r, t);
      const double e = heisenberg_excess(r, t);
      EXPECT_GE(e, 0.0);
      EXPECT_NEAR(e, v.x1 * v.x2 - 1.0, 1e-11 * (1.0 + v.x1 * v.x2));
    }
  }
  EXPECT_EQ(heisenberg_excess(2.0, 1.0), 0.0);
  EXPECT_EQ(heisenberg_excess(2.0, 0.0), 0.0);
}

TEST(HeisenbergExcess, PeaksAtHalfLoss) {
  for (int k = 0; k <= 20; ++k) EXPECT_LE(heisenberg_excess(2.0, k / 20.0), heisenberg_excess(2.0, 0.5));
}

TEST(Wigner, NormalizedWithMatchingMoments) {
  const auto x1 = symmetric_axis(40.0, 801);
  const auto x2 = symmetric_axis(6.0, 241);
  for (double t : {1.0, 0.5}) {
    const auto w = wigner_lossy_bsv(1.0, t, x1, x2);
    const double d1 = x1[1] - x1[0];
    const double d2 = x2[1] - x2[0];
    double norm = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < x1.size(); ++i) {
      for (std::size_t j = 0; j < x2.size(); ++j) {
        const double v = w.at(i, j) * d1 * d2;
        norm += v;
        m1 += v * x1[i] * x1[i];
        m2 += v * x2[j] * x2[j];
      }
    }
    const auto var = lossy_variances(1.0, t);
    EXPECT_NEAR(norm, 1.0, 1e-6);
    EXPECT_NEAR(m1, var.x1, 1e-5 * var.x1);
    EXPECT_NEAR(m2, var.x2, 1e-5);
  }
}

TEST(Wigner, ShapeAndPeak) {
  const auto ax = symmetric_axis(6.0, 101);
  EXPECT_DOUBLE_EQ(ax.front(), -6.0);
  EXPECT_DOUBLE_EQ(ax.back(), 6.0);
  EXPECT_NEAR(ax[50], 0.0, 1e-15);
  const auto w = wigner_lossy_bsv(2.0, 0.5, ax, ax);
  EXPECT_EQ(w.values.size(), 101u * 101u);
  const auto v = lossy_variances(2.0, 0.5);
  EXPECT_NEAR(w.at(50, 50), 1.0 / (2.0 * M_PI * std::sqrt(v.x1 * v.x2)), 1e-15);
  EXPECT_THROW(symmetric_axis(1.0, 1), DomainError);
  EXPECT_THROW(wigner_lossy_bsv(1.0, 0.5, {0.0}, ax), DomainError);
}

TEST(Autocorrelator, PowerLawMatchesOracle) {
  const auto psi = FockState::squeezed_vacuum(0.5, oracle_cutoff(0.5));
  for (double t : {0.9, 0.5, 0.2}) {
    const auto rho = psi.after_loss(t);
    for (int n : {1, 2, 3}) {
      EXPECT_NEAR(rho.factorial_moment(n) / psi.factorial_moment(n), autocorrelator_scaling(n, t), 1e-8) << n;
    }
  }
  EXPECT_THROW(autocorrelator_scaling(0, 0.5), DomainError);
}

TEST(Autocorrelator, G2Ratio) {
  EXPECT_FALSE(g2_ratio(0.0).has_value());
  for (double t : {1e-6, 0.3, 1.0}) EXPECT_NEAR(*g2_ratio(t), 1.0, 1e-12);
}

TEST(QuantumLength, PinnedAndThreshold) {
  // Regression pin: 5 N_IR / (16 n rho S) for N_IR = 1e13, n = 11, rho = 1e18, S = 1.3e-6.
  const double lq = max_quantum_length(1e13, 11, 1e18, 1.3e-6);
  EXPECT_NEAR(lq, 0.218531468531469, 1e-14);
  EXPECT_NEAR(absorbed_photons(1e18, 1.3e-6, lq, 11, 0.4) / 1e13, kQuantumnessThreshold, 1e-15);
  EXPECT_THROW(max_quantum_length(0.0, 11, 1e18, 1.3e-6), DomainError);
  EXPECT_THROW(absorbed_photons(-1.0, 1.3e-6, 0.1, 11, 0.4), DomainError);
}

TEST(QuantumLength, Verdict) {
  EXPECT_TRUE(quantumness_verdict(0.0));
  EXPECT_TRUE(quantumness_verdict(0.125));
  EXPECT_FALSE(quantumness_verdict(0.1250001));
  EXPECT_FALSE(quantumness_verdict(1.0));
  EXPECT_THROW(quantumness_verdict(1.5), DomainError);
}
