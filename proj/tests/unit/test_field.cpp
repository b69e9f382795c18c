#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "bsvhhg/error.hpp"
#include "bsvhhg/field.hpp"
#include "bsvhhg/units.hpp"

using namespace bsv;
using namespace bsv::field;

namespace {

constexpr double kPi = units::kPi;

double gaussian_double_factorial(int n) {
  double v = 1.0;
  for (int k = 2 * n - 1; k > 1; k -= 2) v *= k;
  return v;
}

}  // namespace

TEST(Husimi, VacuumPeak) { EXPECT_NEAR(husimi_marginal(0.0, 0.0), 1.0 / std::sqrt(2.0 * kPi * 2.0), 1e-15); }

TEST(Husimi, NormalizedAndVariance) {
  for (double r : {0.0, 1.0, 2.0, 17.0}) {
    const double sd = std::sqrt(1.0 + std::exp(2.0 * r));
    const int n = 20001;
    const double h = 24.0 * sd / (n - 1);
    double mass = 0.0;
    double second = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = -12.0 * sd + i * h;
      const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
      mass += w * husimi_marginal(r, x);
      second += w * x * x * husimi_marginal(r, x);
    }
    EXPECT_NEAR(mass, 1.0, 1e-10) << "r=" << r;
    EXPECT_NEAR(second / (1.0 + std::exp(2.0 * r)), 1.0, 1e-9) << "r=" << r;
  }
  EXPECT_NEAR(1.0 + std::exp(4.0), 55.598150033144236, 1e-12);
}

TEST(Husimi, RejectsBadInput) {
  EXPECT_THROW(husimi_marginal(-1.0, 0.0), DomainError);
  EXPECT_THROW(husimi_marginal(std::nan(""), 0.0), DomainError);
}

TEST(Squeezing, IntensityRoundTrip) {
  const double w = units::omega_si_from_wavelength_nm(800.0);
  EXPECT_EQ(intensity_from_squeezing(0.0, 1e-14, w), 0.0);
  for (double r : {0.5, 5.0, 17.0}) {
    EXPECT_NEAR(squeezing_from_intensity(intensity_from_squeezing(r, 1e-14, w), 1e-14, w), r, 1e-10 * r);
  }
  EXPECT_THROW(intensity_from_squeezing(1.0, 0.0, w), DomainError);
}

TEST(Squeezing, PaperTripleIsInconsistent) {
  // r = 17 in V = 1e-14 cm^3 at 800 nm is ~1.09e20 W/cm^2, not 1.5e14.
  const double w = units::omega_si_from_wavelength_nm(800.0);
  EXPECT_NEAR(intensity_from_squeezing(17.0, 1e-14, w) / 1.085825012e20, 1.0, 1e-8);
  EXPECT_NEAR(squeezing_from_intensity(1.5e14, 1e-14, w), 10.25380723743, 1e-9);
}

TEST(Distribution, BsvConsistency) {
  const auto d = FieldStateDistribution::bsv_from_intensity(1.5e14, 1e-14, 800.0);
  EXPECT_NEAR(d.mean_photon_number(), std::pow(std::sinh(d.squeezing()), 2), 1e-6 * d.mean_photon_number());
  const auto e = FieldStateDistribution::bsv_from_squeezing(d.squeezing(), 1e-14, 800.0);
  EXPECT_NEAR(e.mean_intensity() / 1.5e14, 1.0, 1e-10);
  // Field variance of the marginal equals the mean intensity (up to the vacuum term).
  const double var_intensity = units::intensity_w_cm2_from_field_v_per_cm(d.marginal_std_v_per_cm());
  EXPECT_NEAR(var_intensity / 1.5e14, 1.0, 1e-8);
}

TEST(Ensemble, CoherentSingleNode) {
  const auto d = FieldStateDistribution::coherent(3e8, 800.0);
  const auto e = build_ensemble(d);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e.nodes[0].amplitude, 3e8);
  EXPECT_EQ(e.nodes[0].weight, 1.0);
}

TEST(Ensemble, GaussHermiteMoments) {
  const auto d = FieldStateDistribution::bsv_from_intensity(1.5e14, 1e-14, 800.0);
  const auto e = build_ensemble(d, 64);
  const double s2 = std::pow(d.marginal_std_v_per_cm(), 2);
  EXPECT_NEAR(e.weight_sum(), 1.0, 1e-10);
  EXPECT_NEAR(e.moment(1) / d.marginal_std_v_per_cm(), 0.0, 1e-12);
  EXPECT_NEAR(e.moment(2) / s2, 1.0, 1e-8);
  for (int n : {2, 3}) {
    EXPECT_NEAR(e.moment(2 * n) / std::pow(e.moment(2), n) / gaussian_double_factorial(n), 1.0, 1e-6);
  }
  EXPECT_NEAR(e.moment(4) / (e.moment(2) * e.moment(2)), 3.0, 1e-6);
  for (std::size_t k = 0; k < e.size(); ++k) {
    EXPECT_GT(e.nodes[k].weight, 0.0);
    EXPECT_EQ(e.nodes[k].amplitude, -e.nodes[e.size() - 1 - k].amplitude);
  }
}

TEST(Ensemble, AgreesWithTrapezoidOracle) {
  const auto d = FieldStateDistribution::bsv_from_squeezing(2.0, 1e-14, 800.0);
  const auto gh = build_ensemble(d, 64);
  const auto tr = build_trapezoid_ensemble(d, 2048, 6.0);
  EXPECT_NEAR(tr.weight_sum(), 1.0, 1e-12);
  // The +-6 sigma truncation limits the oracle to ~1e-7 on the kurtosis.
  EXPECT_NEAR(gh.moment(4) / (gh.moment(2) * gh.moment(2)), tr.moment(4) / (tr.moment(2) * tr.moment(2)), 1e-5);
  EXPECT_NEAR(gh.moment(2) / tr.moment(2), 1.0, 1e-6);
}

TEST(Ensemble, NormalizationAcrossSqueezing) {
  for (double r = 0.0; r <= 20.0; r += 2.5) {
    const auto e = build_ensemble(FieldStateDistribution::bsv_from_squeezing(r, 1e-14, 800.0), 64);
    EXPECT_NEAR(e.weight_sum(), 1.0, 1e-10) << "r=" << r;
  }
}

TEST(Ensemble, VacuumLimitWidth) {
  const auto d = FieldStateDistribution::bsv_from_squeezing(0.0, 1e-14, 800.0);
  EXPECT_NEAR(d.marginal_std_v_per_cm() / d.vacuum_field_v_per_cm(), std::sqrt(2.0), 1e-14);
}

TEST(Ensemble, MinimumNodes) {
  const auto d = FieldStateDistribution::bsv_from_intensity(1e14, 1e-14, 800.0);
  EXPECT_THROW(build_ensemble(d, 8), DomainError);
  EXPECT_NO_THROW(build_ensemble(d, 16));
}

TEST(Ensemble, Deterministic) {
  const auto d = FieldStateDistribution::bsv_from_intensity(1.5e14, 1e-14, 800.0);
  const auto a = build_ensemble(d, 64);
  const auto b = build_ensemble(d, 64);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a.nodes[k].amplitude, b.nodes[k].amplitude);
    EXPECT_EQ(a.nodes[k].weight, b.nodes[k].weight);
  }
}

TEST(Ensemble, JsonShape) {
  nlohmann::json j = build_ensemble(FieldStateDistribution::bsv_from_squeezing(1.0, 1e-14, 800.0), 16);
  EXPECT_EQ(j["kind"], "bsv");
  EXPECT_DOUBLE_EQ(j["squeezing"].get<double>(), 1.0);
  EXPECT_EQ(j["nodes"].size(), 16u);
}

TEST(Pulse, GridAndEnvelope) {
  const DriverPulse p({});
  EXPECT_GE(p.parameters().samples_per_cycle, 40);
  EXPECT_NEAR(p.period() / p.dt(), 1024.0, 1.0);
  EXPECT_EQ(p.envelope_sample(0), 0.0);
  EXPECT_EQ(p.envelope_sample(p.size() - 1), 0.0);
  EXPECT_DOUBLE_EQ(p.time(p.size() - 1), p.duration());
  EXPECT_THROW(DriverPulse({800.0, -1.0, 0.0, 1024}), DomainError);
}

TEST(Pulse, ZeroAmplitude) {
  const auto tr = sample_field(DriverPulse({}), 0.0);
  for (std::size_t i = 0; i < tr.field.size(); ++i) {
    EXPECT_EQ(tr.field[i], 0.0);
    EXPECT_EQ(tr.vector_potential[i], 0.0);
  }
}

TEST(Pulse, PeakAndEndpoints) {
  const DriverPulse p({});
  const double e0 = 3.36e8;
  const auto tr = sample_field(p, e0);
  double peak = 0.0;
  for (double v : tr.field) peak = std::max(peak, std::abs(v));
  EXPECT_NEAR(peak / units::field_au_from_v_per_cm(e0), 1.0, 5e-3);
  EXPECT_EQ(tr.field.front(), 0.0);
  EXPECT_EQ(tr.field.back(), 0.0);
  EXPECT_EQ(tr.vector_potential.front(), 0.0);
}

TEST(Pulse, VectorPotentialDerivative) {
  const DriverPulse p({});
  const auto tr = sample_field(p, 3e8);
  for (std::size_t i = 1; i + 1 < tr.field.size(); i += 97) {
    const double dadt = (tr.vector_potential[i + 1] - tr.vector_potential[i - 1]) / (2.0 * p.dt());
    EXPECT_NEAR(-dadt, tr.field[i], 1e-4 * units::field_au_from_v_per_cm(3e8));
  }
}

TEST(Pulse, RefinedGridSharesSamples) {
  const DriverPulse p({});
  const auto fine = p.refined(3);
  EXPECT_EQ(fine.intervals(), 3 * p.intervals());
  for (std::size_t i = 0; i < p.size(); i += 101) {
    EXPECT_NEAR(fine.field_sample(0.05, 3 * i), p.field_sample(0.05, i), 1e-14);
  }
}

TEST(Ensemble, TrapezoidRuleIsMirrored) {
  const auto d = FieldStateDistribution::bsv_from_intensity(1.5e14, 1e-14, 800.0);
  for (int n : {64, 511, 512}) {
    const auto e = build_ensemble(d, n, QuadratureRule::Trapezoid);
    ASSERT_EQ(e.size(), static_cast<std::size_t>(n));
    EXPECT_NEAR(e.weight_sum(), 1.0, 1e-14);
    for (std::size_t k = 0; k < e.size(); ++k) {
      EXPECT_EQ(e.nodes[k].amplitude, -e.nodes[e.size() - 1 - k].amplitude);
      EXPECT_EQ(e.nodes[k].weight, e.nodes[e.size() - 1 - k].weight);
    }
    EXPECT_NEAR(e.nodes.back().amplitude, kTrapezoidHalfWidth * d.marginal_std_v_per_cm(),
                1e-12 * e.nodes.back().amplitude);
  }
}
