#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "bsvhhg/error.hpp"
#include "bsvhhg/hhg.hpp"
#include "bsvhhg/units.hpp"

using namespace bsv;
using namespace bsv::hhg;

namespace {

const field::DriverPulse& pulse() {
  static const field::DriverPulse p({});
  return p;
}

const ionization::AtomSpecies& argon() {
  static const auto ar = ionization::AtomSpecies::argon();
  return ar;
}

double amp(double intensity) { return units::field_v_per_cm_from_intensity_w_cm2(intensity); }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Peaks of `db` at odd orders on a fine axis, with a deep floor in between.
HarmonicSpectrum synthetic(const std::vector<std::pair<int, double>>& db, double top = 60.0) {
  HarmonicSpectrum s;
  s.omega = 0.057;
  s.resolution = 0.05;
  for (int k = 0; k * s.resolution <= top; ++k) {
    const double order = k * s.resolution;
    double p = 0.0;
    for (const auto& [q, level] : db) {
      if (std::abs(order - q) < 1e-9) p = std::pow(10.0, level / 10.0);
    }
    s.order.push_back(order);
    s.power.push_back(p);
  }
  return s;
}

}  // namespace

TEST(Depletion, UnityWithoutField) {
  for (double a : depletion_factor(pulse(), 0.0, argon())) EXPECT_EQ(a, 1.0);
}

TEST(Depletion, MonotoneAndBounded) {
  const auto a = depletion_factor(pulse(), amp(2e14), argon());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_GT(a[i], 0.0);
    EXPECT_LE(a[i], 1.0);
    if (i) EXPECT_LE(a[i], a[i - 1]);
  }
}

TEST(Depletion, MatchesSfiSurvival) {
  ionization::IonizationOptions sfi_only;
  sfi_only.include_mpi = false;
  for (double i : {1e13, 1e14, 1.5e14, 3e14, 5e14}) {
    const auto a = depletion_factor(pulse(), amp(i), argon());
    const auto rec = ionization::trajectory_yield(pulse(), amp(i), argon(), sfi_only);
    for (std::size_t k = 0; k < a.size(); k += 97) EXPECT_NEAR(a[k] * a[k], rec.survival[k], 1e-10);
    EXPECT_NEAR(a.back() * a.back(), rec.survival.back(), 1e-10);
  }
}

// Tunneling alone saturates argon only well above 1e15 W/cm^2 for this pulse.
TEST(Depletion, StrongFieldEmptiesGroundState) {
  const auto a = depletion_factor(pulse(), amp(3e15), argon());
  EXPECT_LT(a.back() * a.back(), 0.01);
}

TEST(ModifiedField, TinyFieldUnchanged) {
  const auto e_mod = modified_field(pulse(), amp(1e10), argon());
  const auto e = field::sample_field(pulse(), amp(1e10)).field;
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(e_mod[i], e[i], 1e-10 * std::abs(e[i]) + 1e-300);
}

TEST(ModifiedField, RatioIsDepletion) {
  const auto e_mod = modified_field(pulse(), amp(2e14), argon());
  const auto e = field::sample_field(pulse(), amp(2e14)).field;
  const auto a = depletion_factor(pulse(), amp(2e14), argon());
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_LE(std::abs(e_mod[i]), std::abs(e[i]));
    if (e[i] != 0.0) EXPECT_NEAR(e_mod[i] / e[i], a[i], 1e-14);
  }
}

TEST(ModifiedField, TrailingHalfSuppressed) {
  const auto e_mod = modified_field(pulse(), amp(3e15), argon());
  const auto e = field::sample_field(pulse(), amp(3e15)).field;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = e.size() / 2; i < e.size(); ++i) {
    num += e_mod[i] * e_mod[i];
    den += e[i] * e[i];
  }
  EXPECT_LT(num / den, 0.01);
}

TEST(Dipole, ZeroField) {
  const auto d = sfa_dipole(pulse(), 0.0, argon());
  EXPECT_EQ(max_abs(d.dipole), 0.0);
  EXPECT_EQ(d.time.size(), pulse().size());
}

TEST(Dipole, FiniteAndStartsAtZero) {
  const auto d = sfa_dipole(pulse(), amp(1.5e14), argon());
  EXPECT_EQ(d.dipole.front(), 0.0);
  for (double x : d.dipole) EXPECT_TRUE(std::isfinite(x));
  EXPECT_GT(max_abs(d.dipole), 0.0);
}

TEST(Dipole, OddInField) {
  const auto d = sfa_dipole(pulse(), amp(1.5e14), argon());
  const auto flipped = sfa_dipole(pulse().with_carrier_phase(units::kPi), amp(1.5e14), argon());
  const auto negated = sfa_dipole(pulse(), -amp(1.5e14), argon());
  const double scale = max_abs(d.dipole);
  for (std::size_t i = 0; i < d.dipole.size(); ++i) {
    EXPECT_NEAR(flipped.dipole[i], -d.dipole[i], 1e-8 * scale);
    EXPECT_EQ(negated.dipole[i], -d.dipole[i]);
  }
}

TEST(Dipole, RefinementGrowsWithField) {
  EXPECT_EQ(required_refinement(pulse(), 0.0, argon()), 1);
  const int lo = required_refinement(pulse(), units::field_au_from_intensity_w_cm2(1e14), argon());
  const int hi = required_refinement(pulse(), units::field_au_from_intensity_w_cm2(1e16), argon());
  EXPECT_LE(lo, hi);
  EXPECT_THROW(required_refinement(pulse(), units::field_au_from_intensity_w_cm2(1e19), argon()),
               NumericalResolutionError);
}

TEST(Dipole, RejectsBadOptions) {
  SfaOptions o;
  o.spreading_regularizer = 0.0;
  EXPECT_THROW(sfa_dipole(pulse(), amp(1e14), argon(), o), DomainError);
}

TEST(Spectrum, ZeroDipole) {
  const auto s = spectrum(sfa_dipole(pulse(), 0.0, argon()));
  for (double p : s.power) EXPECT_EQ(p, 0.0);
  EXPECT_EQ(harmonic_photon_number(s, 15), 0.0);
  EXPECT_FALSE(s.cutoff_order.has_value());
}

TEST(Spectrum, AxisInvariants) {
  const auto s = spectrum(sfa_dipole(pulse(), amp(1e14), argon()));
  EXPECT_LE(s.resolution, 0.25);
  EXPECT_EQ(s.window, "hann");
  EXPECT_LE(s.order.back(), kDefaultMaxOrder);
  for (std::size_t k = 0; k < s.order.size(); ++k) {
    EXPECT_GE(s.power[k], 0.0);
    if (k) EXPECT_GT(s.order[k], s.order[k - 1]);
  }
}

TEST(Spectrum, Parseval) {
  const auto s = spectrum(sfa_dipole(pulse(), amp(1e14), argon()));
  EXPECT_LT(s.parseval_residual, 1e-8);
}

TEST(Spectrum, PureTone) {
  DipoleTrace d;
  d.time = pulse().times();
  d.dt = pulse().dt();
  d.omega = pulse().omega();
  for (double t : d.time) d.dipole.push_back(std::cos(15.0 * d.omega * t));
  const auto s = spectrum(d);
  const auto top = std::max_element(s.power.begin(), s.power.end());
  const double peak_order = s.order[static_cast<std::size_t>(top - s.power.begin())];
  EXPECT_NEAR(peak_order, 15.0, s.resolution);
  for (std::size_t k = 0; k < s.order.size(); ++k) {
    if (std::abs(s.order[k] - 15.0) > 2.0) EXPECT_LT(10.0 * std::log10(s.power[k] / *top + 1e-300), -60.0);
  }
}

TEST(Spectrum, NonUniformGridRejected) {
  DipoleTrace d;
  d.time = {0.0, 1.0, 2.5};
  d.dipole = {0.0, 1.0, 0.0};
  d.dt = 1.0;
  d.omega = 0.057;
  EXPECT_THROW(spectrum(d), DomainError);
}

TEST(PhotonNumber, RejectsBadOrders) {
  const auto s = spectrum(sfa_dipole(pulse(), amp(1e14), argon()));
  EXPECT_THROW(harmonic_photon_number(s, 14), DomainError);
  EXPECT_THROW(harmonic_photon_number(s, -1), DomainError);
  EXPECT_THROW(harmonic_photon_number(s, 101), DomainError);
  EXPECT_GT(harmonic_photon_number(s, 15), 0.0);
}

TEST(PhotonNumber, BandSum) {
  const auto s = synthetic({{13, 0.0}, {15, 0.0}, {17, 0.0}});
  // The closed band [q - 1, q + 1] only reaches one odd peak.
  const double one = s.resolution / s.omega;
  EXPECT_NEAR(harmonic_photon_number(s, 15), one / 15.0, 1e-12 * one);
  EXPECT_NEAR(harmonic_photon_number(s, 17), one / 17.0, 1e-12 * one);
  EXPECT_NEAR(harmonic_photon_number(s, 19), 0.0, 1e-12 * one);
}

TEST(Cutoff, SyntheticPlateau) {
  std::vector<std::pair<int, double>> db;
  for (int q = 3; q <= 29; q += 2) db.emplace_back(q, 0.0);
  for (int q = 31; q <= 59; q += 2) db.emplace_back(q, -40.0);
  EXPECT_EQ(detect_cutoff(synthetic(db)), 29);
}

TEST(Cutoff, DropThresholdIsInclusive) {
  std::vector<std::pair<int, double>> db;
  for (int q = 3; q <= 21; q += 2) db.emplace_back(q, 0.0);
  db.emplace_back(23, -20.0);
  for (int q = 25; q <= 59; q += 2) db.emplace_back(q, -50.0);
  EXPECT_EQ(detect_cutoff(synthetic(db)), 23);
  EXPECT_EQ(detect_cutoff(synthetic(db), 19.0), 21);
}

TEST(Cutoff, LowOrderRunWinsOverFloor) {
  // A flat noise floor at high orders is longer than the plateau but must
  // not be mistaken for it.
  std::vector<std::pair<int, double>> db;
  for (int q = 3; q <= 11; q += 2) db.emplace_back(q, 0.0);
  for (int q = 13; q <= 59; q += 2) db.emplace_back(q, -200.0);
  EXPECT_EQ(detect_cutoff(synthetic(db)), 11);
}

TEST(Cutoff, NoPlateau) {
  std::vector<std::pair<int, double>> db;
  for (int q = 3; q <= 59; q += 2) db.emplace_back(q, -15.0 * q);
  EXPECT_FALSE(detect_cutoff(synthetic(db)).has_value());
}

TEST(Cutoff, SemiclassicalFormula) {
  const double e = units::field_au_from_intensity_w_cm2(1.5e14);
  const double w = pulse().omega();
  const double up = e * e / (4 * w * w);
  EXPECT_DOUBLE_EQ(semiclassical_cutoff_order(0.58, e, w), (0.58 + 3.17 * up) / w);
  EXPECT_NEAR(semiclassical_cutoff_order(0.58, e, w), 28.5, 0.1);
}

TEST(Spectrum, CoherentPlateauAndCutoff) {
  const auto s = spectrum(sfa_dipole(pulse(), amp(1.5e14), argon()));
  ASSERT_TRUE(s.cutoff_order.has_value());
  EXPECT_GE(*s.cutoff_order, 25);
  EXPECT_LE(*s.cutoff_order, 37);
  const auto peaks = odd_harmonic_peaks_db(s);
  EXPECT_FALSE(peaks.empty());
}

TEST(PhotonNumber, GridConvergence) {
  const auto fine = pulse().refined(2);
  for (int q : {15, 21}) {
    const double a = harmonic_photon_number(spectrum(sfa_dipole(pulse(), amp(1.5e14), argon())), q);
    const double b = harmonic_photon_number(spectrum(sfa_dipole(fine, amp(1.5e14), argon())), q);
    EXPECT_LT(std::abs(a - b) / b, 0.02) << q;
  }
}

TEST(PhotonNumber, PerturbativeGrowth) {
  double prev = 0.0;
  for (double i = 1e12; i <= 1e13; i *= 1.5) {
    const double n = harmonic_photon_number(spectrum(sfa_dipole(pulse(), amp(i), argon())), 5);
    EXPECT_GT(n, prev);
    prev = n;
  }
}

TEST(PhotonNumber, CoherentScanOscillates) {
  std::vector<double> n;
  for (int k = 0; k < 24; ++k) {
    const double i = 5e13 * std::pow(10.0, 0.5 * k / 23.0);
    n.push_back(harmonic_photon_number(spectrum(sfa_dipole(pulse(), amp(i), argon())), 15));
  }
  int extrema = 0;
  for (std::size_t k = 1; k + 1 < n.size(); ++k) {
    if ((n[k] - n[k - 1]) * (n[k + 1] - n[k]) < 0.0) ++extrema;
  }
  EXPECT_GE(extrema, 2);
}

TEST(Ensemble, CoherentMatchesSingleTrajectory) {
  const auto d = field::FieldStateDistribution::coherent_from_intensity(1e14, 800.0);
  const auto e = ensemble_spectrum(field::build_ensemble(d), pulse(), argon());
  const auto s = spectrum(sfa_dipole(pulse(), d.peak_amplitude(), argon()));
  ASSERT_EQ(e.mean.power.size(), s.power.size());
  for (std::size_t k = 0; k < s.power.size(); ++k) EXPECT_EQ(e.mean.power[k], s.power[k]);
  EXPECT_EQ(e.skipped_weight, 0.0);
}

TEST(Ensemble, ConvexAndDeterministic) {
  const auto d = field::FieldStateDistribution::bsv_from_intensity(5e13, 1e-14, 800.0);
  const auto ens = field::build_ensemble(d, 16);
  EnsembleOptions one;
  EnsembleOptions many;
  many.threads = 4;
  const auto a = ensemble_spectrum(ens, pulse(), argon(), one);
  const auto b = ensemble_spectrum(ens, pulse(), argon(), many);
  for (std::size_t k = 0; k < a.mean.power.size(); ++k) ASSERT_EQ(a.mean.power[k], b.mean.power[k]);

  for (int q : {5, 15, 25}) {
    double lo = INFINITY;
    double hi = 0.0;
    for (const auto& n : a.nodes) {
      if (!n.evaluated) continue;
      const double v = harmonic_photon_number(n.spectrum, q);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double mean = harmonic_photon_number(a.mean, q);
    EXPECT_GE(mean, lo * (1.0 - a.skipped_weight) * (1.0 - 1e-12)) << q;
    EXPECT_LE(mean, hi * (1.0 + 1e-12)) << q;
  }
}

TEST(Ensemble, MirrorNodesShareSpectra) {
  const auto ens = field::build_ensemble(field::FieldStateDistribution::bsv_from_intensity(5e13, 1e-14, 800.0), 16);
  const auto e = ensemble_spectrum(ens, pulse(), argon());
  const std::size_t n = e.nodes.size();
  for (std::size_t k = 0; k < n / 2; ++k) {
    const auto& lo = e.nodes[k];
    const auto& hi = e.nodes[n - 1 - k];
    ASSERT_DOUBLE_EQ(lo.amplitude, -hi.amplitude);
    ASSERT_EQ(lo.evaluated, hi.evaluated);
    if (lo.evaluated) EXPECT_EQ(lo.spectrum.power, hi.spectrum.power);
  }
}

TEST(Ensemble, BsvScanIsSmooth) {
  std::vector<double> n;
  for (int k = 0; k < 8; ++k) {
    const double i = 5e13 * std::pow(10.0, 0.5 * k / 7.0);
    const auto ens = field::build_ensemble(field::FieldStateDistribution::bsv_from_intensity(i, 1e-14, 800.0), 32);
    EnsembleOptions o;
    o.threads = 4;
    n.push_back(harmonic_photon_number(ensemble_spectrum(ens, pulse(), argon(), o).mean, 15));
  }
  for (std::size_t k = 1; k < n.size(); ++k) EXPECT_GE(n[k], n[k - 1]);
}

TEST(Spectrum, JsonMetadata) {
  const auto s = spectrum(sfa_dipole(pulse(), amp(1.5e14), argon()));
  const nlohmann::json j = s;
  EXPECT_EQ(j.at("window"), "hann");
  EXPECT_TRUE(j.contains("cutoff_order"));
  EXPECT_EQ(j.at("fft_length").get<std::size_t>(), s.fft_length);
}
