#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bsvhhg/field.hpp"

namespace bsv::ionization {

struct AtomSpecies {
  std::string name;
  double ionization_potential = 0.0;  // a.u.
  double core_charge = 1.0;
  int mpi_order = 1;
  // sigma^(n) in cm^{2n} s^{n-1} is far below the double range for n ~ 11,
  // so only its decimal logarithm is stored.
  double log10_mpi_cross_section = 0.0;

  static AtomSpecies argon();

  /// n* = Z / sqrt(2 Ip)
  double effective_principal_number() const;
  /// Photons needed to cross Ip at the given wavelength: ceil(Ip / hbar w).
  int required_photons(double wavelength_nm) const;
};

/// Throws DomainError on invalid fields; returns warnings (e.g. n mismatch).
std::vector<std::string> validate_species(const AtomSpecies& species, double wavelength_nm);

/// Parses a decimal literal such as "3e-342" into its log10 without
/// materializing the value.
double parse_log10(const std::string& literal);

std::map<std::string, AtomSpecies> load_species_file(const std::filesystem::path& path);
AtomSpecies load_species(const std::filesystem::path& path, const std::string& name);

inline constexpr double kDefaultRegularizer = 1e-12;  // a.u.^2

/// Tunneling rate in 1/a.u. time:
///   3 n* E0 / (pi Z^3) * E0 D^2 / (8 pi Z) * exp(-2 Z^3 / (3 n*^3 E0))
/// with E0 = sqrt(E^2 + eps) and D = (4 e Z^3 / (E0 n*^4))^{n*}.
double adk_rate(const AtomSpecies& species, double field_au, double regularizer = kDefaultRegularizer);

/// Natural log of sigma^(n) Phi^n in 1/s, Phi = I / (hbar w) in photons/(cm^2 s).
/// Returns -inf at zero intensity.
double log_mpi_rate(const AtomSpecies& species, double intensity_w_cm2, double wavelength_nm);
/// sigma^(n) Phi^n in 1/s (may underflow to 0).
double mpi_rate(const AtomSpecies& species, double intensity_w_cm2, double wavelength_nm);

struct IonizationOptions {
  bool include_sfi = true;
  bool include_mpi = true;
  double regularizer = kDefaultRegularizer;
};

/// Rates in 1/a.u. time; probabilities dimensionless.
struct IonizationRecord {
  std::vector<double> time;
  std::vector<double> rate_sfi;
  std::vector<double> rate_mpi;
  std::vector<double> rate;
  std::vector<double> survival;
  std::vector<double> yield;
  std::vector<double> yield_sfi;  // 1 - exp(-int rate_sfi)
  std::vector<double> yield_mpi;  // 1 - exp(-int rate_mpi)

  double final_yield() const { return yield.back(); }
};

IonizationRecord trajectory_yield(const field::DriverPulse& pulse, double amplitude_v_per_cm,
                                  const AtomSpecies& species, const IonizationOptions& options = {});

struct FinalYield {
  double total = 0.0;
  double sfi = 0.0;
  double mpi = 0.0;
};

/// End-of-pulse yields only; same arithmetic as trajectory_yield.
FinalYield final_yield(const field::DriverPulse& pulse, double amplitude_v_per_cm,
                       const AtomSpecies& species, const IonizationOptions& options = {});

/// Weighted node average sum_k w_k Y(tau; E_k), reduced in node order.
FinalYield ensemble_yield(const field::QuadratureEnsemble& ensemble, const field::DriverPulse& pulse,
                          const AtomSpecies& species, const IonizationOptions& options = {},
                          unsigned threads = 1);
/// Y(E) climbs from 0 to 1 over a fraction of the BSV width, which a
/// 64-node Gauss-Hermite rule does not resolve; yields default to a
/// trapezoid rule instead.
inline constexpr int kYieldNodes = 512;

FinalYield ensemble_yield(const field::FieldStateDistribution& dist, const field::DriverPulse& pulse,
                          const AtomSpecies& species, const IonizationOptions& options = {},
                          int node_count = kYieldNodes, unsigned threads = 1,
                          field::QuadratureRule rule = field::QuadratureRule::Trapezoid);

/// (2n-1)!!, exact for n <= 15.
double mpi_enhancement(int n);
double log_mpi_enhancement(int n);

}  // namespace bsv::ionization
