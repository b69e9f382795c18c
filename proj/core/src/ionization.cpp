#include "bsvhhg/ionization.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bsvhhg/error.hpp"
#include "bsvhhg/parallel.hpp"
#include "bsvhhg/units.hpp"

namespace bsv::ionization {

AtomSpecies AtomSpecies::argon() {
  AtomSpecies ar;
  ar.name = "argon";
  ar.ionization_potential = 0.58;
  ar.core_charge = 1.0;
  ar.mpi_order = 11;
  ar.log10_mpi_cross_section = std::log10(3.0) - 342.0;
  return ar;
}

double AtomSpecies::effective_principal_number() const {
  return core_charge / std::sqrt(2.0 * ionization_potential);
}

int AtomSpecies::required_photons(double wavelength_nm) const {
  const double photon = units::omega_au_from_wavelength_nm(wavelength_nm);
  return static_cast<int>(std::ceil(ionization_potential / photon));
}

std::vector<std::string> validate_species(const AtomSpecies& species, double wavelength_nm) {
  if (!(species.ionization_potential > 0.0)) throw DomainError("species Ip must be positive");
  if (!(species.core_charge >= 1.0)) throw DomainError("species core charge must be >= 1");
  if (species.mpi_order < 1) throw DomainError("species MPI order must be >= 1");
  if (!std::isfinite(species.log10_mpi_cross_section)) {
    throw DomainError("species MPI cross-section must be finite and positive");
  }
  std::vector<std::string> warnings;
  const int needed = species.required_photons(wavelength_nm);
  if (needed != species.mpi_order) {
    warnings.push_back("species '" + species.name + "': MPI order " + std::to_string(species.mpi_order) +
                       " differs from ceil(Ip/hbar w) = " + std::to_string(needed));
  }
  return warnings;
}

double parse_log10(const std::string& literal) {
  std::size_t pos = literal.find_first_of("eE");
  const std::string mantissa_text = literal.substr(0, pos);
  std::size_t used = 0;
  double mantissa = 0.0;
  long exponent = 0;
  try {
    mantissa = std::stod(mantissa_text, &used);
    if (used != mantissa_text.size()) throw std::invalid_argument(literal);
    if (pos != std::string::npos) {
      const std::string exponent_text = literal.substr(pos + 1);
      exponent = std::stol(exponent_text, &used);
      if (used != exponent_text.size()) throw std::invalid_argument(literal);
    }
  } catch (const std::logic_error&) {
    throw DomainError("not a decimal number: '" + literal + "'");
  }
  if (!(mantissa > 0.0)) throw DomainError("expected a positive number: '" + literal + "'");
  return std::log10(mantissa) + static_cast<double>(exponent);
}

double adk_rate(const AtomSpecies& species, double field_au, double regularizer) {
  if (!(regularizer > 0.0)) throw DomainError("ADK regularizer must be positive");
  if (!std::isfinite(field_au)) throw DomainError("field must be finite");
  const double z = species.core_charge;
  const double z3 = z * z * z;
  const double ns = species.effective_principal_number();
  const double e0 = std::sqrt(field_au * field_au + regularizer);
  const double pi = units::kPi;
  // D^2 is folded into the exponential to keep tiny fields finite.
  const double log_d = ns * std::log(4.0 * std::numbers::e * z3 / (e0 * std::pow(ns, 4)));
  const double log_rate = std::log(3.0 * ns * e0 / (pi * z3)) + std::log(e0 / (8.0 * pi * z)) +
                          2.0 * log_d - 2.0 * z3 / (3.0 * ns * ns * ns * e0);
  return std::exp(log_rate);
}

double log_mpi_rate(const AtomSpecies& species, double intensity_w_cm2, double wavelength_nm) {
  if (!(intensity_w_cm2 >= 0.0) || !std::isfinite(intensity_w_cm2)) {
    throw DomainError("intensity must be >= 0");
  }
  if (intensity_w_cm2 == 0.0) return -std::numeric_limits<double>::infinity();
  const double log_flux = std::log(intensity_w_cm2) - std::log(units::photon_energy_j(wavelength_nm));
  return species.log10_mpi_cross_section * std::numbers::ln10 + species.mpi_order * log_flux;
}

double mpi_rate(const AtomSpecies& species, double intensity_w_cm2, double wavelength_nm) {
  return std::exp(log_mpi_rate(species, intensity_w_cm2, wavelength_nm));
}

namespace {

struct RateSeries {
  std::vector<double> sfi;
  std::vector<double> mpi;
};

RateSeries rate_series(const field::DriverPulse& pulse, double amplitude_au, const AtomSpecies& species,
                       const IonizationOptions& options) {
  const std::size_t n = pulse.size();
  RateSeries r{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  const double log_au_time = std::log(units::kAuTime);
  for (std::size_t i = 0; i < n; ++i) {
    if (options.include_sfi) {
      r.sfi[i] = adk_rate(species, pulse.field_sample(amplitude_au, i), options.regularizer);
    }
    if (options.include_mpi) {
      const double envelope_field = amplitude_au * pulse.envelope_sample(i);
      const double intensity = units::intensity_w_cm2_from_field_au(envelope_field);
      r.mpi[i] = std::exp(log_mpi_rate(species, intensity, pulse.wavelength_nm()) + log_au_time);
    }
  }
  return r;
}

double ionized(double integral) { return -std::expm1(-integral); }

}  // namespace

IonizationRecord trajectory_yield(const field::DriverPulse& pulse, double amplitude_v_per_cm,
                                  const AtomSpecies& species, const IonizationOptions& options) {
  const double amplitude_au = std::abs(units::field_au_from_v_per_cm(amplitude_v_per_cm));
  RateSeries rates = rate_series(pulse, amplitude_au, species, options);
  const std::size_t n = pulse.size();
  IonizationRecord rec;
  rec.time = pulse.times();
  rec.rate.resize(n);
  rec.survival.resize(n);
  rec.yield.resize(n);
  rec.yield_sfi.resize(n);
  rec.yield_mpi.resize(n);
  const double half_dt = 0.5 * pulse.dt();
  double int_sfi = 0.0;
  double int_mpi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rec.rate[i] = rates.sfi[i] + rates.mpi[i];
    if (i > 0) {
      int_sfi += half_dt * (rates.sfi[i - 1] + rates.sfi[i]);
      int_mpi += half_dt * (rates.mpi[i - 1] + rates.mpi[i]);
    }
    rec.yield[i] = ionized(int_sfi + int_mpi);
    rec.survival[i] = std::exp(-(int_sfi + int_mpi));
    rec.yield_sfi[i] = ionized(int_sfi);
    rec.yield_mpi[i] = ionized(int_mpi);
  }
  rec.rate_sfi = std::move(rates.sfi);
  rec.rate_mpi = std::move(rates.mpi);
  return rec;
}

FinalYield final_yield(const field::DriverPulse& pulse, double amplitude_v_per_cm, const AtomSpecies& species,
                       const IonizationOptions& options) {
  const double amplitude_au = std::abs(units::field_au_from_v_per_cm(amplitude_v_per_cm));
  const RateSeries rates = rate_series(pulse, amplitude_au, species, options);
  const double half_dt = 0.5 * pulse.dt();
  double int_sfi = 0.0;
  double int_mpi = 0.0;
  for (std::size_t i = 1; i < pulse.size(); ++i) {
    int_sfi += half_dt * (rates.sfi[i - 1] + rates.sfi[i]);
    int_mpi += half_dt * (rates.mpi[i - 1] + rates.mpi[i]);
  }
  return {ionized(int_sfi + int_mpi), ionized(int_sfi), ionized(int_mpi)};
}

FinalYield ensemble_yield(const field::QuadratureEnsemble& ensemble, const field::DriverPulse& pulse,
                          const AtomSpecies& species, const IonizationOptions& options, unsigned threads) {
  // +-E give the same yields; evaluate each magnitude once.
  const auto& nodes = ensemble.nodes;
  auto per_node = parallel_map(nodes.size(), threads, [&](std::size_t k) {
    const std::size_t mirror = nodes.size() - 1 - k;
    if (ensemble.kind == field::StateKind::Bsv && mirror < k &&
        nodes[mirror].amplitude == -nodes[k].amplitude) {
      return FinalYield{-1.0, 0.0, 0.0};
    }
    return final_yield(pulse, nodes[k].amplitude, species, options);
  });
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (per_node[k].total < 0.0) per_node[k] = per_node[nodes.size() - 1 - k];
  }
  FinalYield avg;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    avg.total += nodes[k].weight * per_node[k].total;
    avg.sfi += nodes[k].weight * per_node[k].sfi;
    avg.mpi += nodes[k].weight * per_node[k].mpi;
  }
  return avg;
}

FinalYield ensemble_yield(const field::FieldStateDistribution& dist, const field::DriverPulse& pulse,
                          const AtomSpecies& species, const IonizationOptions& options, int node_count,
                          unsigned threads, field::QuadratureRule rule) {
  return ensemble_yield(field::build_ensemble(dist, node_count, rule), pulse, species, options, threads);
}

double mpi_enhancement(int n) {
  if (n <= 0) throw DomainError("MPI order must be >= 1");
  if (n > 15) return std::exp(log_mpi_enhancement(n));
  double v = 1.0;
  for (int k = 3; k <= 2 * n - 1; k += 2) v *= k;
  return v;
}

double log_mpi_enhancement(int n) {
  if (n <= 0) throw DomainError("MPI order must be >= 1");
  // (2n-1)!! = (2n)! / (2^n n!)
  return std::lgamma(2.0 * n + 1.0) - n * std::numbers::ln2 - std::lgamma(n + 1.0);
}

}  // namespace bsv::ionization
