#include <cmath>
#include <complex>
#include <string>

#include <fmt/format.h>

#include "bsvhhg/error.hpp"
#include "bsvhhg/hhg.hpp"
#include "bsvhhg/units.hpp"

namespace bsv::hhg {

namespace {

std::vector<double> depletion_from_field(const std::vector<double>& field, double dt,
                                         const ionization::AtomSpecies& species, double regularizer) {
  std::vector<double> a(field.size(), 1.0);
  double integral = 0.0;
  double prev_rate = ionization::adk_rate(species, field.front(), regularizer);
  for (std::size_t i = 1; i < field.size(); ++i) {
    const double rate = ionization::adk_rate(species, field[i], regularizer);
    integral += 0.5 * dt * (prev_rate + rate);
    prev_rate = rate;
    a[i] = std::exp(-0.5 * integral);
  }
  return a;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& y, double dt) {
  std::vector<double> out(y.size(), 0.0);
  for (std::size_t i = 1; i < y.size(); ++i) out[i] = out[i - 1] + 0.5 * dt * (y[i - 1] + y[i]);
  return out;
}

}  // namespace

std::vector<double> depletion_factor(const field::DriverPulse& pulse, double amplitude_v_per_cm,
                                     const ionization::AtomSpecies& species, double regularizer) {
  const auto trace = field::sample_field(pulse, amplitude_v_per_cm);
  return depletion_from_field(trace.field, pulse.dt(), species, regularizer);
}

std::vector<double> modified_field(const field::DriverPulse& pulse, double amplitude_v_per_cm,
                                   const ionization::AtomSpecies& species, double regularizer) {
  auto trace = field::sample_field(pulse, amplitude_v_per_cm);
  const auto a = depletion_from_field(trace.field, pulse.dt(), species, regularizer);
  for (std::size_t i = 0; i < a.size(); ++i) trace.field[i] *= a[i];
  return trace.field;
}

int required_refinement(const field::DriverPulse& pulse, double amplitude_au,
                        const ionization::AtomSpecies& species, const SfaOptions& options) {
  const double w = pulse.omega();
  const double up = amplitude_au * amplitude_au / (4.0 * w * w);
  const double phase_rate = species.ionization_potential + 8.0 * up;
  const int m = std::max(1, static_cast<int>(std::ceil(pulse.dt() * phase_rate / options.max_phase_step)));
  if (m > options.max_refinement) {
    throw NumericalResolutionError(fmt::format(
        "SFA time integral unresolved: field {:.4g} a.u. (Up = {:.4g} a.u.) needs refinement {} > max {}",
        amplitude_au, up, m, options.max_refinement));
  }
  return m;
}

DipoleTrace sfa_dipole(const field::DriverPulse& pulse, double amplitude_v_per_cm,
                       const ionization::AtomSpecies& species, const SfaOptions& options) {
  if (!(options.spreading_regularizer > 0.0)) throw DomainError("eps_t must be positive");
  if (!(options.excursion_cycles > 0.0)) throw DomainError("excursion window must be positive");
  if (!(options.taper_fraction >= 0.0 && options.taper_fraction <= 1.0)) {
    throw DomainError("taper fraction must lie in [0, 1]");
  }
  const double amplitude_au = units::field_au_from_v_per_cm(amplitude_v_per_cm);
  const int m = required_refinement(pulse, std::abs(amplitude_au), species, options);
  const field::DriverPulse fine = m > 1 ? pulse.refined(m) : pulse;
  const double h = fine.dt();
  const double ip = species.ionization_potential;

  const auto trace = field::sample_field_au(fine, amplitude_au);
  const auto& a_vec = trace.vector_potential;
  const auto depletion = depletion_from_field(trace.field, h, species, options.regularizer);
  std::vector<double> e_mod(trace.field.size());
  std::vector<double> a_sq(trace.field.size());
  for (std::size_t i = 0; i < e_mod.size(); ++i) {
    e_mod[i] = trace.field[i] * depletion[i];
    a_sq[i] = a_vec[i] * a_vec[i];
  }
  const auto int_a = cumulative_trapezoid(a_vec, h);
  const auto int_a2 = cumulative_trapezoid(a_sq, h);

  // Excursion-time kernel: spreading factor, window taper, step and the
  // squared hydrogenic normalization.
  const auto window = static_cast<std::size_t>(std::lround(options.excursion_cycles * fine.period() / h));
  const auto taper = static_cast<std::size_t>(std::lround(options.taper_fraction * static_cast<double>(window)));
  const double norm = std::pow(2.0, 3.5) * std::pow(2.0 * ip, 1.25) / units::kPi;
  std::vector<std::complex<double>> kernel(window + 1);
  for (std::size_t j = 1; j <= window; ++j) {
    const double tau = static_cast<double>(j) * h;
    double w = 1.0;
    if (taper > 0 && j > window - taper) {
      const double c = std::cos(0.5 * units::kPi * static_cast<double>(j - (window - taper)) / static_cast<double>(taper));
      w = c * c;
    }
    const std::complex<double> spread = units::kPi / std::complex<double>(options.spreading_regularizer, 0.5 * tau);
    kernel[j] = std::pow(spread, 1.5) * (w * h * norm * norm);
  }

  auto matrix_element = [ip](double v) {
    const double s = v * v + 2.0 * ip;
    return v / (s * s * s);
  };

  DipoleTrace out;
  out.time = pulse.times();
  out.dipole.assign(pulse.size(), 0.0);
  out.dt = pulse.dt();
  out.omega = pulse.omega();
  out.refinement = m;

  const auto stride = static_cast<std::size_t>(m);
  for (std::size_t k = 1; k < pulse.size(); ++k) {
    const std::size_t i = k * stride;
    const std::size_t reach = std::min(i, window);
    if (depletion[i - reach] < options.depletion_floor) break;
    std::complex<double> acc = 0.0;
    for (std::size_t j = 1; j <= reach; ++j) {
      const std::size_t i1 = i - j;
      if (e_mod[i1] == 0.0) continue;
      const double tau = static_cast<double>(j) * h;
      const double da = int_a[i] - int_a[i1];
      const double da2 = int_a2[i] - int_a2[i1];
      const double p = -da / tau;
      const double action = 0.5 * (da2 - da * da / tau) + ip * tau;
      const double amp = matrix_element(p + a_vec[i]) * e_mod[i1] * matrix_element(p + a_vec[i1]);
      acc += kernel[j] * std::complex<double>(amp * std::cos(action), -amp * std::sin(action));
    }
    // a(t) 2 Re{ i acc }
    out.dipole[k] = -2.0 * depletion[i] * acc.imag();
  }
  return out;
}

}  // namespace bsv::hhg
