#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include "bsvhhg/error.hpp"
#include "bsvhhg/hhg.hpp"
#include "bsvhhg/units.hpp"

namespace bsv::hhg {

namespace {

// FFTW's planner is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void check_uniform(const DipoleTrace& d) {
  if (d.time.size() != d.dipole.size() || d.time.size() < 2) {
    throw DomainError("dipole trace needs matching time and value arrays of length >= 2");
  }
  if (!(d.dt > 0.0) || !(d.omega > 0.0)) throw DomainError("dipole trace needs dt > 0 and omega > 0");
  for (std::size_t i = 1; i < d.time.size(); ++i) {
    const double step = d.time[i] - d.time[i - 1];
    if (std::abs(step - d.dt) > 1e-9 * d.dt) throw DomainError("spectrum requires a uniform time grid");
  }
}

}  // namespace

HarmonicSpectrum spectrum(const DipoleTrace& dipole, double max_order) {
  check_uniform(dipole);
  if (!(max_order > 1.0)) throw DomainError("max_order must exceed 1");
  const std::size_t n = dipole.dipole.size();
  const std::size_t len = next_pow2(4 * n);
  const std::size_t bins = len / 2 + 1;

  std::unique_ptr<double, decltype(&fftw_free)> in(fftw_alloc_real(len), &fftw_free);
  std::unique_ptr<fftw_complex, decltype(&fftw_free)> out(fftw_alloc_complex(bins), &fftw_free);
  double time_energy = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    double x = 0.0;
    if (i < n) {
      const double s = std::sin(units::kPi * static_cast<double>(i) / static_cast<double>(n - 1));
      x = s * s * dipole.dipole[i];
    }
    in.get()[i] = x;
    time_energy += x * x;
  }

  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(len), in.get(), out.get(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  HarmonicSpectrum spec;
  spec.omega = dipole.omega;
  spec.fft_length = len;
  const double d_omega = 2.0 * units::kPi / (static_cast<double>(len) * dipole.dt);
  spec.resolution = d_omega / dipole.omega;

  double spectral_energy = 0.0;
  const double scale = dipole.dt * dipole.dt;
  for (std::size_t k = 0; k < bins; ++k) {
    const double re = out.get()[k][0];
    const double im = out.get()[k][1];
    const double mag2 = re * re + im * im;
    const bool self_conjugate = k == 0 || 2 * k == len;
    spectral_energy += (self_conjugate ? 1.0 : 2.0) * mag2;
    const double order = static_cast<double>(k) * spec.resolution;
    if (order <= max_order) {
      spec.order.push_back(order);
      spec.power.push_back(scale * mag2);
    }
  }
  spectral_energy /= static_cast<double>(len);
  spec.parseval_residual =
      time_energy > 0.0 ? std::abs(spectral_energy - time_energy) / time_energy : std::abs(spectral_energy);
  spec.cutoff_order = detect_cutoff(spec);
  return spec;
}

double harmonic_photon_number(const HarmonicSpectrum& spec, int q) {
  if (q < 1 || q % 2 == 0) throw DomainError("harmonic order must be a positive odd integer");
  if (spec.empty() || q + 1 > spec.order.back()) throw DomainError("harmonic order outside the spectrum axis");
  double sum = 0.0;
  for (std::size_t k = 0; k < spec.order.size(); ++k) {
    if (spec.order[k] >= q - 1 && spec.order[k] <= q + 1) sum += spec.power[k];
  }
  return sum * spec.resolution / (q * spec.omega);
}

std::vector<std::pair<int, double>> odd_harmonic_peaks_db(const HarmonicSpectrum& spec) {
  std::vector<std::pair<int, double>> peaks;
  if (spec.empty()) return peaks;
  const double top = spec.order.back();
  for (int q = 3; q + 0.5 <= top; q += 2) {
    double peak = 0.0;
    for (std::size_t k = 0; k < spec.order.size(); ++k) {
      if (spec.order[k] >= q - 0.5 && spec.order[k] <= q + 0.5) peak = std::max(peak, spec.power[k]);
    }
    peaks.emplace_back(q, 10.0 * std::log10(std::max(peak, 1e-300)));
  }
  return peaks;
}

std::optional<int> detect_cutoff(const HarmonicSpectrum& spec, double drop_db) {
  const auto peaks = odd_harmonic_peaks_db(spec);
  constexpr double kPlateauSpread = 10.0;  // dB
  constexpr std::size_t kMinRun = 3;

  auto median = [&](std::size_t lo, std::size_t hi) {
    std::vector<double> v;
    for (std::size_t i = lo; i < hi; ++i) v.push_back(peaks[i].second);
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
  };

  // The plateau is the first run of consecutive odd harmonics, counted from
  // the low orders, whose peaks stay within the spread. Empty bands (the
  // clamped floor) never belong to a run.
  const double floor_db = 10.0 * std::log10(1e-300);
  std::optional<double> ref;
  for (std::size_t lo = 0; lo < peaks.size() && !ref; ++lo) {
    if (peaks[lo].second <= floor_db) continue;
    double mn = peaks[lo].second;
    double mx = mn;
    std::size_t hi = lo + 1;
    while (hi < peaks.size()) {
      const double v = peaks[hi].second;
      if (v <= floor_db || std::max(mx, v) - std::min(mn, v) > kPlateauSpread) break;
      mn = std::min(mn, v);
      mx = std::max(mx, v);
      ++hi;
    }
    if (hi - lo >= kMinRun) ref = median(lo, hi);
  }
  if (!ref) return std::nullopt;

  std::optional<int> cutoff;
  for (const auto& [q, db] : peaks) {
    if (db >= *ref - drop_db) cutoff = q;
  }
  return cutoff;
}

double semiclassical_cutoff_order(double ionization_potential, double field_au, double omega) {
  const double up = field_au * field_au / (4.0 * omega * omega);
  return (ionization_potential + 3.17 * up) / omega;
}

void to_json(nlohmann::json& j, const HarmonicSpectrum& spec) {
  j = {{"window", spec.window},
       {"fft_length", spec.fft_length},
       {"resolution_orders", spec.resolution},
       {"omega_au", spec.omega},
       {"parseval_residual", spec.parseval_residual},
       {"max_order", spec.empty() ? 0.0 : spec.order.back()}};
  j["cutoff_order"] = spec.cutoff_order ? nlohmann::json(*spec.cutoff_order) : nlohmann::json(nullptr);
}

}  // namespace bsv::hhg
