#include "bsvhhg/units.hpp"

#include <cmath>

namespace bsv::units {

double fs_to_au(double fs) { return fs * kFemtosecond / kAuTime; }
double au_to_fs(double au) { return au * kAuTime / kFemtosecond; }

double omega_si_from_wavelength_nm(double wavelength_nm) {
  return 2.0 * kPi * kSpeedOfLight / (wavelength_nm * 1e-9);
}

double omega_au_from_wavelength_nm(double wavelength_nm) {
  return omega_si_from_wavelength_nm(wavelength_nm) * kAuTime;
}

double photon_energy_j(double wavelength_nm) {
  return kHbar * omega_si_from_wavelength_nm(wavelength_nm);
}

double field_au_from_v_per_cm(double field_v_per_cm) { return field_v_per_cm * 100.0 / kAuField; }
double field_v_per_cm_from_au(double field_au) { return field_au * kAuField / 100.0; }

double intensity_w_cm2_from_field_v_per_cm(double field_v_per_cm) {
  const double e_si = field_v_per_cm * 100.0;
  return 0.5 * kSpeedOfLight * kVacuumPermittivity * e_si * e_si * 1e-4;
}

double field_v_per_cm_from_intensity_w_cm2(double intensity_w_cm2) {
  return std::sqrt(2.0 * intensity_w_cm2 * 1e4 / (kSpeedOfLight * kVacuumPermittivity)) / 100.0;
}

double intensity_w_cm2_from_field_au(double field_au) {
  return intensity_w_cm2_from_field_v_per_cm(field_v_per_cm_from_au(field_au));
}

double field_au_from_intensity_w_cm2(double intensity_w_cm2) {
  return field_au_from_v_per_cm(field_v_per_cm_from_intensity_w_cm2(intensity_w_cm2));
}

double ev_to_au(double ev) { return ev / kHartreeEv; }
double au_to_ev(double au) { return au * kHartreeEv; }

}  // namespace bsv::units
