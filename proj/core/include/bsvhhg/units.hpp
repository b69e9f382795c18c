#pragma once

// Physical constants (CODATA 2018) and SI <-> atomic-unit conversions.
// Everything inside the library runs in atomic units; SI and the customary
// laboratory units (W/cm^2, V/cm, fs, nm, cm) appear only at the I/O boundary.

namespace bsv::units {

inline constexpr double kPi = 3.14159265358979323846;

// SI
inline constexpr double kSpeedOfLight = 299792458.0;             // m/s
inline constexpr double kHbar = 1.054571817e-34;                 // J s
inline constexpr double kElementaryCharge = 1.602176634e-19;     // C
inline constexpr double kElectronMass = 9.1093837015e-31;        // kg
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

// atomic units expressed in SI
inline constexpr double kAuTime = 2.4188843265857e-17;      // s
inline constexpr double kAuField = 5.14220674763e11;        // V/m
inline constexpr double kAuEnergy = 4.3597447222071e-18;    // J
inline constexpr double kHartreeEv = 27.211386245988;       // eV

inline constexpr double kFemtosecond = 1e-15;

double fs_to_au(double fs);
double au_to_fs(double au);

/// Angular frequency in atomic units for a vacuum wavelength in nm.
double omega_au_from_wavelength_nm(double wavelength_nm);
/// Angular frequency in rad/s for a vacuum wavelength in nm.
double omega_si_from_wavelength_nm(double wavelength_nm);
/// Photon energy hbar*omega in J for a vacuum wavelength in nm.
double photon_energy_j(double wavelength_nm);

double field_au_from_v_per_cm(double field_v_per_cm);
double field_v_per_cm_from_au(double field_au);

// Cycle-averaged intensity I = (c eps0 / 2) E^2 for a field amplitude E.
double intensity_w_cm2_from_field_v_per_cm(double field_v_per_cm);
double field_v_per_cm_from_intensity_w_cm2(double intensity_w_cm2);
double intensity_w_cm2_from_field_au(double field_au);
double field_au_from_intensity_w_cm2(double intensity_w_cm2);

double ev_to_au(double ev);
double au_to_ev(double au);

}  // namespace bsv::units
