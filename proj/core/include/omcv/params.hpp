#pragma once

#include <string>
#include <vector>

namespace omcv {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double c_light = 299792458.0;       // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double default_wavelength = 1064e-9;  // m
}  // namespace constants

// Which detunings the user supplied. Effective detunings already include the
// radiation-pressure shift of the membrane; bare ones are resolved through
// fixed_point().
struct DetuningMode {
  enum class Kind { effective, bare };
  Kind kind = Kind::effective;
  double r = 0.0;  // rad/s
  double l = 0.0;  // rad/s
};

// Raw experimental knobs, SI units throughout.
struct PhysicalParams {
  double mass = 10e-12;               // kg
  double omega_m = 2 * constants::pi * 10e6;  // rad/s
  double quality = 1.5e5;
  double cav_half_length = 1e-3;      // m
  double kappa_r = 0.4 * omega_m;     // rad/s
  double kappa_l = 0.1 * omega_m;     // rad/s
  double power_r = 10e-3;             // W
  double power_l = 48e-3;             // W
  double wavelength_r = constants::default_wavelength;
  double wavelength_l = constants::default_wavelength;
  DetuningMode detuning{DetuningMode::Kind::effective, -omega_m, omega_m};
  double temperature = 1.0;           // K
  double filter_tau_r = 1e-6;         // s
  double filter_tau_l = 1e-6;         // s
  double filter_omega_r = -omega_m;   // rad/s
  double filter_omega_l = omega_m;    // rad/s
};

// Throws ParameterError naming the first offending field.
void validate(const PhysicalParams& params);

struct DerivedParams {
  double g0_r = 0.0, g0_l = 0.0;      // bare couplings, rad/s
  double eps_r = 0.0, eps_l = 0.0;    // drive amplitudes, rad/s
  double gamma_m = 0.0;               // rad/s
  double nbar_mech = 0.0;
  double alpha_mag = 0.0, beta_mag = 0.0;
  double geff_r = 0.0, geff_l = 0.0;  // rad/s
  double delta_r = 0.0, delta_l = 0.0;  // effective detunings, rad/s
  double q_s = 0.0;

  // Copied through so that downstream modules need only this struct.
  double omega_m = 0.0;
  double kappa_r = 0.0, kappa_l = 0.0;
};

double thermal_occupancy(double omega, double temperature);

// Requires detuning.kind == effective.
DerivedParams derive(const PhysicalParams& params);

struct FixedPointResult {
  DerivedParams derived;
  std::vector<double> roots;         // every real q_s solution, ascending
  std::vector<double> stable_roots;  // subset with positive restoring slope
  int iterations = 0;
  std::vector<std::string> warnings;
};

// Self-consistent semiclassical steady state for bare detunings.
// The returned branch is the one reached by ramping the drive power up from
// zero. Throws NonConvergenceError if the continuation or the final polish
// fails.
FixedPointResult fixed_point(const PhysicalParams& params);

// Dispatches on params.detuning.kind.
DerivedParams resolve(const PhysicalParams& params);

}  // namespace omcv
