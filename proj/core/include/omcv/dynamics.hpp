#pragma once

#include <complex>
#include <iosfwd>

#include <Eigen/Dense>

#include "omcv/params.hpp"

namespace omcv {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using CMat6 = Eigen::Matrix<std::complex<double>, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

// State ordering of every 6x6 object in the library.
enum Index : int { kQ = 0, kP = 1, kXl = 2, kYl = 3, kXr = 4, kYr = 5 };

// Noise and normalisation constants of the frequency-domain covariance
// integral. Fixed once against two calibration cases (decoupled mechanics must
// give n+1/2, an undriven cavity must give a vacuum output of 1/2); see
// docs/conventions.md.
struct Conventions {
  // Optical diffusion entry = scale * 2 kappa (symmetrised vacuum noise).
  static constexpr double optical_diffusion_scale = 0.5;
  // Output-coupling entry = sign / (2 kappa), paired with M(w) = (i w + A)^-1.
  static constexpr double out_coupling_sign = 1.0;
  // V = measure * integral over the real line.
  static constexpr double spectral_measure = 1.0 / (2.0 * constants::pi);
};

struct LinearModel {
  Mat6 drift;         // rad/s
  Vec6 diffusion;     // diagonal, rad/s
  Vec6 out_coupling;  // diagonal, s
  DerivedParams derived;
};

LinearModel build(const DerivedParams& derived);

struct StabilityReport {
  bool stable = false;
  double margin = 0.0;  // largest real part of the spectrum, rad/s
  Eigen::Matrix<std::complex<double>, 6, 1> eigenvalues;
};

// Throws NumericalError if the eigen-solver fails.
StabilityReport stability(const LinearModel& model);

// Stationary intracavity covariance: A V + V A^T + D = 0.
// Throws DomainError for unstable models.
Mat6 lyapunov_cm(const LinearModel& model);

// Row-major text dump, one matrix row per line.
void dump(std::ostream& os, const Mat6& m);

}  // namespace omcv
