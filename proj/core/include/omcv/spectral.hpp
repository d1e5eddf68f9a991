#pragma once

#include <complex>
#include <string>
#include <vector>

#include "omcv/dynamics.hpp"
#include "omcv/quadrature.hpp"

namespace omcv {

// Single-pole causal filter g(t) = sqrt(2/tau) theta(t) exp(-(1/tau + i omega_c) t),
// normalised so that the integral of |g|^2 over time is one.
struct FilterSpec {
  double tau = 1e-6;     // s, inverse bandwidth
  double omega_c = 0.0;  // rad/s, may be negative
};

struct FilterPair {
  FilterSpec l;
  FilterSpec r;
};

FilterPair filters_from(const PhysicalParams& params);

// Fourier transform with kernel e^{+i w t}:
// sqrt(2/tau) / (1/tau - i (w - omega_c)).
std::complex<double> filter_ft(const FilterSpec& spec, double omega);

// Filter matrix at frequency w: identity on the mechanical rows and, on each
// optical pair, sqrt(2 kappa) [[R, -I], [I, R]] where R and I are the
// transforms of the real and imaginary parts of g(t). R + iI = g~(w); R and I
// themselves are complex unless omega_c = 0.
CMat6 upsilon(const LinearModel& model, const FilterPair& filters, double omega);

struct OutputCM {
  Mat6 matrix;      // [q, p, Xl_out, Yl_out, Xr_out, Yr_out]
  Mat6 quad_error;  // absolute, per entry
  int panels = 0;
  int evaluations = 0;
};

struct SpectralOptions {
  QuadratureOptions quad;
  // Panels are seeded on [0, W], W = window_scale * (largest spectral
  // feature); the remainder of the half line is handled by the mapped tail.
  double window_scale = 20.0;
};

// Stationary covariance of the mechanics and the two filtered output modes.
// Throws DomainError for unstable models and NumericalError when the
// quadrature misses its error target.
OutputCM output_cm(const LinearModel& model, const FilterPair& filters,
                   const SpectralOptions& opts = {});

// Same integral with the filters removed and no output coupling: the
// intracavity covariance, which must agree with lyapunov_cm().
OutputCM intracavity_cm_spectral(const LinearModel& model, const SpectralOptions& opts = {});

struct TwoModeBlock {
  double big_l = 0.5;
  double big_r = 0.5;
  double c = 0.0;
  double c_prime = 0.0;
  double asymmetry = 0.0;
  std::vector<std::string> warnings;
};

using Mat4 = Eigen::Matrix4d;

TwoModeBlock reduce_two_mode(const Mat4& optical);
TwoModeBlock reduce_two_mode(const OutputCM& cm);

// Idealised matrix [[L I, C], [C^T, R I]] with C = [[-c, c'], [c', c]].
Mat4 block_matrix(const TwoModeBlock& block);

Mat4 optical_block(const Mat6& m);

}  // namespace omcv
