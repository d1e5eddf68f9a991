#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omcv/spectral.hpp"

namespace omcv {

// Bob's homodyne variance of X+ and Y-: (L + R - 2c + v_s) / 2.
// c' does not enter either variance.
double bob_variance(const TwoModeBlock& block, double v_s);

// Residual variance of Alice's signal given Bob's outcome,
// v_s - v_s^2 / (2 v_b). Requires 2 v_b >= v_s > 0.
double conditional_variance(double v_s, double v_b);

// Smallest photon budget for which the signal variance stays >= 1/2.
double min_photon_number(const TwoModeBlock& block);

// Signal variance spent under the photon budget: (nbar + 1) - L.
double signal_variance(const TwoModeBlock& block, double nbar);

// Dense-coding rate in bits, log2(1 + v_s / (L + R - 2c)).
// Throws DomainError below min_photon_number().
double rate_om(const TwoModeBlock& block, double nbar);

struct Capacities {
  double i_d_opt = 0.0;  // dense-coding capacity
  double i_f = 0.0;      // Fock states + photon counting
  double i_s = 0.0;      // squeezed states + homodyne
  double i_c_het = 0.0;  // coherent states + heterodyne
  double i_c = 0.0;      // coherent states + homodyne
};

Capacities capacities(double nbar);

struct RatePoint {
  double nbar = 0.0;
  double v_s = 0.0;
  std::optional<double> i_om;  // empty below the photon-number floor
  Capacities ref;
  double big_l = 0.0, big_r = 0.0, c = 0.0;
};

RatePoint rate_point(const TwoModeBlock& block, double nbar);

// Column order: nbar, i_om, i_d_opt, i_f, i_s, i_c_het, i_c, v_s, big_l, big_r, c.
std::string csv_header(const RatePoint&);
std::string csv_row(const RatePoint& point);

}  // namespace omcv
