#pragma once

#include <functional>
#include <span>

#include "omcv/dynamics.hpp"

namespace omcv {

struct QuadratureOptions {
  double abs_tol = 1e-11;
  // Relative to sqrt(|V_ii V_jj|), so each mode is resolved on its own scale.
  double rel_tol = 1e-11;
  int max_panels = 20000;
};

struct QuadratureResult {
  CMat6 value;
  Mat6 error;  // per-entry absolute error estimate
  int panels = 0;
  int evaluations = 0;
  bool converged = false;
};

using MatrixIntegrand = std::function<CMat6(double)>;

// Globally adaptive 21-point Gauss-Kronrod quadrature of a 6x6 complex
// integrand over [breaks.front(), infinity). The breakpoints seed the initial
// panels; the semi-infinite tail beyond breaks.back() is mapped to a finite
// interval with w = W / t. Panels are refined in a fixed, data-determined
// order, so the result is bit-reproducible.
QuadratureResult integrate_half_line(const MatrixIntegrand& f, std::span<const double> breaks,
                                     const QuadratureOptions& opts = {});

}  // namespace omcv
