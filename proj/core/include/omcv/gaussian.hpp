#pragma once

#include "omcv/spectral.hpp"

namespace omcv {

struct SymplecticPair {
  double nu_minus = 0.5;  // symplectic spectrum of the state itself
  double nu_plus = 0.5;
  double zeta = 0.5;      // least symplectic eigenvalue after partial transposition
};

// Closed-form two-mode symplectic invariants. c' enters exactly through
// det C = -(c^2 + c'^2); the invariants are evaluated in factored form so
// nearly pure, strongly squeezed blocks keep full precision.
// Throws DomainError if L or R < 1/2 or the block is not positive definite.
SymplecticPair pt_symplectic(const TwoModeBlock& block);

// E_N = max(0, -ln(2 zeta)), natural logarithm.
double log_negativity(const TwoModeBlock& block);

// <(Xl + Xr)^2> + <(Yl - Yr)^2> = 2 (L + R - 2c); below 2 certifies
// entanglement (vacuum variance 1/2).
double duan_sum(const TwoModeBlock& block);

// Symplectic eigenvalues of an arbitrary 4x4 two-mode covariance matrix,
// ascending.
Eigen::Vector2d symplectic_eigenvalues(const Mat4& v);

}  // namespace omcv
