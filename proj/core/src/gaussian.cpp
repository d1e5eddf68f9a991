#include "omcv/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omcv/error.hpp"

namespace omcv {

namespace {

constexpr double kTol = 1e-9;

// Roots nu^2 = (s -+ sqrt(s^2 - 4 det)) / 2 of the two-mode invariant pair.
std::pair<double, double> invariant_roots(double seralian, double det, const char* what) {
  double disc = seralian * seralian - 4.0 * det;
  if (disc < -kTol * std::max(1.0, seralian * seralian)) {
    std::ostringstream os;
    os << "pt_symplectic: " << what << " invariants are not those of a covariance matrix"
       << " (discriminant " << disc << ")";
    throw DomainError(os.str());
  }
  disc = std::sqrt(std::max(0.0, disc));
  const double lo = std::max(0.0, 0.5 * (seralian - disc));
  const double hi = 0.5 * (seralian + disc);
  return {std::sqrt(lo), std::sqrt(hi)};
}

}  // namespace

SymplecticPair pt_symplectic(const TwoModeBlock& b) {
  if (!(b.big_l >= 0.5 - 1e-6) || !(b.big_r >= 0.5 - 1e-6)) {
    std::ostringstream os;
    os << "pt_symplectic: local variances must be >= 1/2 (L = " << b.big_l
       << ", R = " << b.big_r << ")";
    throw DomainError(os.str());
  }
  // C is symmetric with C^2 = k^2 I, so det V = (LR - k^2)^2 and both
  // invariant pairs factor into perfect squares. Working with the factors
  // avoids the cancellation in s^2 - 4 det for nearly pure states.
  const double l = b.big_l, r = b.big_r;
  const double k2 = b.c * b.c + b.c_prime * b.c_prime;
  const double gap = l * r - k2;  // sqrt(det V)
  if (gap < -kTol * std::max(1.0, l * r)) {
    std::ostringstream os;
    os << "pt_symplectic: block is not positive definite (LR - c^2 - c'^2 = " << gap << ")";
    throw DomainError(os.str());
  }
  const double sum = l + r, diff = std::abs(l - r);
  // State: nu_pm = (sqrt((L+R)^2 - 4k^2) +- |L-R|) / 2.
  const double root = std::sqrt(std::max(0.0, (sum - 2.0 * std::sqrt(k2)) * (sum + 2.0 * std::sqrt(k2))));
  SymplecticPair out;
  out.nu_plus = 0.5 * (root + diff);
  out.nu_minus = 0.5 * (root - diff);
  // Partial transpose: zeta = ((L+R) - sqrt((L-R)^2 + 4k^2)) / 2, evaluated as
  // 2 gap / ((L+R) + sqrt(...)) to keep relative accuracy when zeta is small.
  out.zeta = 2.0 * std::max(0.0, gap) / (sum + std::hypot(diff, 2.0 * std::sqrt(k2)));
  return out;
}

double log_negativity(const TwoModeBlock& block) {
  const double zeta = pt_symplectic(block).zeta;
  return std::max(0.0, -std::log(2.0 * zeta));
}

double duan_sum(const TwoModeBlock& b) { return 2.0 * (b.big_l + b.big_r - 2.0 * b.c); }

Eigen::Vector2d symplectic_eigenvalues(const Mat4& v) {
  const double det_a = v.block<2, 2>(0, 0).determinant();
  const double det_b = v.block<2, 2>(2, 2).determinant();
  const double det_c = v.block<2, 2>(0, 2).determinant();
  const auto [lo, hi] = invariant_roots(det_a + det_b + 2.0 * det_c, v.determinant(), "state");
  return {lo, hi};
}

}  // namespace omcv
