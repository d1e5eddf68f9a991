#include "omcv/dynamics.hpp"

#include <iomanip>
#include <ostream>

#include "omcv/error.hpp"

namespace omcv {

LinearModel build(const DerivedParams& d) {
  LinearModel m;
  m.derived = d;
  Mat6& a = m.drift;
  a.setZero();
  a(kQ, kP) = d.omega_m;

  a(kP, kQ) = -d.omega_m;
  a(kP, kP) = -d.gamma_m;
  a(kP, kXl) = d.geff_l;
  a(kP, kXr) = d.geff_r;

  a(kXl, kXl) = -d.kappa_l;
  a(kXl, kYl) = d.delta_l;
  a(kYl, kQ) = d.geff_l;
  a(kYl, kXl) = -d.delta_l;
  a(kYl, kYl) = -d.kappa_l;

  a(kXr, kXr) = -d.kappa_r;
  a(kXr, kYr) = d.delta_r;
  a(kYr, kQ) = d.geff_r;
  a(kYr, kXr) = -d.delta_r;
  a(kYr, kYr) = -d.kappa_r;

  const double s = Conventions::optical_diffusion_scale;
  m.diffusion << 0.0, d.gamma_m * (2.0 * d.nbar_mech + 1.0), s * 2.0 * d.kappa_l,
      s * 2.0 * d.kappa_l, s * 2.0 * d.kappa_r, s * 2.0 * d.kappa_r;

  const double sg = Conventions::out_coupling_sign;
  m.out_coupling << 0.0, 0.0, sg / (2.0 * d.kappa_l), sg / (2.0 * d.kappa_l),
      sg / (2.0 * d.kappa_r), sg / (2.0 * d.kappa_r);
  return m;
}

StabilityReport stability(const LinearModel& model) {
  Eigen::EigenSolver<Mat6> solver(model.drift, false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("stability: eigenvalue solver did not converge", 0.0);
  StabilityReport r;
  r.eigenvalues = solver.eigenvalues();
  r.margin = r.eigenvalues.real().maxCoeff();
  r.stable = r.margin < 0.0;
  return r;
}

Mat6 lyapunov_cm(const LinearModel& model) {
  if (!stability(model).stable)
    throw DomainError("lyapunov_cm: drift matrix is not Hurwitz");

  // Work in units of the mechanical frequency; V is invariant under the
  // common rescaling of A and D.
  const double scale = model.derived.omega_m;
  const Mat6 a = model.drift / scale;
  const Mat6 d = Mat6(model.diffusion.asDiagonal()) / scale;

  // Column-major vec: vec(AV + VA^T) = (I (x) A + A (x) I) vec(V).
  Eigen::Matrix<double, 36, 36> k;
  k.setZero();
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      k.block<6, 6>(6 * i, 6 * j) += a(i, j) * Mat6::Identity();
    }
    k.block<6, 6>(6 * i, 6 * i) += a;
  }
  Eigen::Matrix<double, 36, 1> rhs = -Eigen::Map<const Eigen::Matrix<double, 36, 1>>(d.data());
  Eigen::Matrix<double, 36, 1> sol = k.fullPivLu().solve(rhs);
  Mat6 v = Eigen::Map<Mat6>(sol.data());
  return 0.5 * (v + v.transpose());
}

void dump(std::ostream& os, const Mat6& m) {
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (j) os << ' ';
      os << std::setprecision(17) << m(i, j);
    }
    os << '\n';
  }
}

}  // namespace omcv
