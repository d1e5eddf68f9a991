#include "omcv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "omcv/error.hpp"

namespace omcv {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

struct Feature {
  double centre;
  double width;
};

std::vector<double> breakpoints(const std::vector<Feature>& features, double window) {
  std::vector<double> pts{0.0, window};
  for (const auto& f : features) {
    const double c = std::abs(f.centre);
    const double h = std::abs(f.width);
    pts.push_back(c);
    if (h == 0.0) continue;
    for (double k : {1.0, 3.0, 10.0, 30.0, 100.0}) {
      pts.push_back(c - k * h);
      pts.push_back(c + k * h);
    }
  }
  std::vector<double> out;
  for (double p : pts)
    if (p >= 0.0 && p <= window) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [window](double a, double b) { return b - a <= 1e-12 * window; }),
            out.end());
  if (out.back() != window) out.back() = window;
  return out;
}

std::vector<Feature> model_features(const LinearModel& model, const StabilityReport& st) {
  const auto& d = model.derived;
  std::vector<Feature> f;
  for (int i = 0; i < 6; ++i) f.push_back({st.eigenvalues(i).imag(), st.eigenvalues(i).real()});
  f.push_back({d.omega_m, d.gamma_m});
  f.push_back({d.delta_l, d.kappa_l});
  f.push_back({d.delta_r, d.kappa_r});
  return f;
}

double model_scale(const LinearModel& model, const StabilityReport& st) {
  const auto& d = model.derived;
  double s = std::max({d.omega_m, d.kappa_r, d.kappa_l, std::abs(d.delta_l), std::abs(d.delta_r)});
  for (int i = 0; i < 6; ++i) s = std::max(s, std::abs(st.eigenvalues(i)));
  return s;
}

// Folds w and -w together, takes the real symmetric part, and checks that
// what was thrown away is at roundoff level.
OutputCM finish(const QuadratureResult& q, const char* who) {
  if (!q.converged) {
    std::ostringstream os;
    os << who << ": quadrature missed its error target (achieved "
       << q.error.maxCoeff() * Conventions::spectral_measure << ") after " << q.panels
       << " panels";
    throw NumericalError(os.str(), q.error.maxCoeff() * Conventions::spectral_measure);
  }
  const CMat6 v = q.value * Conventions::spectral_measure;
  const Mat6 re = v.real();
  OutputCM out;
  out.matrix = 0.5 * (re + re.transpose());
  out.quad_error = q.error * Conventions::spectral_measure;
  out.panels = q.panels;
  out.evaluations = q.evaluations;

  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const double scale =
          std::max(1.0, std::sqrt(std::abs(out.matrix(i, i) * out.matrix(j, j))));
      const double discarded =
          std::max(std::abs(v(i, j).imag()), 0.5 * std::abs(re(i, j) - re(j, i)));
      if (discarded > 1e-8 * scale) {
        std::ostringstream os;
        os << who << ": integrand is not conjugate-symmetric (entry " << i << "," << j
           << " discards " << discarded << ")";
        throw NumericalError(os.str(), discarded);
      }
    }
  }
  return out;
}

}  // namespace

FilterPair filters_from(const PhysicalParams& p) {
  return {FilterSpec{p.filter_tau_l, p.filter_omega_l}, FilterSpec{p.filter_tau_r, p.filter_omega_r}};
}

std::complex<double> filter_ft(const FilterSpec& spec, double omega) {
  return std::sqrt(2.0 / spec.tau) / cd(1.0 / spec.tau, -(omega - spec.omega_c));
}

CMat6 upsilon(const LinearModel& model, const FilterPair& filters, double omega) {
  CMat6 u = CMat6::Zero();
  u(kQ, kQ) = 1.0;
  u(kP, kP) = 1.0;
  auto fill = [&](int x, const FilterSpec& spec, double kappa) {
    const cd gp = filter_ft(spec, omega);
    const cd gm = std::conj(filter_ft(spec, -omega));
    const double amp = std::sqrt(2.0 * kappa);
    const cd re = amp * 0.5 * (gp + gm);
    const cd im = amp * (gp - gm) / (2.0 * kI);
    u(x, x) = re;
    u(x, x + 1) = -im;
    u(x + 1, x) = im;
    u(x + 1, x + 1) = re;
  };
  fill(kXl, filters.l, model.derived.kappa_l);
  fill(kXr, filters.r, model.derived.kappa_r);
  return u;
}

OutputCM output_cm(const LinearModel& model, const FilterPair& filters,
                   const SpectralOptions& opts) {
  const StabilityReport st = stability(model);
  if (!st.stable) throw DomainError("output_cm: drift matrix is not Hurwitz");
  for (const FilterSpec* f : {&filters.l, &filters.r})
    if (!(f->tau > 0.0)) throw ParameterError("output_cm: filter tau must be positive");

  auto features = model_features(model, st);
  double scale = model_scale(model, st);
  for (const FilterSpec* f : {&filters.l, &filters.r}) {
    features.push_back({f->omega_c, 1.0 / f->tau});
    scale = std::max(scale, std::abs(f->omega_c) + 5.0 / f->tau);
  }
  const auto breaks = breakpoints(features, opts.window_scale * scale);

  const CMat6 p_out = Vec6(model.out_coupling).cast<cd>().asDiagonal();
  const Vec6 sqrt_d = model.diffusion.cwiseSqrt();
  const CMat6 a = model.drift.cast<cd>();
  auto half = [&](double w) -> CMat6 {
    const CMat6 m = (kI * w * CMat6::Identity() + a).inverse();
    const CMat6 k = upsilon(model, filters, w) * (m + p_out) * sqrt_d.cast<cd>().asDiagonal();
    return k * k.adjoint();
  };
  auto integrand = [&](double w) -> CMat6 { return half(w) + half(-w); };
  return finish(integrate_half_line(integrand, breaks, opts.quad), "output_cm");
}

OutputCM intracavity_cm_spectral(const LinearModel& model, const SpectralOptions& opts) {
  const StabilityReport st = stability(model);
  if (!st.stable) throw DomainError("intracavity_cm_spectral: drift matrix is not Hurwitz");
  const auto breaks =
      breakpoints(model_features(model, st), opts.window_scale * model_scale(model, st));

  const Vec6 sqrt_d = model.diffusion.cwiseSqrt();
  const CMat6 a = model.drift.cast<cd>();
  auto half = [&](double w) -> CMat6 {
    const CMat6 k = (kI * w * CMat6::Identity() + a).inverse() * sqrt_d.cast<cd>().asDiagonal();
    return k * k.adjoint();
  };
  auto integrand = [&](double w) -> CMat6 { return half(w) + half(-w); };
  return finish(integrate_half_line(integrand, breaks, opts.quad), "intracavity_cm_spectral");
}

Mat4 optical_block(const Mat6& m) { return m.block<4, 4>(kXl, kXl); }

TwoModeBlock reduce_two_mode(const Mat4& v) {
  // Local indices: 0 Xl, 1 Yl, 2 Xr, 3 Yr.
  TwoModeBlock b;
  b.big_l = 0.5 * (v(0, 0) + v(1, 1));
  b.big_r = 0.5 * (v(2, 2) + v(3, 3));
  b.c = 0.5 * (v(1, 3) - v(0, 2));
  b.c_prime = 0.5 * (v(0, 3) + v(1, 2));
  b.asymmetry = (v - block_matrix(b)).cwiseAbs().maxCoeff();
  if (b.asymmetry > 0.05 * std::max(b.big_l, b.big_r)) {
    std::ostringstream os;
    os << "reduce_two_mode: block-form approximation degraded (asymmetry " << b.asymmetry
       << ")";
    b.warnings.push_back(os.str());
  }
  return b;
}

TwoModeBlock reduce_two_mode(const OutputCM& cm) { return reduce_two_mode(optical_block(cm.matrix)); }

Mat4 block_matrix(const TwoModeBlock& b) {
  Mat4 m;
  // clang-format off
  m << b.big_l,    0.0,       -b.c,       b.c_prime,
       0.0,        b.big_l,    b.c_prime, b.c,
      -b.c,        b.c_prime,  b.big_r,   0.0,
       b.c_prime,  b.c,        0.0,       b.big_r;
  // clang-format on
  return m;
}

}  // namespace omcv
