#include "omcv/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omcv/error.hpp"

namespace omcv {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "parameter '" << name << "' must be strictly positive, got " << v;
    throw ParameterError(os.str());
  }
}

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "parameter '" << name << "' must be non-negative, got " << v;
    throw ParameterError(os.str());
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "parameter '" << name << "' must be finite, got " << v;
    throw ParameterError(os.str());
  }
}

double laser_frequency(double wavelength) {
  return 2.0 * constants::pi * constants::c_light / wavelength;
}

// Everything that depends only on the raw parameters and not on detunings.
struct DriveTerms {
  double g0_r, g0_l;
  double eps_r, eps_l;
  double omega_r, omega_l;  // optical angular frequencies
};

DriveTerms drive_terms(const PhysicalParams& p) {
  using constants::hbar;
  DriveTerms t{};
  t.omega_r = laser_frequency(p.wavelength_r);
  t.omega_l = laser_frequency(p.wavelength_l);
  const double zpf = std::sqrt(hbar / (p.mass * p.omega_m));
  t.g0_r = t.omega_r / p.cav_half_length * zpf;
  t.g0_l = t.omega_l / p.cav_half_length * zpf;
  t.eps_r = std::sqrt(2.0 * p.power_r * p.kappa_r / (hbar * t.omega_r));
  t.eps_l = std::sqrt(2.0 * p.power_l * p.kappa_l / (hbar * t.omega_l));
  return t;
}

DerivedParams at_detunings(const PhysicalParams& p, const DriveTerms& t,
                           double delta_r, double delta_l) {
  DerivedParams d;
  d.g0_r = t.g0_r;
  d.g0_l = t.g0_l;
  d.eps_r = t.eps_r;
  d.eps_l = t.eps_l;
  d.gamma_m = p.omega_m / p.quality;
  d.nbar_mech = thermal_occupancy(p.omega_m, p.temperature);
  d.delta_r = delta_r;
  d.delta_l = delta_l;
  d.omega_m = p.omega_m;
  d.kappa_r = p.kappa_r;
  d.kappa_l = p.kappa_l;

  const double den_r = p.kappa_r * p.kappa_r + delta_r * delta_r;
  const double den_l = p.kappa_l * p.kappa_l + delta_l * delta_l;
  d.alpha_mag = t.eps_r / std::sqrt(den_r);
  d.beta_mag = t.eps_l / std::sqrt(den_l);

  // Closed form, with the drive frequency standing in for the resonance.
  const double m_om = p.mass * p.omega_m;
  d.geff_r = 2.0 * t.omega_r / p.cav_half_length *
             std::sqrt(p.power_r * p.kappa_r / (m_om * t.omega_r * den_r));
  d.geff_l = 2.0 * t.omega_l / p.cav_half_length *
             std::sqrt(p.power_l * p.kappa_l / (m_om * t.omega_l * den_l));

  d.q_s = (d.g0_l * d.beta_mag * d.beta_mag - d.g0_r * d.alpha_mag * d.alpha_mag) /
          p.omega_m;
  return d;
}

// Radiation-pressure balance q - s*(F_l - F_r)/Omega_m for bare detunings,
// with s the fraction of the nominal drive power.
struct Balance {
  double omega_m, kappa_r, kappa_l, delta0_r, delta0_l;
  double g0_r, g0_l, drive_r, drive_l;  // drive_i = G0_i * eps_i^2

  double den_r(double q) const {
    const double x = delta0_r + g0_r * q;
    return kappa_r * kappa_r + x * x;
  }
  double den_l(double q) const {
    const double x = delta0_l - g0_l * q;
    return kappa_l * kappa_l + x * x;
  }
  double value(double q, double s) const {
    return q - s * (drive_l / den_l(q) - drive_r / den_r(q)) / omega_m;
  }
  double slope(double q, double s) const {
    const double dl = den_l(q), dr = den_r(q);
    const double tl = 2.0 * g0_l * drive_l * (delta0_l - g0_l * q) / (dl * dl);
    const double tr = 2.0 * g0_r * drive_r * (delta0_r + g0_r * q) / (dr * dr);
    return 1.0 - s * (tl + tr) / omega_m;
  }
  // Every root lies in [-bound, bound].
  double bound(double s) const {
    return s * std::max(drive_l / (kappa_l * kappa_l), drive_r / (kappa_r * kappa_r)) /
           omega_m;
  }
};

bool converged(double step, double q) {
  return std::abs(step) < 1e-10 * std::max(1.0, std::abs(q));
}

// Damped Newton. Returns false if it fails to settle within the cap.
bool newton(const Balance& b, double s, double& q, int& iterations) {
  for (int it = 0; it < 100; ++it) {
    ++iterations;
    const double f = b.value(q, s);
    const double df = b.slope(q, s);
    if (df == 0.0 || !std::isfinite(df)) return false;
    double step = f / df;
    double lambda = 1.0;
    double trial = q - step;
    while (std::abs(b.value(trial, s)) > std::abs(f) && lambda > 1e-6) {
      lambda *= 0.5;
      trial = q - lambda * step;
    }
    q = trial;
    if (converged(lambda * step, q)) return true;
  }
  return false;
}

// All real roots at power fraction s: dense sign-change scan of the bounded
// root interval, refined by bisection then Newton. Tangential double roots
// are picked up as local minima of |f| that touch zero.
std::vector<double> all_roots(const Balance& b, double s) {
  const double lim = b.bound(s);
  std::vector<double> roots;
  if (lim == 0.0) {
    roots.push_back(0.0);
    return roots;
  }
  // Non-uniform grid: the Lorentzians are narrow compared with the bound, so
  // sample densely near their centres as well as uniformly.
  std::vector<double> grid;
  constexpr int kUniform = 20000;
  for (int i = 0; i <= kUniform; ++i) grid.push_back(-lim + 2.0 * lim * i / kUniform);
  auto add_centre = [&](double centre, double width) {
    for (int k = -400; k <= 400; ++k) {
      const double x = centre + width * std::sinh(k / 40.0) / 50.0;
      if (x > -lim && x < lim) grid.push_back(x);
    }
  };
  if (b.g0_l > 0.0) add_centre(b.delta0_l / b.g0_l, b.kappa_l / b.g0_l);
  if (b.g0_r > 0.0) add_centre(-b.delta0_r / b.g0_r, b.kappa_r / b.g0_r);
  std::sort(grid.begin(), grid.end());

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double lo = grid[i], hi = grid[i + 1];
    double flo = b.value(lo, s), fhi = b.value(hi, s);
    if (flo == 0.0) {
      roots.push_back(lo);
      continue;
    }
    if (flo * fhi > 0.0) continue;
    for (int it = 0; it < 200 && !converged(hi - lo, lo); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = b.value(mid, s);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    double q = 0.5 * (lo + hi);
    int unused = 0;
    newton(b, s, q, unused);
    roots.push_back(q);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double c) {
                            return std::abs(a - c) <=
                                   1e-8 * std::max(1.0, std::max(std::abs(a), std::abs(c)));
                          }),
              roots.end());
  return roots;
}

}  // namespace

void validate(const PhysicalParams& p) {
  require_positive(p.mass, "mass");
  require_positive(p.omega_m, "omega_m");
  require_positive(p.quality, "quality");
  require_positive(p.cav_half_length, "cav_half_length");
  require_positive(p.kappa_r, "kappa_r");
  require_positive(p.kappa_l, "kappa_l");
  require_non_negative(p.power_r, "power_r");
  require_non_negative(p.power_l, "power_l");
  require_positive(p.wavelength_r, "wavelength_r");
  require_positive(p.wavelength_l, "wavelength_l");
  require_finite(p.detuning.r, "delta_r");
  require_finite(p.detuning.l, "delta_l");
  require_non_negative(p.temperature, "temperature");
  require_positive(p.filter_tau_r, "filter_tau_r");
  require_positive(p.filter_tau_l, "filter_tau_l");
  require_finite(p.filter_omega_r, "filter_omega_r");
  require_finite(p.filter_omega_l, "filter_omega_l");
}

double thermal_occupancy(double omega, double temperature) {
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

DerivedParams derive(const PhysicalParams& params) {
  validate(params);
  if (params.detuning.kind != DetuningMode::Kind::effective)
    throw ParameterError("derive() needs effective detunings; use fixed_point() for bare ones");
  return at_detunings(params, drive_terms(params), params.detuning.r, params.detuning.l);
}

FixedPointResult fixed_point(const PhysicalParams& params) {
  validate(params);
  if (params.detuning.kind != DetuningMode::Kind::bare)
    throw ParameterError("fixed_point() needs bare detunings");

  const DriveTerms t = drive_terms(params);
  const Balance b{params.omega_m,
                  params.kappa_r,
                  params.kappa_l,
                  params.detuning.r,
                  params.detuning.l,
                  t.g0_r,
                  t.g0_l,
                  t.g0_r * t.eps_r * t.eps_r,
                  t.g0_l * t.eps_l * t.eps_l};

  FixedPointResult out;
  double q = 0.0;
  constexpr int kSteps = 200;
  for (int k = 1; k <= kSteps; ++k) {
    const double s = static_cast<double>(k) / kSteps;
    double trial = q;
    if (!newton(b, s, trial, out.iterations) || b.slope(trial, s) <= 0.0) {
      // Fold of the branch being followed: the system jumps to the nearest
      // surviving stable root.
      const auto roots = all_roots(b, s);
      double best = trial;
      double dist = INFINITY;
      for (double r : roots) {
        if (b.slope(r, s) <= 0.0) continue;
        if (std::abs(r - q) < dist) {
          dist = std::abs(r - q);
          best = r;
        }
      }
      if (!std::isfinite(dist)) {
        throw NonConvergenceError("fixed_point: continuation lost the stable branch",
                                  std::abs(b.value(trial, s)));
      }
      out.warnings.push_back("fixed_point: branch folded at power fraction " +
                             std::to_string(s) + "; jumped to nearest stable root");
      trial = best;
    }
    q = trial;
  }
  if (!newton(b, 1.0, q, out.iterations)) {
    throw NonConvergenceError("fixed_point: final Newton polish did not converge",
                              std::abs(b.value(q, 1.0)));
  }

  out.roots = all_roots(b, 1.0);
  for (double r : out.roots)
    if (b.slope(r, 1.0) > 0.0) out.stable_roots.push_back(r);
  if (out.stable_roots.size() > 1) {
    std::ostringstream os;
    os << "fixed_point: multiple stable roots q_s =";
    for (double r : out.stable_roots) os << ' ' << r;
    out.warnings.push_back(os.str());
  }

  out.derived = at_detunings(params, t, params.detuning.r + t.g0_r * q,
                             params.detuning.l - t.g0_l * q);
  out.derived.q_s = q;
  return out;
}

DerivedParams resolve(const PhysicalParams& params) {
  if (params.detuning.kind == DetuningMode::Kind::bare) return fixed_point(params).derived;
  return derive(params);
}

}  // namespace omcv
