#include <cmath>

#include "doctest.h"
#include "omcv/error.hpp"
#include "omcv/params.hpp"

using namespace omcv;

namespace {

PhysicalParams bare(const PhysicalParams& p, double d0_r, double d0_l) {
  PhysicalParams q = p;
  q.detuning = {DetuningMode::Kind::bare, d0_r, d0_l};
  return q;
}

// q <- (1 - lambda) q + lambda F(q), with the drive terms built by hand.
double damped_fixed_point(const PhysicalParams& p, double tol) {
  using namespace constants;
  const double w_r = 2 * pi * c_light / p.wavelength_r;
  const double w_l = 2 * pi * c_light / p.wavelength_l;
  const double x0 = std::sqrt(hbar / (p.mass * p.omega_m));
  const double g0_r = w_r / p.cav_half_length * x0, g0_l = w_l / p.cav_half_length * x0;
  const double e2_r = 2 * p.power_r * p.kappa_r / (hbar * w_r);
  const double e2_l = 2 * p.power_l * p.kappa_l / (hbar * w_l);
  double q = 0.0;
  for (int it = 0; it < 1000000; ++it) {
    const double dr = p.detuning.r + g0_r * q, dl = p.detuning.l - g0_l * q;
    const double a2 = e2_r / (p.kappa_r * p.kappa_r + dr * dr);
    const double b2 = e2_l / (p.kappa_l * p.kappa_l + dl * dl);
    const double next = 0.5 * q + 0.5 * (g0_l * b2 - g0_r * a2) / p.omega_m;
    if (std::abs(next - q) < tol * std::max(1.0, std::abs(q))) return next;
    q = next;
  }
  FAIL("damped iteration did not converge");
  return q;
}

}  // namespace

TEST_CASE("zero drive gives zero amplitude and coupling") {
  PhysicalParams p;
  p.power_r = 0.0;
  p.power_l = 0.0;
  const auto d = derive(p);
  CHECK(d.eps_r == 0.0);
  CHECK(d.eps_l == 0.0);
  CHECK(d.geff_r == 0.0);
  CHECK(d.geff_l == 0.0);
}

TEST_CASE("thermal occupancy") {
  PhysicalParams p;
  p.temperature = 0.0;
  CHECK(derive(p).nbar_mech == 0.0);

  p.temperature = 1.0;
  const double x = constants::k_boltzmann * 1.0 / (constants::hbar * p.omega_m);
  // High-temperature expansion kT/hw - 1/2 + hw/(12 kT).
  const double series = x - 0.5 + 1.0 / (12.0 * x);
  const double n = derive(p).nbar_mech;
  CHECK(n == doctest::Approx(series).epsilon(1e-9));
  CHECK(n == doctest::Approx(2083.0).epsilon(1e-3));
}

TEST_CASE("bare coupling at the default operating point") {
  const auto d = derive(PhysicalParams{});
  // w/L sqrt(hbar/(m Omega)) by hand: 1.7705e15 / 1e-3 * 4.0967e-13.
  CHECK(d.g0_r == doctest::Approx(725.3).epsilon(1e-3));
  CHECK(d.g0_l == d.g0_r);
}

TEST_CASE("effective coupling matches sqrt2 G0 times the intracavity amplitude") {
  const auto d = derive(PhysicalParams{});
  CHECK(d.geff_r == doctest::Approx(std::sqrt(2.0) * d.g0_r * d.alpha_mag).epsilon(1e-12));
  CHECK(d.geff_l == doctest::Approx(std::sqrt(2.0) * d.g0_l * d.beta_mag).epsilon(1e-12));
}

TEST_CASE("doubling power scales amplitudes and couplings by sqrt2") {
  PhysicalParams p;
  const auto a = derive(p);
  p.power_r *= 2.0;
  p.power_l *= 2.0;
  const auto b = derive(p);
  const double s = std::sqrt(2.0);
  CHECK(b.eps_r / a.eps_r == doctest::Approx(s).epsilon(1e-15));
  CHECK(b.eps_l / a.eps_l == doctest::Approx(s).epsilon(1e-15));
  CHECK(b.geff_r / a.geff_r == doctest::Approx(s).epsilon(1e-15));
  CHECK(b.geff_l / a.geff_l == doctest::Approx(s).epsilon(1e-15));
}

TEST_CASE("effective mode leaves the detunings untouched") {
  PhysicalParams p;
  p.detuning.r = -1.234e7;
  p.detuning.l = 5.678e7;
  const auto d = derive(p);
  CHECK(d.delta_r == p.detuning.r);
  CHECK(d.delta_l == p.detuning.l);
}

TEST_CASE("parameter domain errors") {
  auto bad = [](auto mutate) {
    PhysicalParams p;
    mutate(p);
    return p;
  };
  CHECK_THROWS_AS(derive(bad([](auto& p) { p.mass = 0.0; })), ParameterError);
  CHECK_THROWS_AS(derive(bad([](auto& p) { p.omega_m = -1.0; })), ParameterError);
  CHECK_THROWS_AS(derive(bad([](auto& p) { p.cav_half_length = 0.0; })), ParameterError);
  CHECK_THROWS_AS(derive(bad([](auto& p) { p.temperature = -1.0; })), ParameterError);
  CHECK_THROWS_AS(derive(bad([](auto& p) { p.power_l = -1e-3; })), ParameterError);
  CHECK_THROWS_AS(derive(bad([](auto& p) { p.kappa_r = NAN; })), ParameterError);
  CHECK_THROWS_AS(derive(bad([](auto& p) { p.filter_tau_l = 0.0; })), ParameterError);
  CHECK_THROWS_WITH_AS(derive(bad([](auto& p) { p.mass = 0.0; })), doctest::Contains("mass"),
                       ParameterError);
  CHECK_THROWS_AS(derive(bare(PhysicalParams{}, 0.0, 0.0)), ParameterError);
  CHECK_THROWS_AS(fixed_point(PhysicalParams{}), ParameterError);
}

TEST_CASE("fixed point with no drive reproduces derive exactly") {
  PhysicalParams p;
  p.power_r = 0.0;
  p.power_l = 0.0;
  const auto fp = fixed_point(bare(p, p.detuning.r, p.detuning.l));
  const auto d = derive(p);
  CHECK(fp.derived.q_s == 0.0);
  CHECK(fp.derived.delta_r == d.delta_r);
  CHECK(fp.derived.delta_l == d.delta_l);
  CHECK(fp.derived.geff_r == d.geff_r);
  CHECK(fp.derived.geff_l == d.geff_l);
  CHECK(fp.derived.g0_r == d.g0_r);
  CHECK(fp.derived.nbar_mech == d.nbar_mech);
  CHECK(fp.derived.gamma_m == d.gamma_m);
  CHECK(fp.warnings.empty());
}

TEST_CASE("balanced radiation pressure gives q_s = 0") {
  PhysicalParams p;
  p.kappa_l = p.kappa_r;
  p.power_l = p.power_r;
  const auto fp = fixed_point(bare(p, -p.omega_m, p.omega_m));
  const double scale = fp.derived.g0_r * fp.derived.eps_r * fp.derived.eps_r /
                       (p.kappa_r * p.kappa_r * p.omega_m);
  CHECK(std::abs(fp.derived.q_s) <= 1e-12 * scale);
}

TEST_CASE("asymmetric drive agrees with a damped fixed-point iteration") {
  for (double dl : {1.0, 1.5, 2.0}) {
    const PhysicalParams p = bare(PhysicalParams{}, -0.7 * 6.283185307179586e7,
                                  dl * 6.283185307179586e7);
    const auto fp = fixed_point(p);
    const double ref = damped_fixed_point(p, 1e-11);
    CHECK(fp.derived.q_s == doctest::Approx(ref).epsilon(1e-9));
    CHECK(fp.derived.delta_r == doctest::Approx(p.detuning.r + fp.derived.g0_r * ref).epsilon(1e-9));
    CHECK(fp.derived.delta_l == doctest::Approx(p.detuning.l - fp.derived.g0_l * ref).epsilon(1e-9));
    REQUIRE(!fp.stable_roots.empty());
  }
}

TEST_CASE("bistable drive reports every stable root") {
  // A strong blue-side drive on the left cavity with a narrow linewidth
  // folds the static response.
  PhysicalParams p;
  p.power_r = 0.0;
  p.kappa_l = 0.02 * p.omega_m;
  p.power_l = 0.5;
  const auto fp = fixed_point(bare(p, 0.0, 3.0 * p.omega_m));
  CHECK(fp.roots.size() == 3);
  CHECK(fp.stable_roots.size() == 2);
  bool warned = false;
  for (const auto& w : fp.warnings) warned |= w.find("multiple stable roots") != std::string::npos;
  CHECK(warned);
}

TEST_CASE("resolve dispatches on the detuning mode") {
  const PhysicalParams p;
  CHECK(resolve(p).delta_l == p.detuning.l);
  const auto b = bare(p, p.detuning.r, p.detuning.l);
  CHECK(resolve(b).q_s == fixed_point(b).derived.q_s);
}
