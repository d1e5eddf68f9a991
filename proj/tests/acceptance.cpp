// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "omcv/densecoding.hpp"
#include "omcv/dynamics.hpp"
#include "omcv/figures.hpp"
#include "omcv/gaussian.hpp"
#include "omcv/spectral.hpp"
#include "oracles.hpp"

using namespace omcv;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> f;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        f.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    f.push_back(cur);
    rows.push_back(f);
  }
  return rows;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Random parameter sets around the figure operating point; unstable draws
// are rejected.
std::vector<PhysicalParams> random_stable(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto span = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  auto log_span = [&](double lo, double hi) { return lo * std::pow(hi / lo, u(rng)); };
  std::vector<PhysicalParams> out;
  while (static_cast<int>(out.size()) < count) {
    PhysicalParams p = preset_params("fig2");
    const double om = p.omega_m;
    p.kappa_l = span(0.05, 1.0) * om;
    p.kappa_r = span(0.05, 1.0) * om;
    p.power_l = log_span(1e-3, 1e-1);
    p.power_r = log_span(1e-3, 5e-2);
    p.detuning.l = span(0.5, 1.5) * om;
    p.detuning.r = -span(0.5, 1.5) * om;
    p.temperature = log_span(0.05, 10.0);
    p.quality = log_span(1e4, 2e5);
    p.filter_tau_l = log_span(0.3e-6, 3e-6);
    p.filter_tau_r = log_span(0.3e-6, 3e-6);
    p.filter_omega_l = span(0.5, 1.5) * om;
    p.filter_omega_r = -span(0.5, 1.5) * om;
    if (stability(build(derive(p))).stable) out.push_back(p);
  }
  return out;
}

Outcome vacuum_calibration() {
  const auto t0 = Clock::now();
  PhysicalParams p = preset_params("fig2");
  p.power_r = p.power_l = 0.0;
  const auto b = reduce_two_mode(output_cm(build(derive(p)), filters_from(p)));
  const double dt = seconds_since(t0);
  const double err = std::max({std::abs(b.big_l - 0.5), std::abs(b.big_r - 0.5), std::abs(b.c),
                               std::abs(b.c_prime)});
  return {err <= 1e-6 && dt < 1.0, fmt("max deviation %.2e", err) + fmt(", %.3f s", dt)};
}

Outcome lyapunov_spectral() {
  const auto t0 = Clock::now();
  std::vector<PhysicalParams> sets{preset_params("fig2")};
  for (const auto& p : random_stable(20, 1234)) sets.push_back(p);
  double worst = 0.0;
  for (const auto& p : sets) {
    const auto m = build(derive(p));
    const Mat6 diff = intracavity_cm_spectral(m).matrix - lyapunov_cm(m);
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-6 && dt < 30.0,
          std::to_string(sets.size()) + " models" +
              fmt(", max |difference| %.2e", worst) + fmt(", %.2f s", dt)};
}

Outcome mechanical_calibration() {
  double worst = 0.0;
  for (double t : {0.01, 1.0, 10.0}) {
    PhysicalParams p = preset_params("fig2");
    p.power_r = p.power_l = 0.0;
    p.temperature = t;
    const auto d = derive(p);
    const Mat6 v = lyapunov_cm(build(d));
    const double ref = d.nbar_mech + 0.5;
    worst = std::max({worst, std::abs(v(kQ, kQ) / ref - 1.0), std::abs(v(kP, kP) / ref - 1.0)});
  }
  return {worst <= 1e-8, fmt("max relative deviation %.2e", worst)};
}

Outcome physicality() {
  const auto sets = random_stable(200, 98765);
  double min_nu = INFINITY;
  int entangled = 0, mismatches = 0;
  for (const auto& p : sets) {
    const auto cm = output_cm(build(derive(p)), filters_from(p));
    const Eigen::Matrix4d opt = optical_block(cm.matrix);
    min_nu = std::min(min_nu, oracle::symplectic_spectrum(opt)(0));
    const auto b = reduce_two_mode(cm);
    const double zeta = pt_symplectic(b).zeta;
    const bool en = log_negativity(b) > 0.0;
    entangled += en;
    mismatches += en != (zeta < 0.5);
  }
  return {min_nu >= 0.5 - 1e-6 && mismatches == 0,
          fmt("min symplectic eigenvalue %.9f", min_nu) + fmt(", %.0f entangled of 200", entangled) +
              fmt(", %.0f E_N/zeta mismatches", mismatches)};
}

Outcome tmsv() {
  double worst = 0.0;
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    TwoModeBlock b;
    b.big_l = b.big_r = 0.5 * std::cosh(2 * r);
    b.c = 0.5 * std::sinh(2 * r);
    worst = std::max({worst, std::abs(pt_symplectic(b).zeta - 0.5 * std::exp(-2 * r)),
                      std::abs(log_negativity(b) - 2 * r)});
  }
  return {worst <= 1e-9, fmt("max deviation %.2e", worst)};
}

Outcome capacity_formulas() {
  const auto z = capacities(0.0), one = capacities(1.0), two = capacities(2.0);
  const double l3 = std::log2(3.0);
  const double worst = std::max({std::abs(one.i_d_opt - l3), std::abs(one.i_f - 2.0),
                                 std::abs(two.i_c - l3), std::abs(two.i_c_het - l3),
                                 std::abs(z.i_d_opt), std::abs(z.i_f), std::abs(z.i_s),
                                 std::abs(z.i_c_het), std::abs(z.i_c)});
  return {worst <= 1e-12, fmt("max deviation %.2e", worst)};
}

Outcome fig7_structure() {
  const auto t0 = Clock::now();
  const auto fig = figure("fig7");
  const auto rows = parse_csv(fig.files.at(0).contents);
  double max_excess = -INFINITY;
  double lo = NAN, hi = NAN;
  bool ordering = false;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r[1].empty()) continue;
    const double n = std::stod(r[0]), i_om = std::stod(r[1]), d_opt = std::stod(r[2]),
                 i_f = std::stod(r[3]), i_s = std::stod(r[4]), i_het = std::stod(r[5]);
    max_excess = std::max(max_excess, i_om - d_opt);
    if (i_om > i_f) {
      if (std::isnan(lo)) lo = n;
      hi = n;
    }
    if (n == 5.0) ordering = i_om > i_s && i_s > i_het;
  }
  const double dt = seconds_since(t0);
  const bool window = !std::isnan(lo);
  std::string detail = window ? fmt("I_OM > I_F on nbar in [%.2f, ", lo) + fmt("%.2f]", hi)
                              : std::string("no I_F window");
  detail += fmt(", max(I_OM - I_D_opt) = %.3f", max_excess);
  detail += ordering ? ", ordering at nbar 5 holds" : ", ordering at nbar 5 fails";
  detail += fmt(", %.2f s", dt);
  return {window && max_excess <= 1e-9 && ordering && dt < 120.0, detail};
}

Outcome fig2_shape() {
  const auto t0 = Clock::now();
  const auto fig = figure("fig2");
  const double dt = seconds_since(t0);
  std::vector<std::vector<std::vector<std::string>>> curves;
  for (const auto& f : fig.files) curves.push_back(parse_csv(f.contents));
  // fig2_q10000.csv, fig2_q150000.csv
  const auto& low = curves.at(0);
  const auto& high = curves.at(1);
  size_t best = 1;
  double peak = -INFINITY;
  for (size_t i = 1; i < high.size(); ++i) {
    if (high[i][1].empty()) continue;
    const double v = std::stod(high[i][1]);
    if (v > peak) {
      peak = v;
      best = i;
    }
  }
  const double x = std::stod(high[best][0]);
  const double other = low[best][1].empty() ? -INFINITY : std::stod(low[best][1]);
  const bool rows_ok = low.size() == 61 && high.size() == 61;
  return {rows_ok && x >= 0.9 && x <= 1.1 && peak > other && dt < 60.0,
          fmt("argmax at %.4f Omega_m", x) + fmt(", E_N %.4f (Q=1.5e5)", peak) +
              fmt(" vs %.4f (Q=1e4)", other) + fmt(", %.2f s", dt)};
}

Outcome stability_masking() {
  FigureOptions opts;
  PhysicalParams base = preset_params("fig2");
  base.power_l *= 100.0;
  base.power_r *= 100.0;
  opts.base = base;
  const auto fig = figure("fig2", opts);
  int unstable = 0, leaked = 0, total = 0;
  for (const auto& f : fig.files) {
    const auto rows = parse_csv(f.contents);
    for (size_t i = 1; i < rows.size(); ++i) {
      ++total;
      if (rows[i][2] == "false") {
        ++unstable;
        leaked += !rows[i][1].empty();
      }
    }
  }
  return {unstable >= 1 && leaked == 0,
          fmt("%.0f", unstable) + fmt(" of %.0f points unstable", total) +
              fmt(", %.0f masked points with a value", leaked)};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "omcv_acceptance";
  std::vector<std::string> outputs;
  for (int workers : {1, 8, 1, 8}) {
    FigureOptions opts;
    opts.workers = workers;
    const auto sub = dir / ("w" + std::to_string(outputs.size()));
    write_figure(figure("fig7", opts), sub);
    std::ifstream in(sub / "fig7.csv", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    outputs.push_back(ss.str());
  }
  std::filesystem::remove_all(dir);
  bool same = !outputs[0].empty();
  for (const auto& o : outputs) same = same && o == outputs[0];
  return {same, fmt("4 runs (workers 1, 8, 1, 8), %.0f bytes each", outputs[0].size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"vacuum calibration", vacuum_calibration},
      {"Lyapunov-spectral equivalence", lyapunov_spectral},
      {"mechanical thermal calibration", mechanical_calibration},
      {"physicality suite", physicality},
      {"TMSV oracle", tmsv},
      {"capacity formulas", capacity_formulas},
      {"fig7 structure", fig7_structure},
      {"fig2 shape", fig2_shape},
      {"stability masking", stability_masking},
      {"determinism", determinism},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
