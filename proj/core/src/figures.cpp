#include "omcv/figures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "omcv/config.hpp"
#include "omcv/error.hpp"
#include "omcv/gaussian.hpp"
#include "omcv/serialize.hpp"
#include "omcv/version.hpp"

namespace omcv {

using nlohmann::json;

namespace {

constexpr double kFig7Tau = 3e-6;
constexpr double kRateNbar = 10.0;  // photon budget of the rate maps
constexpr double kOrderingNbar = 5.0;

json assumed_common() {
  return json{
      {"wavelength_r", "not stated; default 1064 nm"},
      {"wavelength_l", "not stated; default 1064 nm"},
      {"filter_tau_r", "not stated; preset choice"},
      {"filter_tau_l", "not stated; preset choice"},
      {"grid", "sweep ranges and point counts are preset choices"},
  };
}

json curve_entry(const std::string& file, const std::string& label, const PhysicalParams& p) {
  return json{{"file", file}, {"label", label}, {"params", to_json(p)}};
}

std::string tag(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

json sweep_json(const SweepResult& r) {
  json axes = json::array();
  for (const Axis* a : {&r.spec.axis1, r.spec.axis2 ? &*r.spec.axis2 : nullptr}) {
    if (!a) continue;
    axes.push_back({{"path", a->path}, {"lo", a->lo}, {"hi", a->hi}, {"points", a->points}});
  }
  int masked = 0;
  for (const auto& p : r.points)
    if (!p.value) ++masked;
  return json{{"axes", axes},
              {"observable", observable_name(r.spec.observable)},
              {"nbar", r.spec.observable.nbar},
              {"points", r.points.size()},
              {"masked_points", masked}};
}

const SweepPoint* best_point(const SweepResult& r) {
  const SweepPoint* best = nullptr;
  for (const auto& p : r.points)
    if (p.value && (!best || *p.value > *best->value)) best = &p;
  return best;
}

struct Runner {
  const FigureOptions& opts;
  FigureOutput& out;
  PhysicalParams base;

  SweepResult sweep(const std::string& file, const std::string& label, const PhysicalParams& p,
                    Axis a1, std::optional<Axis> a2, Observable obs) {
    SweepSpec spec{std::move(a1), std::move(a2), obs, out.id};
    SweepOptions so{opts.workers, opts.spectral};
    SweepResult r = run_sweep(spec, p, so);
    out.files.push_back({file, to_csv(r)});
    json entry = curve_entry(file, label, p);
    entry["sweep"] = sweep_json(r);
    if (const SweepPoint* b = best_point(r)) {
      entry["argmax"] = spec.axis2 ? json{b->x1, b->x2} : json(b->x1);
      entry["max"] = *b->value;
    }
    out.manifest["curves"].push_back(entry);
    return r;
  }

  TwoModeBlock block_of(const PhysicalParams& p) {
    const LinearModel model = build(resolve(p));
    if (!stability(model).stable)
      throw DomainError("figure " + out.id + ": preset operating point is unstable");
    return reduce_two_mode(output_cm(model, filters_from(p), opts.spectral));
  }

  std::vector<RatePoint> rates(const std::string& file, const std::string& label,
                               const PhysicalParams& p) {
    const TwoModeBlock b = block_of(p);
    auto curve = rate_curve(b, 0.0, 10.0, 201);
    out.files.push_back({file, rate_curve_csv(curve)});
    json entry = curve_entry(file, label, p);
    entry["block"] = to_json(b);
    entry["log_negativity"] = log_negativity(b);
    entry["min_photon_number"] = min_photon_number(b);
    out.manifest["curves"].push_back(entry);
    return curve;
  }
};

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig2", "fig3a", "fig3b", "fig4a",
                                               "fig4b", "fig5", "fig6", "fig7"};
  return ids;
}

PhysicalParams preset_params(std::string_view id) {
  const auto& ids = figure_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw ConfigError("unknown figure preset '" + std::string(id) + "'");
  PhysicalParams p;  // defaults are the shared operating point, Q = 1.5e5
  if (id == "fig7") p.filter_tau_l = p.filter_tau_r = kFig7Tau;
  return p;
}

std::string preset_config_text(std::string_view id) {
  return "# " + std::string(id) + " base parameters (SI units)\n" +
         to_config_text(preset_params(id));
}

std::vector<RatePoint> rate_curve(const TwoModeBlock& block, double lo, double hi, int points) {
  if (points < 2 || !(lo < hi) || lo < 0.0)
    throw ConfigError("rate_curve: need 0 <= lo < hi and at least 2 points");
  std::vector<RatePoint> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) out.push_back(rate_point(block, lo + (hi - lo) * i / (points - 1)));
  return out;
}

std::string rate_curve_csv(const std::vector<RatePoint>& curve) {
  std::string s = csv_header(RatePoint{}) + "\r\n";
  for (const auto& p : curve) s += csv_row(p) + "\r\n";
  return s;
}

RateCurveSummary summarise(const std::vector<RatePoint>& curve, const TwoModeBlock& block) {
  RateCurveSummary s;
  s.max_excess_over_capacity = -INFINITY;
  for (const auto& p : curve) {
    if (!p.i_om) continue;
    s.max_excess_over_capacity = std::max(s.max_excess_over_capacity, *p.i_om - p.ref.i_d_opt);
    if (*p.i_om > p.ref.i_f) {
      if (!s.fock_window_lo) s.fock_window_lo = p.nbar;
      s.fock_window_hi = p.nbar;
    }
  }
  if (kOrderingNbar >= min_photon_number(block)) {
    const RatePoint at5 = rate_point(block, kOrderingNbar);
    s.ordering_at_5 = *at5.i_om > at5.ref.i_s && at5.ref.i_s > at5.ref.i_c_het;
  }
  return s;
}

FigureOutput figure(std::string_view id, const FigureOptions& opts) {
  FigureOutput out;
  out.id = std::string(id);
  const PhysicalParams base = opts.base ? *opts.base : preset_params(id);
  validate(base);

  out.manifest = json{{"figure", out.id},
                      {"library_version", kVersion},
                      {"conventions", conventions_json()},
                      {"base_params", to_json(base)},
                      {"assumed", assumed_common()},
                      {"curves", json::array()}};
  Runner run{opts, out, base};
  auto& assumed = out.manifest["assumed"];

  const Axis omega_l{"filter_omega_l/omega_m", 0.5, 1.5, 60};
  const Axis kappa_l{"kappa_l/omega_m", 0.05, 1.0, 21};
  const Axis kappa_r{"kappa_r/omega_m", 0.05, 1.0, 21};
  const Axis power_l{"power_l", 1e-3, 100e-3, 21};
  const Axis power_r{"power_r", 1e-3, 50e-3, 21};
  const Observable en{ObservableKind::log_negativity, 0.0};
  const Observable rate{ObservableKind::dense_coding_rate, kRateNbar};

  if (id == "fig2") {
    for (double q : {1e4, 1.5e5}) {
      PhysicalParams p = base;
      p.quality = q;
      run.sweep("fig2_q" + tag(q) + ".csv", "Q = " + tag(q), p, omega_l, std::nullopt, en);
    }
  } else if (id == "fig3a") {
    assumed["quality"] = "not stated for this figure; 1.5e5";
    run.sweep("fig3a.csv", "E_N vs kappa_l, kappa_r", base, kappa_l, kappa_r, en);
  } else if (id == "fig3b") {
    assumed["quality"] = "not stated for this figure; 1.5e5";
    run.sweep("fig3b.csv", "E_N vs P_l, P_r", base, power_l, power_r, en);
  } else if (id == "fig4a") {
    assumed["filter_tau_values"] = "two unlabeled bandwidths; 0.5 us and 2 us";
    for (double tau : {0.5e-6, 2e-6}) {
      PhysicalParams p = base;
      p.filter_tau_l = p.filter_tau_r = tau;
      run.rates("fig4a_tau" + tag(tau) + ".csv", "tau = " + tag(tau) + " s", p);
    }
  } else if (id == "fig4b") {
    assumed["quality_values"] = "only 1e4 and 1.5e5 are named; 5e4 chosen for the middle curve";
    assumed["nbar"] = "photon budget not stated; 10";
    const Axis temperature{"temperature", 0.1, 10.0, 34};
    for (double q : {1e4, 5e4, 1.5e5}) {
      PhysicalParams p = base;
      p.quality = q;
      run.sweep("fig4b_q" + tag(q) + ".csv", "Q = " + tag(q), p, temperature, std::nullopt, rate);
    }
  } else if (id == "fig5") {
    assumed["nbar"] = "photon budget not stated; 10";
    run.sweep("fig5.csv", "I_OM vs kappa_l, kappa_r", base, kappa_l, kappa_r, rate);
  } else if (id == "fig6") {
    assumed["nbar"] = "photon budget not stated; 10";
    run.sweep("fig6.csv", "I_OM vs P_l, P_r", base, power_l, power_r, rate);
  } else if (id == "fig7") {
    assumed["filter_tau_r"] = "tuned to 3 us so the Fock-capacity crossing is reachable";
    assumed["filter_tau_l"] = "tuned to 3 us so the Fock-capacity crossing is reachable";
    const TwoModeBlock block = run.block_of(base);
    const auto curve = run.rates("fig7.csv", "I_OM and reference capacities", base);
    const RateCurveSummary s = summarise(curve, block);
    json checks{{"max_excess_over_capacity", s.max_excess_over_capacity},
                {"ordering_at_nbar_5", s.ordering_at_5}};
    if (s.fock_window_lo) {
      checks["fock_window"] = {*s.fock_window_lo, *s.fock_window_hi};
    } else {
      double shortfall = INFINITY;
      for (const auto& p : curve)
        if (p.i_om) shortfall = std::min(shortfall, p.ref.i_f - *p.i_om);
      checks["fock_window"] = nullptr;
      checks["fock_shortfall_bits"] = shortfall;
    }
    out.manifest["checks"] = checks;
  } else {
    throw ConfigError("unknown figure preset '" + out.id + "'");
  }
  return out;
}

void write_figure(const FigureOutput& fig, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : fig.files) {
    std::ofstream os(dir / f.name, std::ios::binary);
    if (!os) throw Error("cannot write " + (dir / f.name).string());
    os << f.contents;
  }
  std::ofstream os(dir / (fig.id + "_manifest.json"), std::ios::binary);
  if (!os) throw Error("cannot write manifest in " + dir.string());
  os << fig.manifest.dump(2) << '\n';
}

}  // namespace omcv
