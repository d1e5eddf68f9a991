// omcv: command-line front end for the optomechanical entanglement and
// dense-coding pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "omcv/config.hpp"
#include "omcv/densecoding.hpp"
#include "omcv/error.hpp"
#include "omcv/figures.hpp"
#include "omcv/gaussian.hpp"
#include "omcv/serialize.hpp"
#include "omcv/sweep.hpp"
#include "omcv/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Common {
  std::string config;
  std::string out = ".";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "Parameter file (key = value, SI units)");
  cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
}

omcv::PhysicalParams load(const Common& c) {
  return c.config.empty() ? omcv::PhysicalParams{} : omcv::load_config(c.config);
}

void write_text(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream os(dir / name, std::ios::binary);
  if (!os) throw omcv::Error("cannot write " + (dir / name).string());
  os << text;
}

void emit_json(const Common& c, const std::string& name, const json& j) {
  const std::string text = j.dump(2) + "\n";
  write_text(c.out, name, text);
  std::cout << text;
}

json model_json(const omcv::PhysicalParams& p, omcv::LinearModel& model) {
  const auto derived = omcv::resolve(p);
  model = omcv::build(derived);
  return json{{"params", omcv::to_json(p)}, {"derived", omcv::to_json(derived)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary output entanglement and dense-coding rates of a "
               "membrane-in-the-middle optomechanical cavity"};
  app.set_version_flag("--version", std::string(omcv::kVersion));
  app.require_subcommand(1);

  Common common;
  int workers = 0;

  auto* derive_cmd = app.add_subcommand("derive", "Derived couplings and steady state");
  add_common(derive_cmd, common);

  auto* stability_cmd = app.add_subcommand("stability", "Hurwitz test of the drift matrix");
  add_common(stability_cmd, common);

  auto* cm_cmd = app.add_subcommand("cm", "Stationary output covariance matrix");
  add_common(cm_cmd, common);

  auto* entangle_cmd = app.add_subcommand("entangle", "Two-mode block, E_N and Duan sum");
  add_common(entangle_cmd, common);

  auto* rate_cmd = app.add_subcommand("rate", "Dense-coding rate versus photon number");
  add_common(rate_cmd, common);
  double nbar_lo = 0.0, nbar_hi = 10.0;
  int nbar_points = 101;
  rate_cmd->add_option("--nbar-min", nbar_lo)->capture_default_str();
  rate_cmd->add_option("--nbar-max", nbar_hi)->capture_default_str();
  rate_cmd->add_option("--points", nbar_points)->capture_default_str();

  auto* sweep_cmd = app.add_subcommand("sweep", "1D/2D parameter sweep with stability masking");
  add_common(sweep_cmd, common);
  std::string axis1, axis2, observable = "log_negativity";
  sweep_cmd->add_option("--axis1", axis1, "path:lo:hi:points, e.g. filter_omega_l/omega_m:0.5:1.5:60")
      ->required();
  sweep_cmd->add_option("--axis2", axis2, "Optional second axis");
  sweep_cmd->add_option("--observable", observable,
                        "log_negativity | rate:<nbar> | duan_sum | stability_margin")
      ->capture_default_str();
  sweep_cmd->add_option("--workers", workers, "Worker threads (default: OPTOMECH_CV_WORKERS or cores)");

  auto* figure_cmd = app.add_subcommand("figure", "Reproduce a figure preset as CSV + manifest");
  add_common(figure_cmd, common);
  std::string figure_id;
  figure_cmd->add_option("preset", figure_id, "Preset id")
      ->required()
      ->check(CLI::IsMember(omcv::figure_ids()));
  figure_cmd->add_option("--workers", workers, "Worker threads (default: OPTOMECH_CV_WORKERS or cores)");

  auto* preset_cmd = app.add_subcommand("preset", "Print the base config of a figure preset");
  std::string preset_id;
  preset_cmd->add_option("preset", preset_id)->required()->check(CLI::IsMember(omcv::figure_ids()));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*derive_cmd) {
      const auto p = load(common);
      if (p.detuning.kind == omcv::DetuningMode::Kind::bare) {
        const auto fp = omcv::fixed_point(p);
        emit_json(common, "derive.json",
                  json{{"params", omcv::to_json(p)},
                       {"derived", omcv::to_json(fp.derived)},
                       {"roots", fp.roots},
                       {"stable_roots", fp.stable_roots},
                       {"warnings", fp.warnings}});
      } else {
        emit_json(common, "derive.json",
                  json{{"params", omcv::to_json(p)}, {"derived", omcv::to_json(omcv::derive(p))}});
      }
    } else if (*stability_cmd) {
      omcv::LinearModel model;
      json j = model_json(load(common), model);
      j["stability"] = omcv::to_json(omcv::stability(model));
      j["drift"] = omcv::to_json(model.drift);
      emit_json(common, "stability.json", j);
    } else if (*cm_cmd) {
      const auto p = load(common);
      omcv::LinearModel model;
      json j = model_json(p, model);
      j["output_cm"] = omcv::to_json(omcv::output_cm(model, omcv::filters_from(p)));
      j["intracavity_cm"] = omcv::to_json(omcv::lyapunov_cm(model));
      j["conventions"] = omcv::conventions_json();
      emit_json(common, "cm.json", j);
    } else if (*entangle_cmd) {
      const auto p = load(common);
      omcv::LinearModel model;
      json j = model_json(p, model);
      const auto block = omcv::reduce_two_mode(omcv::output_cm(model, omcv::filters_from(p)));
      j["block"] = omcv::to_json(block);
      j["symplectic"] = omcv::to_json(omcv::pt_symplectic(block));
      j["log_negativity"] = omcv::log_negativity(block);
      j["duan_sum"] = omcv::duan_sum(block);
      emit_json(common, "entangle.json", j);
    } else if (*rate_cmd) {
      const auto p = load(common);
      omcv::LinearModel model;
      model_json(p, model);
      const auto block = omcv::reduce_two_mode(omcv::output_cm(model, omcv::filters_from(p)));
      const auto curve = omcv::rate_curve(block, nbar_lo, nbar_hi, nbar_points);
      const std::string csv = omcv::rate_curve_csv(curve);
      write_text(common.out, "rate.csv", csv);
      std::cout << csv;
    } else if (*sweep_cmd) {
      omcv::SweepSpec spec;
      spec.axis1 = omcv::parse_axis(axis1);
      if (!axis2.empty()) spec.axis2 = omcv::parse_axis(axis2);
      spec.observable = omcv::parse_observable(observable);
      const auto p = load(common);
      const auto result = omcv::run_sweep(spec, p, {workers, {}});
      write_text(common.out, "sweep.csv", omcv::to_csv(result));
      json manifest{{"params", omcv::to_json(p)},
                    {"axis1", axis1},
                    {"axis2", axis2},
                    {"observable", observable},
                    {"conventions", omcv::conventions_json()},
                    {"library_version", omcv::kVersion}};
      write_text(common.out, "sweep_manifest.json", manifest.dump(2) + "\n");
      std::cout << "wrote " << (fs::path(common.out) / "sweep.csv").string() << " ("
                << result.points.size() << " points)\n";
    } else if (*figure_cmd) {
      omcv::FigureOptions opts;
      opts.workers = workers;
      if (!common.config.empty())
        opts.base = omcv::load_config(common.config, omcv::preset_params(figure_id));
      const auto fig = omcv::figure(figure_id, opts);
      omcv::write_figure(fig, common.out);
      for (const auto& f : fig.files) std::cout << (fs::path(common.out) / f.name).string() << '\n';
      std::cout << (fs::path(common.out) / (fig.id + "_manifest.json")).string() << '\n';
    } else if (*preset_cmd) {
      std::cout << omcv::preset_config_text(preset_id);
    }
  } catch (const omcv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const omcv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
