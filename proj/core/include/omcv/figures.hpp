#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "omcv/densecoding.hpp"
#include "omcv/params.hpp"
#include "omcv/sweep.hpp"

namespace omcv {

const std::vector<std::string>& figure_ids();

// Base physical parameters of a figure preset. Every preset starts from the
// same operating point: Omega_m/2pi = 10 MHz, m = 10 ng, L = 1 mm,
// kappa_r = 0.4 Omega_m, kappa_l = 0.1 Omega_m, P_r = 10 mW, P_l = 48 mW,
// T = 1 K, Delta_l = -Delta_r = Omega_m, filters centred at +-Omega_m.
// Throws ConfigError for unknown ids.
PhysicalParams preset_params(std::string_view id);

// Config-file text of a preset (what ships under presets/).
std::string preset_config_text(std::string_view id);

// Dense-coding curve of one block over a uniform photon-number grid.
std::vector<RatePoint> rate_curve(const TwoModeBlock& block, double nbar_lo, double nbar_hi,
                                  int points);
std::string rate_curve_csv(const std::vector<RatePoint>& curve);

struct FigureFile {
  std::string name;
  std::string contents;
};

struct FigureOutput {
  std::string id;
  std::vector<FigureFile> files;  // CSVs; the manifest is written separately
  nlohmann::json manifest;
};

struct FigureOptions {
  int workers = 0;
  std::optional<PhysicalParams> base;  // overrides the preset's base parameters
  SpectralOptions spectral;
};

FigureOutput figure(std::string_view id, const FigureOptions& opts = {});

// Writes every CSV plus <id>_manifest.json into dir (created if needed).
void write_figure(const FigureOutput& fig, const std::filesystem::path& dir);

// Structure checks on a dense-coding curve used by the fig7 manifest.
struct RateCurveSummary {
  double max_excess_over_capacity = 0.0;  // max of i_om - i_d_opt
  std::optional<double> fock_window_lo;   // first nbar with i_om > i_f
  std::optional<double> fock_window_hi;   // last such nbar
  bool ordering_at_5 = false;             // i_om > i_s > i_c_het at nbar = 5
};

RateCurveSummary summarise(const std::vector<RatePoint>& curve, const TwoModeBlock& block);

}  // namespace omcv
