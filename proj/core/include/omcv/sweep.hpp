#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "omcv/params.hpp"
#include "omcv/spectral.hpp"

namespace omcv {

enum class ObservableKind { log_negativity, dense_coding_rate, duan_sum, stability_margin };

struct Observable {
  ObservableKind kind = ObservableKind::log_negativity;
  double nbar = 0.0;  // dense_coding_rate only
};

// "log_negativity", "rate:<nbar>", "duan_sum", "stability_margin".
Observable parse_observable(const std::string& text);
std::string observable_name(const Observable& obs);

// A parameter path is a PhysicalParams field name, optionally suffixed with
// "/omega_m" to express the axis in units of the base mechanical frequency.
struct Axis {
  std::string path;
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;

  double value(int i) const;
};

// "path:lo:hi:points".
Axis parse_axis(const std::string& text);

struct SweepSpec {
  Axis axis1;
  std::optional<Axis> axis2;
  Observable observable;
  std::string preset;  // informational
};

// Throws ConfigError on bad paths or degenerate grids.
void validate(const SweepSpec& spec);

// Sets the axis value on a copy of `base`.
PhysicalParams apply_axis(const PhysicalParams& base, const Axis& axis, double value);

enum class PointStatus { ok, unstable, out_of_domain, numerical };
const char* status_name(PointStatus s);

struct SweepPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  std::optional<double> value;  // empty exactly when status != ok
  bool stable = false;
  double margin = 0.0;
  double quad_error = 0.0;
  PointStatus status = PointStatus::ok;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepPoint> points;  // axis1 outer, axis2 inner
};

struct SweepOptions {
  int workers = 0;  // 0: default_workers()
  SpectralOptions spectral;
};

// OPTOMECH_CV_WORKERS if set, else the hardware concurrency.
int default_workers();

// Evaluates derive -> build -> stability -> output_cm -> reduce -> observable
// at one parameter point. Unstable points are masked, never thrown.
SweepPoint evaluate_point(const PhysicalParams& params, const Observable& obs,
                          const SpectralOptions& spectral = {});

SweepResult run_sweep(const SweepSpec& spec, const PhysicalParams& base,
                      const SweepOptions& opts = {});

// RFC-4180 CSV, one header line, one row per grid point. Masked values are
// empty fields.
std::string to_csv(const SweepResult& result);

// Runs `fn(i)` for i in [0, n) on up to `workers` threads. Results must be
// written to per-index slots; the call returns after all tasks finish and
// rethrows the first exception by index.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace omcv
