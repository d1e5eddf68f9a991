#include "omcv/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "omcv/config.hpp"
#include "omcv/densecoding.hpp"
#include "omcv/error.hpp"
#include "omcv/gaussian.hpp"
#include "omcv/serialize.hpp"

namespace omcv {

namespace {

constexpr std::string_view kNormSuffix = "/omega_m";

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + s + "' in " + what);
  }
  if (used != s.size()) throw ConfigError("bad number '" + s + "' in " + what);
  return v;
}

std::string_view field_of(const std::string& path) {
  std::string_view p = path;
  if (p.size() > kNormSuffix.size() && p.ends_with(kNormSuffix))
    p.remove_suffix(kNormSuffix.size());
  return p;
}

bool normalised(const std::string& path) { return field_of(path).size() != path.size(); }

void check_axis(const Axis& a) {
  if (a.points < 2) throw ConfigError("sweep axis '" + a.path + "' needs at least 2 points");
  if (!(a.lo < a.hi)) throw ConfigError("sweep axis '" + a.path + "' needs lo < hi");
  const auto f = field_of(a.path);
  const auto& names = numeric_fields();
  if (std::find(names.begin(), names.end(), f) == names.end())
    throw ConfigError("sweep axis path '" + a.path + "' names no parameter");
}

}  // namespace

Observable parse_observable(const std::string& text) {
  if (text == "log_negativity") return {ObservableKind::log_negativity, 0.0};
  if (text == "duan_sum") return {ObservableKind::duan_sum, 0.0};
  if (text == "stability_margin") return {ObservableKind::stability_margin, 0.0};
  if (text.rfind("rate:", 0) == 0) {
    const double n = to_double(text.substr(5), "observable");
    if (!(n >= 0.0)) throw ConfigError("rate observable needs nbar >= 0");
    return {ObservableKind::dense_coding_rate, n};
  }
  throw ConfigError("unknown observable '" + text +
                    "' (log_negativity | rate:<nbar> | duan_sum | stability_margin)");
}

std::string observable_name(const Observable& obs) {
  switch (obs.kind) {
    case ObservableKind::log_negativity: return "log_negativity";
    case ObservableKind::dense_coding_rate: return "rate_om";
    case ObservableKind::duan_sum: return "duan_sum";
    case ObservableKind::stability_margin: return "stability_margin";
  }
  return "?";
}

double Axis::value(int i) const { return lo + (hi - lo) * i / (points - 1); }

Axis parse_axis(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw ConfigError("axis must be 'path:lo:hi:points', got '" + text + "'");
  Axis a;
  a.path = parts[0];
  a.lo = to_double(parts[1], "axis lo");
  a.hi = to_double(parts[2], "axis hi");
  const double n = to_double(parts[3], "axis points");
  if (n != std::floor(n)) throw ConfigError("axis points must be an integer");
  a.points = static_cast<int>(n);
  check_axis(a);
  return a;
}

void validate(const SweepSpec& spec) {
  check_axis(spec.axis1);
  if (spec.axis2) check_axis(*spec.axis2);
}

PhysicalParams apply_axis(const PhysicalParams& base, const Axis& axis, double value) {
  PhysicalParams p = base;
  field_ref(p, field_of(axis.path)) = normalised(axis.path) ? value * base.omega_m : value;
  return p;
}

const char* status_name(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::unstable: return "unstable";
    case PointStatus::out_of_domain: return "out_of_domain";
    case PointStatus::numerical: return "numerical";
  }
  return "?";
}

int default_workers() {
  if (const char* env = std::getenv("OPTOMECH_CV_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepPoint evaluate_point(const PhysicalParams& params, const Observable& obs,
                          const SpectralOptions& spectral) {
  SweepPoint pt;
  const LinearModel model = build(resolve(params));
  const StabilityReport st = stability(model);
  pt.stable = st.stable;
  pt.margin = st.margin;
  if (!st.stable) {
    pt.status = PointStatus::unstable;
    return pt;
  }
  if (obs.kind == ObservableKind::stability_margin) {
    pt.value = st.margin;
    return pt;
  }
  try {
    const OutputCM cm = output_cm(model, filters_from(params), spectral);
    pt.quad_error = cm.quad_error.maxCoeff();
    const TwoModeBlock block = reduce_two_mode(cm);
    switch (obs.kind) {
      case ObservableKind::log_negativity: pt.value = log_negativity(block); break;
      case ObservableKind::duan_sum: pt.value = duan_sum(block); break;
      case ObservableKind::dense_coding_rate: pt.value = rate_om(block, obs.nbar); break;
      case ObservableKind::stability_margin: break;
    }
  } catch (const DomainError&) {
    pt.status = PointStatus::out_of_domain;
    pt.value.reset();
  } catch (const NumericalError& e) {
    pt.status = PointStatus::numerical;
    pt.quad_error = e.achieved();
    pt.value.reset();
  }
  return pt;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(std::max(n, 0)));
  std::atomic<int> next{0};
  auto loop = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    loop();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

SweepResult run_sweep(const SweepSpec& spec, const PhysicalParams& base, const SweepOptions& opts) {
  validate(spec);
  validate(base);
  // Parameter domains are half-lines, so checking the axis ends is enough.
  for (const Axis* a : {&spec.axis1, spec.axis2 ? &*spec.axis2 : nullptr}) {
    if (!a) continue;
    for (double v : {a->lo, a->hi}) {
      try {
        validate(apply_axis(base, *a, v));
      } catch (const ParameterError& e) {
        throw ConfigError("sweep axis '" + a->path + "' leaves the parameter domain: " + e.what());
      }
    }
  }
  const int n1 = spec.axis1.points;
  const int n2 = spec.axis2 ? spec.axis2->points : 1;

  SweepResult res;
  res.spec = spec;
  res.points.resize(static_cast<std::size_t>(n1) * n2);
  parallel_for(n1 * n2, opts.workers > 0 ? opts.workers : default_workers(), [&](int k) {
    const int i = k / n2, j = k % n2;
    PhysicalParams p = apply_axis(base, spec.axis1, spec.axis1.value(i));
    if (spec.axis2) p = apply_axis(p, *spec.axis2, spec.axis2->value(j));
    SweepPoint pt = evaluate_point(p, spec.observable, opts.spectral);
    pt.x1 = spec.axis1.value(i);
    pt.x2 = spec.axis2 ? spec.axis2->value(j) : 0.0;
    res.points[k] = pt;
  });
  return res;
}

std::string to_csv(const SweepResult& r) {
  std::ostringstream os;
  os << csv_escape(r.spec.axis1.path);
  if (r.spec.axis2) os << ',' << csv_escape(r.spec.axis2->path);
  os << ',' << observable_name(r.spec.observable) << ",stable,status,margin,quad_error\r\n";
  for (const auto& p : r.points) {
    os << format_double(p.x1);
    if (r.spec.axis2) os << ',' << format_double(p.x2);
    os << ',';
    if (p.value) os << format_double(*p.value);
    os << ',' << (p.stable ? "true" : "false") << ',' << status_name(p.status) << ','
       << format_double(p.margin) << ',' << format_double(p.quad_error) << "\r\n";
  }
  return os.str();
}

}  // namespace omcv
