#include "omcv/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "omcv/error.hpp"
#include "omcv/serialize.hpp"

namespace omcv {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string_view strip_quotes(std::string_view s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    return s.substr(1, s.size() - 2);
  return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(std::string_view text, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(line, "expected a number, got '" + std::string(text) + "'");
  return v;
}

}  // namespace

const std::vector<std::string>& numeric_fields() {
  static const std::vector<std::string> names = {
      "mass",         "omega_m",      "quality",      "cav_half_length", "kappa_r",
      "kappa_l",      "power_r",      "power_l",      "wavelength_r",    "wavelength_l",
      "delta_r",      "delta_l",      "temperature",  "filter_tau_r",    "filter_tau_l",
      "filter_omega_r", "filter_omega_l"};
  return names;
}

double& field_ref(PhysicalParams& p, std::string_view name) {
  if (name == "mass") return p.mass;
  if (name == "omega_m") return p.omega_m;
  if (name == "quality") return p.quality;
  if (name == "cav_half_length") return p.cav_half_length;
  if (name == "kappa_r") return p.kappa_r;
  if (name == "kappa_l") return p.kappa_l;
  if (name == "power_r") return p.power_r;
  if (name == "power_l") return p.power_l;
  if (name == "wavelength_r") return p.wavelength_r;
  if (name == "wavelength_l") return p.wavelength_l;
  if (name == "delta_r") return p.detuning.r;
  if (name == "delta_l") return p.detuning.l;
  if (name == "temperature") return p.temperature;
  if (name == "filter_tau_r") return p.filter_tau_r;
  if (name == "filter_tau_l") return p.filter_tau_l;
  if (name == "filter_omega_r") return p.filter_omega_r;
  if (name == "filter_omega_l") return p.filter_omega_l;
  throw ConfigError("unknown parameter '" + std::string(name) + "'");
}

double field_value(const PhysicalParams& p, std::string_view name) {
  return field_ref(const_cast<PhysicalParams&>(p), name);
}

PhysicalParams parse_config(std::string_view text, const PhysicalParams& base) {
  PhysicalParams p = base;
  std::set<std::string, std::less<>> seen;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(lineno, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(lineno, "expected 'key = value'");
    if (!seen.insert(key).second) fail(lineno, "duplicate key '" + key + "'");

    if (key == "detuning_mode") {
      const auto mode = strip_quotes(value);
      if (mode == "effective")
        p.detuning.kind = DetuningMode::Kind::effective;
      else if (mode == "bare")
        p.detuning.kind = DetuningMode::Kind::bare;
      else
        fail(lineno, "detuning_mode must be \"effective\" or \"bare\"");
      continue;
    }
    double* slot = nullptr;
    try {
      slot = &field_ref(p, key);
    } catch (const ConfigError&) {
      fail(lineno, "unknown key '" + key + "'");
    }
    *slot = parse_number(value, lineno);
  }
  return p;
}

PhysicalParams load_config(const std::filesystem::path& path, const PhysicalParams& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str(), base);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string to_config_text(const PhysicalParams& p) {
  std::ostringstream os;
  for (const auto& name : numeric_fields()) {
    if (name == "delta_r")
      os << "detuning_mode = \""
         << (p.detuning.kind == DetuningMode::Kind::effective ? "effective" : "bare") << "\"\n";
    os << name << " = " << format_double(field_value(p, name)) << '\n';
  }
  return os.str();
}

}  // namespace omcv
