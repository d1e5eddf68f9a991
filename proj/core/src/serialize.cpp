#include "omcv/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace omcv {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

json to_json(const PhysicalParams& p) {
  return json{
      {"mass", p.mass},
      {"omega_m", p.omega_m},
      {"quality", p.quality},
      {"cav_half_length", p.cav_half_length},
      {"kappa_r", p.kappa_r},
      {"kappa_l", p.kappa_l},
      {"power_r", p.power_r},
      {"power_l", p.power_l},
      {"wavelength_r", p.wavelength_r},
      {"wavelength_l", p.wavelength_l},
      {"detuning_mode", p.detuning.kind == DetuningMode::Kind::effective ? "effective" : "bare"},
      {"delta_r", p.detuning.r},
      {"delta_l", p.detuning.l},
      {"temperature", p.temperature},
      {"filter_tau_r", p.filter_tau_r},
      {"filter_tau_l", p.filter_tau_l},
      {"filter_omega_r", p.filter_omega_r},
      {"filter_omega_l", p.filter_omega_l},
  };
}

json to_json(const DerivedParams& d) {
  return json{{"g0_r", d.g0_r},         {"g0_l", d.g0_l},       {"eps_r", d.eps_r},
              {"eps_l", d.eps_l},       {"gamma_m", d.gamma_m}, {"nbar_mech", d.nbar_mech},
              {"alpha_mag", d.alpha_mag}, {"beta_mag", d.beta_mag}, {"geff_r", d.geff_r},
              {"geff_l", d.geff_l},     {"delta_r", d.delta_r}, {"delta_l", d.delta_l},
              {"q_s", d.q_s}};
}

json to_json(const StabilityReport& s) {
  json eig = json::array();
  for (int i = 0; i < 6; ++i) eig.push_back({s.eigenvalues(i).real(), s.eigenvalues(i).imag()});
  return json{{"stable", s.stable}, {"margin", s.margin}, {"eigenvalues", eig}};
}

json to_json(const Mat6& m) {
  json rows = json::array();
  for (int i = 0; i < 6; ++i) {
    json row = json::array();
    for (int j = 0; j < 6; ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const OutputCM& cm) {
  return json{{"matrix", to_json(cm.matrix)}, {"quad_error", to_json(cm.quad_error)}};
}

json to_json(const TwoModeBlock& b) {
  return json{{"big_l", b.big_l},         {"big_r", b.big_r},         {"c", b.c},
              {"c_prime", b.c_prime},     {"asymmetry", b.asymmetry}, {"warnings", b.warnings}};
}

json to_json(const SymplecticPair& s) {
  return json{{"nu_minus", s.nu_minus}, {"nu_plus", s.nu_plus}, {"zeta", s.zeta}};
}

json to_json(const RatePoint& r) {
  json j{{"nbar", r.nbar},          {"v_s", r.v_s},         {"i_d_opt", r.ref.i_d_opt},
         {"i_f", r.ref.i_f},        {"i_s", r.ref.i_s},     {"i_c_het", r.ref.i_c_het},
         {"i_c", r.ref.i_c},        {"big_l", r.big_l},     {"big_r", r.big_r},
         {"c", r.c}};
  j["i_om"] = r.i_om ? json(*r.i_om) : json(nullptr);
  return j;
}

json conventions_json() {
  return json{{"optical_diffusion_scale", Conventions::optical_diffusion_scale},
              {"out_coupling_sign", Conventions::out_coupling_sign},
              {"spectral_measure", Conventions::spectral_measure},
              {"fourier_kernel", "exp(+i omega t)"},
              {"vacuum_variance", 0.5},
              {"log_negativity_base", "e"}};
}

}  // namespace omcv
