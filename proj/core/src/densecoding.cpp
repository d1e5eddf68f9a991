#include "omcv/densecoding.hpp"

#include <cmath>
#include <sstream>

#include "omcv/error.hpp"
#include "omcv/serialize.hpp"

namespace omcv {

double bob_variance(const TwoModeBlock& b, double v_s) {
  return 0.5 * (b.big_l + b.big_r - 2.0 * b.c + v_s);
}

double conditional_variance(double v_s, double v_b) {
  if (!(v_s > 0.0)) throw DomainError("conditional_variance: signal variance must be positive");
  if (2.0 * v_b < v_s) {
    std::ostringstream os;
    os << "conditional_variance: 2 v_b = " << 2.0 * v_b << " < v_s = " << v_s;
    throw DomainError(os.str());
  }
  return v_s - v_s * v_s / (2.0 * v_b);
}

double min_photon_number(const TwoModeBlock& b) { return b.big_l - 0.5; }

double signal_variance(const TwoModeBlock& b, double nbar) { return nbar + 1.0 - b.big_l; }

double rate_om(const TwoModeBlock& b, double nbar) {
  const double floor = min_photon_number(b);
  if (nbar < floor) {
    std::ostringstream os;
    os << "rate_om: nbar = " << nbar << " is below the minimum usable photon number "
       << floor << " (output mode already carries L - 1/2 photons)";
    throw DomainError(os.str());
  }
  const double noise = b.big_l + b.big_r - 2.0 * b.c;
  if (!(noise > 0.0)) throw DomainError("rate_om: L + R - 2c must be positive for a physical state");
  return std::log2(1.0 + signal_variance(b, nbar) / noise);
}

Capacities capacities(double nbar) {
  if (!(nbar >= 0.0)) throw DomainError("capacities: nbar must be non-negative");
  Capacities c;
  c.i_d_opt = std::log2(1.0 + nbar + nbar * nbar);
  c.i_f = nbar == 0.0 ? 0.0 : (1.0 + nbar) * std::log2(1.0 + nbar) - nbar * std::log2(nbar);
  c.i_s = std::log2(1.0 + 2.0 * nbar);
  c.i_c_het = std::log2(1.0 + nbar);
  c.i_c = std::log2(std::sqrt(1.0 + 4.0 * nbar));
  return c;
}

RatePoint rate_point(const TwoModeBlock& b, double nbar) {
  RatePoint p;
  p.nbar = nbar;
  p.v_s = signal_variance(b, nbar);
  if (nbar >= min_photon_number(b)) p.i_om = rate_om(b, nbar);
  p.ref = capacities(nbar);
  p.big_l = b.big_l;
  p.big_r = b.big_r;
  p.c = b.c;
  return p;
}

std::string csv_header(const RatePoint&) {
  return "nbar,i_om,i_d_opt,i_f,i_s,i_c_het,i_c,v_s,big_l,big_r,c";
}

std::string csv_row(const RatePoint& p) {
  std::string s = format_double(p.nbar);
  s += ',';
  if (p.i_om) s += format_double(*p.i_om);
  for (double v : {p.ref.i_d_opt, p.ref.i_f, p.ref.i_s, p.ref.i_c_het, p.ref.i_c, p.v_s, p.big_l,
                   p.big_r, p.c}) {
    s += ',';
    s += format_double(v);
  }
  return s;
}

}  // namespace omcv
