#include "omcv/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "omcv/error.hpp"

namespace omcv {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980227802, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b;
  bool mapped;  // integrates f(W/t) W/t^2 over t in [a, b]
  CMat6 value;
  Mat6 error;
  double priority;
};

class Integrator {
 public:
  Integrator(const MatrixIntegrand& f, double tail_start)
      : f_(f), tail_start_(tail_start) {}

  Panel evaluate(double a, double b, bool mapped) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto g = [&](double x) -> CMat6 {
      ++evaluations;
      if (!mapped) return f_(x);
      const double w = tail_start_ / x;
      return f_(w) * (w / x);
    };
    const CMat6 fc = g(centre);
    CMat6 kron = kWgk[10] * fc;
    CMat6 gauss = CMat6::Zero();
    for (int j = 0; j < 10; ++j) {
      const double dx = half * kXgk[j];
      const CMat6 f1 = g(centre - dx);
      const CMat6 f2 = g(centre + dx);
      kron += kWgk[j] * (f1 + f2);
      if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    Panel p{a, b, mapped, kron * half, Mat6::Zero(), 0.0};
    p.error = ((kron - gauss) * half).cwiseAbs();
    return p;
  }

  int evaluations = 0;

 private:
  const MatrixIntegrand& f_;
  double tail_start_;
};

Mat6 tolerance(const CMat6& total, const QuadratureOptions& o) {
  Mat6 tol;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      tol(i, j) = std::max(o.abs_tol, o.rel_tol * std::sqrt(std::abs(total(i, i)) *
                                                            std::abs(total(j, j))));
  return tol;
}

double worst(const Mat6& err, const Mat6& tol) { return (err.array() / tol.array()).maxCoeff(); }

}  // namespace

QuadratureResult integrate_half_line(const MatrixIntegrand& f, std::span<const double> breaks,
                                     const QuadratureOptions& opts) {
  if (breaks.size() < 2) throw Error("integrate_half_line: need at least two breakpoints");
  const double tail_start = breaks.back();
  Integrator integ(f, tail_start);

  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] > breaks[i]) panels.push_back(integ.evaluate(breaks[i], breaks[i + 1], false));
  panels.push_back(integ.evaluate(0.0, 1.0, true));

  auto totals = [&](CMat6& value, Mat6& error) {
    value.setZero();
    error.setZero();
    for (const auto& p : panels) {
      value += p.value;
      error += p.error;
    }
  };

  CMat6 value;
  Mat6 error;
  totals(value, error);
  Mat6 tol = tolerance(value, opts);

  // Max-heap on normalised panel error; ties broken by position so the
  // refinement order never depends on anything but the data.
  auto cmp = [&](std::size_t x, std::size_t y) {
    if (panels[x].priority != panels[y].priority) return panels[x].priority < panels[y].priority;
    return x > y;
  };
  std::vector<std::size_t> heap;
  auto rebuild = [&] {
    heap.clear();
    for (std::size_t i = 0; i < panels.size(); ++i) {
      panels[i].priority = worst(panels[i].error, tol);
      heap.push_back(i);
    }
    std::make_heap(heap.begin(), heap.end(), cmp);
  };
  auto push = [&](std::size_t i) {
    heap.push_back(i);
    std::push_heap(heap.begin(), heap.end(), cmp);
  };
  rebuild();

  QuadratureResult res;
  int since_rebuild = 0;
  while (true) {
    if ((error.array() <= tol.array()).all()) {
      // Confirm against freshly summed totals before accepting.
      totals(value, error);
      tol = tolerance(value, opts);
      if ((error.array() <= tol.array()).all()) {
        res.converged = true;
        break;
      }
      rebuild();
      since_rebuild = 0;
    }
    if (static_cast<int>(panels.size()) >= opts.max_panels) break;

    std::pop_heap(heap.begin(), heap.end(), cmp);
    const std::size_t idx = heap.back();
    heap.pop_back();
    const Panel parent = panels[idx];
    const double mid = 0.5 * (parent.a + parent.b);
    if (!(mid > parent.a && mid < parent.b)) break;  // panel at roundoff width

    Panel left = integ.evaluate(parent.a, mid, parent.mapped);
    Panel right = integ.evaluate(mid, parent.b, parent.mapped);
    value += left.value + right.value - parent.value;
    error += left.error + right.error - parent.error;
    left.priority = worst(left.error, tol);
    right.priority = worst(right.error, tol);
    panels[idx] = left;
    panels.push_back(right);
    push(idx);
    push(panels.size() - 1);

    if (++since_rebuild == 64) {
      totals(value, error);
      tol = tolerance(value, opts);
      rebuild();
      since_rebuild = 0;
    }
  }

  // Final sum in position order; independent of refinement history.
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
    if (x.mapped != y.mapped) return !x.mapped;
    return x.a < y.a;
  });
  totals(value, error);
  res.value = value;
  res.error = error;
  res.panels = static_cast<int>(panels.size());
  res.evaluations = integ.evaluations;
  return res;
}

}  // namespace omcv
