#include "gaugestrata/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace gaugestrata::quadrature {

namespace {

// Kronrod abscissae on [-1, 1]; odd indices are the embedded Gauss points.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel rule(const std::function<double(double)>& f, double a, double b)
{
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * sum;
    }
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol, int max_evaluations)
{
  const std::array<double, 2> ends = {a, b};
  return gauss_kronrod(f, ends, rel_tol, abs_tol, max_evaluations);
}

Result gauss_kronrod(const std::function<double(double)>& f, std::span<const double> breakpoints,
                     double rel_tol, double abs_tol, int max_evaluations)
{
  constexpr int kPerPanel = 15;
  Result out;
  std::priority_queue<Panel> panels;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const Panel p = rule(f, breakpoints[i], breakpoints[i + 1]);
    out.evaluations += kPerPanel;
    panels.push(p);
    value += p.value;
    error += p.error;
  }

  while (true) {
    if (error <= std::max(abs_tol, rel_tol * std::abs(value))) {
      out.converged = true;
      break;
    }
    if (out.evaluations + 2 * kPerPanel > max_evaluations) {
      break;
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // panel no longer splittable in double precision
      break;
    }
    const Panel left = rule(f, worst.a, mid);
    const Panel right = rule(f, mid, worst.b);
    out.evaluations += 2 * kPerPanel;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // re-sum to shed drift from the incremental updates
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  out.value = value;
  out.error = error;
  if (!out.converged) {
    out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
  }
  return out;
}

}  // namespace gaugestrata::quadrature
