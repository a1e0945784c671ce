#include "thermowit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

namespace thermowit {

namespace {

// Kronrod abscissae (descending) and weights; odd indices are Gauss nodes.
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
  double a, b, value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kron += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kron *= half;
  gauss *= half;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts, std::span<const double> breaks) {
  if (!(b > a)) throw QuadratureError("integration interval must satisfy a < b");
  std::vector<double> nodes{a};
  for (double x : breaks)
    if (x > a && x < b) nodes.push_back(x);
  nodes.push_back(b);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  const double length = b - a;
  std::vector<Panel> pending;
  for (size_t i = 0; i + 1 < nodes.size(); ++i) pending.push_back(gk15(f, nodes[i], nodes[i + 1]));

  QuadratureResult result;
  std::vector<Panel> accepted;
  int panels = static_cast<int>(pending.size());
  while (!pending.empty()) {
    std::vector<Panel> next;
    for (const auto& p : pending) {
      const double allowed = opts.abs_tol * (p.b - p.a) / length;
      if (p.error <= allowed || !std::isfinite(p.value)) {
        accepted.push_back(p);
        continue;
      }
      const double mid = 0.5 * (p.a + p.b);
      if (panels + 1 > opts.max_panels || mid <= p.a || mid >= p.b) {
        std::ostringstream msg;
        msg << "quadrature did not reach abs_tol=" << opts.abs_tol << " within "
            << opts.max_panels << " panels on [" << a << ", " << b << "]";
        throw QuadratureError(msg.str());
      }
      next.push_back(gk15(f, p.a, mid));
      next.push_back(gk15(f, mid, p.b));
      ++panels;
    }
    pending = std::move(next);
  }
  // Panels summed left to right.
  std::sort(accepted.begin(), accepted.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : accepted) {
    if (!std::isfinite(p.value)) throw QuadratureError("integrand is not finite");
    result.value += p.value;
    result.error += p.error;
  }
  result.panels = static_cast<int>(accepted.size());
  return result;
}

}  // namespace thermowit
