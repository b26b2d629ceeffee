#pragma once
//
// Operator norm from the canonical p = 2 norm on the input side. The unit
// ball {|e| + ||x|| <= 1} has extreme points (0, +-1) and (x, 0) with
// ||x|| = 1, and a convex function attains its maximum over the ball at an
// extreme point. Exact for in_dim 1; a dense circle scan with golden-section
// refinement for in_dim 2. Test-only.
//

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "softnls/norms.hpp"
#include "softnls/operator.hpp"

namespace softnls::oracle {

inline double extreme_point_op_norm(const SoftLinearOperator& t, const SoftNorm& nout) {
  const std::size_t n = t.in_dim();
  auto at = [&](std::vector<double> x, double e) { return nout(op_apply(t, SoftVector(std::move(x), e))); };
  double best = at(std::vector<double>(n, 0.0), 1.0);
  if (n == 1) return std::max({best, at({1.0}, 0.0), at({-1.0}, 0.0)});
  if (n != 2) throw std::invalid_argument("extreme_point_op_norm: in_dim must be 1 or 2");

  auto ring = [&](double phi) { return at({std::cos(phi), std::sin(phi)}, 0.0); };
  constexpr int kSteps = 20000;
  const double h = 2.0 * std::numbers::pi / kSteps;
  for (int i = 0; i < kSteps; ++i) {
    const double mid = ring(i * h);
    if (ring((i - 1) * h) > mid || ring((i + 1) * h) > mid) continue;
    // Local maximum on the scan; refine on [phi - h, phi + h].
    double lo = (i - 1) * h, hi = (i + 1) * h;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 60; ++it) {
      const double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
      if (ring(a) < ring(b)) lo = a; else hi = b;
    }
    best = std::max({best, mid, ring(0.5 * (lo + hi))});
  }
  return best;
}

}  // namespace softnls::oracle
