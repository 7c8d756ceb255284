#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gramian/distributions.hpp"
#include "gramian/gauge.hpp"
#include "gramian/moments.hpp"

namespace testutil {

// Moments of a random 3-component Gaussian mixture: realizable by
// construction, computed through the exact per-component recursion.
inline gramian::MomentVector random_realizable_moments(std::mt19937& rng, int M) {
  std::uniform_real_distribution<double> rho_dist(0.2, 1.0);
  std::uniform_real_distribution<double> v_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> theta_dist(0.3, 2.0);
  std::vector<double> u(static_cast<std::size_t>(M) + 1, 0.0);
  for (int c = 0; c < 3; ++c) {
    gramian::GaugeParams g{rho_dist(rng), v_dist(rng), theta_dist(rng)};
    gramian::MomentVector m = gramian::equilibrium_moments(g, M);
    for (int k = 0; k <= M; ++k) u[static_cast<std::size_t>(k)] += m[k];
  }
  return gramian::MomentVector(std::move(u));
}

inline gramian::GaugeParams random_gauge(std::mt19937& rng) {
  std::uniform_real_distribution<double> rho_dist(0.1, 10.0);
  std::uniform_real_distribution<double> v_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> theta_dist(0.1, 10.0);
  return {rho_dist(rng), v_dist(rng), theta_dist(rng)};
}

// Composite-Simpson quadrature oracle on [lo, hi], independent of the
// library's moment machinery.
template <typename F>
double simpson(F&& f, double lo, double hi, int intervals = 20000) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (hi - lo) / intervals;
  double acc = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) acc += f(lo + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
  return acc * h / 3.0;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testutil
