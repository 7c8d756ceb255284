#include "gramian/gauge.hpp"

#include <cmath>
#include <vector>

namespace gramian {

GaugeParams inverse_gauge(const GaugeParams& g) {
  // (c~ + v') / sqrt(theta') = c requires theta' = 1/theta, v' = -v/sqrt(theta).
  return GaugeParams{1.0 / g.rho, -g.v / std::sqrt(g.theta), 1.0 / g.theta};
}

MomentVector transform_moments(const MomentVector& u, const GaugeParams& g) {
  const int M = u.max_order();
  std::vector<double> out(static_cast<std::size_t>(M) + 1);
  const double sqrt_theta = std::sqrt(g.theta);
  for (int k = 0; k <= M; ++k) {
    double acc = 0.0;
    double binom = 1.0;
    double vpow = 1.0;
    for (int j = 0; j <= k; ++j) {
      acc += binom * vpow * u[k - j];
      binom = binom * static_cast<double>(k - j) / static_cast<double>(j + 1);
      vpow *= g.v;
    }
    out[static_cast<std::size_t>(k)] = acc / (g.rho * std::pow(sqrt_theta, k));
  }
  return MomentVector(std::move(out));
}

MomentVector equilibrium_moments(const GaugeParams& g, int M) {
  std::vector<double> u(static_cast<std::size_t>(M) + 1);
  u[0] = g.rho;
  if (M >= 1) u[1] = g.rho * g.v;
  for (int k = 2; k <= M; ++k)
    u[static_cast<std::size_t>(k)] =
        g.v * u[static_cast<std::size_t>(k - 1)] + (k - 1) * g.theta * u[static_cast<std::size_t>(k - 2)];
  return MomentVector(std::move(u));
}

}  // namespace gramian
