#pragma once

#include <tuple>

#include "gramian/moments.hpp"

namespace gramian {

// Affine rescaling of the velocity variable: density scale rho, shift v,
// temperature scale theta. The transformed variable is (c + v) / sqrt(theta).
struct GaugeParams {
  double rho = 1.0;
  double v = 0.0;
  double theta = 1.0;
};

// Parameters that undo g under composition of the affine maps.
GaugeParams inverse_gauge(const GaugeParams& g);

// u~_k = (1 / (rho theta^{k/2})) sum_j C(k,j) v^j u_{k-j}.
MomentVector transform_moments(const MomentVector& u, const GaugeParams& g);

// Raw moments of rho * N(v, theta) up to order M via the Gaussian three-term
// recursion u_k = v u_{k-1} + (k-1) theta u_{k-2}.
MomentVector equilibrium_moments(const GaugeParams& g, int M);

}  // namespace gramian
