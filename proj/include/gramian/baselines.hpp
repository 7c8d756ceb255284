#pragma once

#include <utility>
#include <vector>

#include "gramian/closures.hpp"
#include "gramian/gauge.hpp"
#include "gramian/moments.hpp"

namespace gramian {

// Uniform grid including both endpoints.
struct Grid {
  double lo = -8.0;
  double hi = 8.0;
  int points = 1001;

  double spacing() const { return (hi - lo) / (points - 1); }
  double node(int i) const { return lo + i * spacing(); }
};

struct MaxEntSolution {
  Grid grid;
  std::vector<double> f_values;            // nonnegative point values on the grid
  std::vector<double> constraint_residuals;  // per constrained moment order
  double entropy = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Hermite coefficients of the Grad ansatz in the scaled frame.
struct GradExpansion {
  std::vector<double> alpha;
  GaugeParams frame;  // (rho, v, theta) extracted from u_0..u_2
};

// Hermite-expansion closure: perturbation of the Maxwellian matched to the
// given moments. Exact whenever the underlying density lies in the ansatz
// space f^(eq) * (polynomial of degree <= M).
ClosureResult grad_close(const MomentVector& u);

GradExpansion grad_expand(const MomentVector& u);

// \int c^k He_j(c) phi(c) dc for the standard normal weight phi.
double hermite_monomial_moment(int k, int j);

// Discrete regularized maximum-entropy closure: maximizes
// sum_i -f_i log(f_i + eps) w_i subject to the trapezoid-quadrature moment
// constraints, then predicts u_{M+1} from the optimal grid function.
std::pair<ClosureResult, MaxEntSolution> maxent_close(const MomentVector& u, const Grid& grid,
                                                      double epsilon = 1e-8);

}  // namespace gramian
