#pragma once

#include <variant>

#include "gramian/moments.hpp"

namespace gramian {

// Superposition of two Maxwellians.
struct BimodalParams {
  double rho1 = 0.4, v1 = 0.0, theta1 = 1.0;
  double rho2 = 0.6, v2 = 0.5, theta2 = 1.0;
};

// Piecewise trapped/untrapped plasma distribution.
struct ElectronHoleParams {
  double phi = 0.0;   // electrostatic potential, >= 0
  double v0 = 1.5;    // frame velocity
  double beta = -0.05;  // trapped-electron measure
};

// Bimodal shock ansatz with Rankine-Hugoniot component states.
struct MottSmithParams {
  double mach = 4.0;
  double gamma = 5.0 / 3.0;
  double x = 0.0;  // position in the shock
};

using DistributionSpec = std::variant<BimodalParams, ElectronHoleParams, MottSmithParams>;

double pdf(const DistributionSpec& spec, double c);

// Component Maxwellians of the Mott-Smith distribution at position x.
BimodalParams mott_smith_components(double mach, double gamma, double x);

// Moments u_0..u_M: exact Gaussian recursion for the mixture families,
// adaptive quadrature (relative tolerance 1e-10) for electron-hole.
MomentVector moments(const DistributionSpec& spec, int M);

// Quadrature domain wide enough that the density tails are below 1e-16.
std::pair<double, double> quadrature_domain(const DistributionSpec& spec);

}  // namespace gramian
