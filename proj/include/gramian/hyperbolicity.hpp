#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gramian/closures.hpp"
#include "gramian/moments.hpp"

namespace gramian {

// Characteristic polynomial of a closed moment system, optionally with the
// analytic two-factor form from which it was assembled.
struct CharPoly {
  MonicPolynomial poly;
  std::optional<std::pair<MonicPolynomial, MonicPolynomial>> factors;
};

struct RootSet {
  std::vector<double> roots;           // real parts, sorted ascending
  std::vector<double> imag_residuals;  // magnitudes of discarded imaginary parts
  double multiplicity_tol = 0.0;

  bool all_real(double tol_scale = 1e-8) const;
  double spread() const;  // max - min + 1
};

enum class HyperbolicityStatus { strict, real_with_multiplicity, nonreal_roots };

struct HyperbolicityVerdict {
  HyperbolicityStatus status = HyperbolicityStatus::strict;
  double min_gap = 0.0;  // smallest consecutive gap
  std::optional<bool> interlaced;
};

const char* status_name(HyperbolicityStatus s);

// Factorized characteristic polynomial of the four Gramian closures.
CharPoly char_poly_analytic(const MomentVector& u, const ClosureSpec& spec);

// Characteristic polynomial from central finite differences of the closure
// map; step h = step_scale * max(1, |u_j|) per coordinate.
CharPoly char_poly_fd(const MomentVector& u, const ClosureSpec& spec, double step_scale = 1e-6);

// All roots via companion-matrix eigenvalues.
RootSet poly_roots(const MonicPolynomial& p);

// Three-term recursion p_{k+1}(z) = (z - alpha_k) p_k(z) - beta_k p_{k-1}(z),
// with beta_k = sigma_{k,k} / sigma_{k-1,k-1} and beta_0 = 0.
std::pair<std::vector<double>, std::vector<double>> recursion_coeffs(const MomentVector& u, int n_max);

// True iff b strictly interlaces around a: b_1 < a_1 < b_2 < ... < b_{n+1}.
bool check_interlacing(const RootSet& a, const RootSet& b);

HyperbolicityVerdict verdict(const MomentVector& u, const ClosureSpec& spec);

// Gauge-invariance residuals (r1, r2, r3) of Thm 3.1 style conditions:
// integrals of P, P', and c P' against f, evaluated as linear combinations of
// the moments with u_{M+1} supplied by the closure.
struct InvarianceResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

InvarianceResiduals invariance_residuals(const MomentVector& u, const ClosureSpec& spec);

}  // namespace gramian
