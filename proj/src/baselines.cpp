#include "gramian/baselines.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace gramian {

namespace {

double double_factorial(int n) {
  // (-1)!! = 1 by convention
  double acc = 1.0;
  for (int k = n; k >= 2; k -= 2) acc *= k;
  return acc;
}

double binomial(int n, int k) {
  double acc = 1.0;
  for (int j = 0; j < k; ++j) acc = acc * (n - j) / (j + 1);
  return acc;
}

double factorial(int n) {
  double acc = 1.0;
  for (int k = 2; k <= n; ++k) acc *= k;
  return acc;
}

// The pointwise stationarity map of the regularized entropy is
// psi(f) = log(f + eps) + f / (f + eps), monotone increasing on f > -eps.

// Inverse of psi restricted to f >= 0; returns 0 when eta <= psi(0) = log eps.
double psi_inverse(double eta, double eps) {
  if (eta <= std::log(eps)) return 0.0;
  // Solve x + 1 - eps e^{-x} = eta for x = log(f + eps); h is increasing.
  double x = eta - 1.0;
  for (int it = 0; it < 60; ++it) {
    const double e = eps * std::exp(-x);
    const double h = x + 1.0 - e - eta;
    const double dh = 1.0 + e;
    const double step = h / dh;
    x -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  return std::max(0.0, std::exp(x) - eps);
}

// d f / d eta where f = psi^{-1}(eta); zero on the clamped set.
double psi_inverse_deriv(double f, double eps) {
  if (f <= 0.0) return 0.0;
  const double fe = f + eps;
  return fe * fe / (f + 2.0 * eps);
}

// Coefficients (in powers of c) of the Chebyshev polynomials T_k(t(c)) with
// t(c) mapping [lo,hi] to [-1,1]. Used as a well-conditioned constraint basis.
std::vector<std::vector<double>> chebyshev_in_c(int M, double lo, double hi) {
  const double a = 2.0 / (hi - lo);
  const double b = -(hi + lo) / (hi - lo);
  std::vector<std::vector<double>> T(M + 1);
  T[0] = {1.0};
  if (M >= 1) T[1] = {b, a};
  for (int k = 2; k <= M; ++k) {
    std::vector<double> next(k + 1, 0.0);
    for (std::size_t j = 0; j < T[k - 1].size(); ++j) {
      next[j] += 2.0 * b * T[k - 1][j];
      next[j + 1] += 2.0 * a * T[k - 1][j];
    }
    for (std::size_t j = 0; j < T[k - 2].size(); ++j) next[j] -= T[k - 2][j];
    T[k] = std::move(next);
  }
  return T;
}

}  // namespace

double hermite_monomial_moment(int k, int j) {
  if (j > k || (k - j) % 2 != 0) return 0.0;
  return binomial(k, j) * factorial(j) * double_factorial(k - j - 1);
}

GradExpansion grad_expand(const MomentVector& u) {
  const int M = u.max_order();
  if (M < 2) throw OrderTooHigh("grad closure needs M >= 2");
  if (u[0] <= 0.0) throw MomentError("grad closure requires u_0 > 0");
  const double rho = u[0];
  const double mean = u[1] / u[0];
  const double theta = u[2] / u[0] - mean * mean;
  if (theta <= 0.0) throw NegativeTemperature("central second moment is not positive");

  GradExpansion e;
  e.frame = GaugeParams{rho, -mean, theta};
  MomentVector scaled = transform_moments(u, e.frame);

  // u~_k = sum_{j<=k} h_{k,j} alpha_j is lower triangular with h_{k,k} = k!.
  e.alpha.resize(static_cast<std::size_t>(M) + 1);
  for (int k = 0; k <= M; ++k) {
    double acc = scaled[k];
    for (int j = 0; j < k; ++j) acc -= hermite_monomial_moment(k, j) * e.alpha[static_cast<std::size_t>(j)];
    e.alpha[static_cast<std::size_t>(k)] = acc / factorial(k);
  }
  return e;
}

ClosureResult grad_close(const MomentVector& u) {
  const int M = u.max_order();
  GradExpansion e = grad_expand(u);

  double scaled_next = 0.0;
  for (int j = 0; j <= M; ++j)
    scaled_next += hermite_monomial_moment(M + 1, j) * e.alpha[static_cast<std::size_t>(j)];

  MomentVector scaled = transform_moments(u, e.frame).appended(scaled_next);
  MomentVector back = transform_moments(scaled, inverse_gauge(e.frame));

  ClosureResult r;
  r.u_next = back[M + 1];
  return r;
}

std::pair<ClosureResult, MaxEntSolution> maxent_close(const MomentVector& u, const Grid& grid,
                                                      double epsilon) {
  const int M = u.max_order();
  const int N = grid.points;
  if (u[0] <= 0.0) throw Infeasible("maxent requires u_0 > 0");

  const double dc = grid.spacing();
  std::vector<double> w(static_cast<std::size_t>(N), dc);
  w.front() *= 0.5;
  w.back() *= 0.5;

  const auto cheb = chebyshev_in_c(M, grid.lo, grid.hi);
  // Constraint targets in the Chebyshev basis.
  Eigen::VectorXd target(M + 1);
  for (int k = 0; k <= M; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cheb[k].size(); ++j) acc += cheb[k][j] * u[static_cast<int>(j)];
    target[k] = acc;
  }

  // Basis values on the grid via the Chebyshev recurrence.
  Eigen::MatrixXd B(M + 1, N);
  for (int i = 0; i < N; ++i) {
    const double t = (2.0 * grid.node(i) - (grid.lo + grid.hi)) / (grid.hi - grid.lo);
    B(0, i) = 1.0;
    if (M >= 1) B(1, i) = t;
    for (int k = 2; k <= M; ++k) B(k, i) = 2.0 * t * B(k - 1, i) - B(k - 2, i);
  }

  // Deterministic Gaussian initialization from the first three moments.
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(M + 1);
  {
    const double rho = u[0];
    const double mean = u[1] / u[0];
    double theta = u[2] / u[0] - mean * mean;
    if (!(theta > 0.0)) theta = 1.0;
    // eta(c) ~ log f_gauss(c) + 1, a quadratic in c, re-expanded in T_0..T_2.
    const double q2 = -0.5 / theta;
    const double q1 = mean / theta;
    const double q0 = std::log(rho / std::sqrt(2.0 * M_PI * theta)) - 0.5 * mean * mean / theta + 1.0;
    const double half = 0.5 * (grid.hi - grid.lo);
    const double mid = 0.5 * (grid.hi + grid.lo);
    // c = half * t + mid
    const double a2 = q2 * half * half;
    const double a1 = 2.0 * q2 * half * mid + q1 * half;
    const double a0 = q2 * mid * mid + q1 * mid + q0;
    lambda[0] = a0 + 0.5 * a2;
    if (M >= 1) lambda[1] = a1;
    if (M >= 2) lambda[2] = 0.5 * a2;
  }

  MaxEntSolution sol;
  sol.grid = grid;
  sol.f_values.assign(static_cast<std::size_t>(N), 0.0);

  const int max_iterations = 500;
  auto evaluate_f = [&](const Eigen::VectorXd& lam, std::vector<double>& f) {
    for (int i = 0; i < N; ++i) f[static_cast<std::size_t>(i)] = psi_inverse(lam.dot(B.col(i)), epsilon);
  };
  auto monomial_residual = [&](const std::vector<double>& f) {
    double worst = 0.0;
    for (int k = 0; k <= M; ++k) {
      double mk = 0.0;
      for (int i = 0; i < N; ++i) mk += std::pow(grid.node(i), k) * f[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
      worst = std::max(worst, std::abs(mk - u[k]) / std::max(1.0, std::abs(u[k])));
    }
    return worst;
  };

  std::vector<double> f(static_cast<std::size_t>(N), 0.0);
  evaluate_f(lambda, f);

  auto cheb_residual = [&](const std::vector<double>& fv) {
    Eigen::VectorXd g(M + 1);
    for (int k = 0; k <= M; ++k) {
      double acc = 0.0;
      for (int i = 0; i < N; ++i) acc += B(k, i) * fv[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
      g[k] = acc - target[k];
    }
    return g;
  };

  Eigen::VectorXd g = cheb_residual(f);
  bool converged = false;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    if (monomial_residual(f) <= 1e-8) {
      converged = true;
      break;
    }
    // Newton system on the dual variables.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(M + 1, M + 1);
    for (int i = 0; i < N; ++i) {
      const double d = psi_inverse_deriv(f[static_cast<std::size_t>(i)], epsilon) * w[static_cast<std::size_t>(i)];
      if (d == 0.0) continue;
      J.noalias() += d * B.col(i) * B.col(i).transpose();
    }
    // Ridge keeps the system solvable when large parts of the grid clamp.
    J.diagonal().array() += 1e-14 * std::max(1.0, J.diagonal().maxCoeff());
    Eigen::VectorXd step = J.ldlt().solve(-g);

    double alpha = 1.0;
    const double g0 = g.norm();
    std::vector<double> f_trial(f.size());
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Eigen::VectorXd lam_trial = lambda + alpha * step;
      evaluate_f(lam_trial, f_trial);
      Eigen::VectorXd g_trial = cheb_residual(f_trial);
      if (g_trial.norm() < g0 * (1.0 - 1e-4 * alpha) || g_trial.norm() < 1e-15) {
        lambda = lam_trial;
        f = f_trial;
        g = g_trial;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // stalled; report not-converged below
  }

  sol.f_values = f;
  sol.converged = converged;
  sol.iterations = iter;
  sol.constraint_residuals.resize(static_cast<std::size_t>(M) + 1);
  for (int k = 0; k <= M; ++k) {
    double mk = 0.0;
    for (int i = 0; i < N; ++i) mk += std::pow(grid.node(i), k) * f[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    sol.constraint_residuals[static_cast<std::size_t>(k)] = mk - u[k];
  }
  sol.entropy = 0.0;
  for (int i = 0; i < N; ++i)
    sol.entropy -= f[static_cast<std::size_t>(i)] * std::log(f[static_cast<std::size_t>(i)] + epsilon) * w[static_cast<std::size_t>(i)];

  ClosureResult r;
  double next = 0.0;
  for (int i = 0; i < N; ++i)
    next += std::pow(grid.node(i), M + 1) * f[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
  r.u_next = converged ? next : std::numeric_limits<double>::quiet_NaN();
  return {r, sol};
}

}  // namespace gramian
