#include "gramian/distributions.hpp"

#include <cmath>
#include <functional>

namespace gramian {

namespace {

double gaussian_pdf(double c, double rho, double v, double theta) {
  const double z = c - v;
  return rho / std::sqrt(2.0 * M_PI * theta) * std::exp(-0.5 * z * z / theta);
}

// Weighted sum of per-component Gaussian moment recursions.
MomentVector mixture_moments(const BimodalParams& p, int M) {
  std::vector<double> u(static_cast<std::size_t>(M) + 1, 0.0);
  const double rho[2] = {p.rho1, p.rho2};
  const double v[2] = {p.v1, p.v2};
  const double th[2] = {p.theta1, p.theta2};
  for (int c = 0; c < 2; ++c) {
    std::vector<double> m(static_cast<std::size_t>(M) + 1);
    m[0] = rho[c];
    if (M >= 1) m[1] = rho[c] * v[c];
    for (int k = 2; k <= M; ++k)
      m[static_cast<std::size_t>(k)] = v[c] * m[static_cast<std::size_t>(k - 1)] +
                                       (k - 1) * th[c] * m[static_cast<std::size_t>(k - 2)];
    for (int k = 0; k <= M; ++k) u[static_cast<std::size_t>(k)] += m[static_cast<std::size_t>(k)];
  }
  return MomentVector(std::move(u));
}

// Gauss-Kronrod 7-15 pair on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GkResult {
  double integral;
  double abs_integral;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kron = 0.0, gauss = 0.0, abs_sum = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double off = half * kKronrodNodes[i];
    const double f1 = f(mid - off);
    const double f2 = f(mid + off);
    const double pair = (i == 7) ? f1 : f1 + f2;
    kron += kKronrodWeights[i] * pair;
    abs_sum += kKronrodWeights[i] * ((i == 7) ? std::abs(f1) : std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {kron * half, abs_sum * half, std::abs(kron - gauss) * half};
}

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double rel_tol) {
  struct Interval {
    double a, b;
    GkResult r;
  };
  std::vector<Interval> stack{{a, b, gk15(f, a, b)}};
  double total = stack[0].r.integral;
  double total_abs = stack[0].r.abs_integral;
  double total_err = stack[0].r.error;
  int splits = 0;
  while (total_err > rel_tol * std::max(total_abs, 1e-300)) {
    if (++splits > 20000) throw QuadratureFailure("adaptive quadrature did not reach tolerance");
    // split the worst interval
    std::size_t worst = 0;
    for (std::size_t i = 1; i < stack.size(); ++i)
      if (stack[i].r.error > stack[worst].r.error) worst = i;
    Interval iv = stack[worst];
    const double mid = 0.5 * (iv.a + iv.b);
    Interval left{iv.a, mid, gk15(f, iv.a, mid)};
    Interval right{mid, iv.b, gk15(f, mid, iv.b)};
    total += left.r.integral + right.r.integral - iv.r.integral;
    total_abs += left.r.abs_integral + right.r.abs_integral - iv.r.abs_integral;
    total_err += left.r.error + right.r.error - iv.r.error;
    stack[worst] = left;
    stack.push_back(right);
  }
  return total;
}

}  // namespace

double pdf(const DistributionSpec& spec, double c) {
  return std::visit(
      [c](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BimodalParams>) {
          return gaussian_pdf(c, p.rho1, p.v1, p.theta1) + gaussian_pdf(c, p.rho2, p.v2, p.theta2);
        } else if constexpr (std::is_same_v<T, ElectronHoleParams>) {
          const double w = c * c - 2.0 * p.phi;
          double exponent;
          if (w > 0.0) {
            const double sgn = c >= 0.0 ? 1.0 : -1.0;
            const double d = sgn * std::sqrt(w) - p.v0;
            exponent = -0.5 * d * d;
          } else {
            exponent = -0.5 * (p.beta * w + p.v0 * p.v0);
          }
          return std::exp(exponent) / std::sqrt(2.0 * M_PI);
        } else {
          const BimodalParams bm = mott_smith_components(p.mach, p.gamma, p.x);
          return gaussian_pdf(c, bm.rho1, bm.v1, bm.theta1) + gaussian_pdf(c, bm.rho2, bm.v2, bm.theta2);
        }
      },
      spec);
}

BimodalParams mott_smith_components(double mach, double gamma, double x) {
  const double ma2 = mach * mach;
  const double rho_star = ma2 * (gamma + 1.0) / (2.0 + ma2 * (gamma - 1.0));
  const double v_star = mach / rho_star;
  const double theta_star = (1.0 - gamma + 2.0 * gamma * ma2) / ((1.0 + gamma) * rho_star);
  const double w = 1.0 / (1.0 + std::exp(x));
  BimodalParams p;
  p.rho1 = w;
  p.v1 = mach * std::sqrt(gamma);
  p.theta1 = 1.0;
  p.rho2 = (1.0 - w) * rho_star;
  p.v2 = v_star * std::sqrt(gamma);
  p.theta2 = theta_star;
  return p;
}

std::pair<double, double> quadrature_domain(const DistributionSpec& spec) {
  double lo = -10.0, hi = 10.0;
  if (const auto* eh = std::get_if<ElectronHoleParams>(&spec)) {
    lo -= std::abs(eh->v0) + std::sqrt(2.0 * eh->phi);
    hi += std::abs(eh->v0) + std::sqrt(2.0 * eh->phi);
  }
  while (pdf(spec, lo) > 1e-16) lo -= 1.0;
  while (pdf(spec, hi) > 1e-16) hi += 1.0;
  return {lo, hi};
}

MomentVector moments(const DistributionSpec& spec, int M) {
  if (const auto* bm = std::get_if<BimodalParams>(&spec)) return mixture_moments(*bm, M);
  if (const auto* ms = std::get_if<MottSmithParams>(&spec))
    return mixture_moments(mott_smith_components(ms->mach, ms->gamma, ms->x), M);

  const auto [lo, hi] = quadrature_domain(spec);
  std::vector<double> u(static_cast<std::size_t>(M) + 1);
  for (int k = 0; k <= M; ++k) {
    u[static_cast<std::size_t>(k)] = adaptive_quadrature(
        [&spec, k](double c) { return std::pow(c, k) * pdf(spec, c); }, lo, hi, 1e-10);
  }
  return MomentVector(std::move(u));
}

}  // namespace gramian
