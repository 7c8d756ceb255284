#include "gramian/hyperbolicity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace gramian {

namespace {

constexpr double kImagTolScale = 1e-8;
constexpr double kGapTolScale = 1e-7;

// p_high - coeff * p_low, keeping the leading coefficient of p_high.
MonicPolynomial combine(const MonicPolynomial& p_high, double coeff, const MonicPolynomial& p_low) {
  std::vector<double> out = p_high.coeffs();
  for (int k = 0; k <= p_low.degree(); ++k) out[static_cast<std::size_t>(k)] -= coeff * p_low[k];
  return MonicPolynomial(std::move(out));
}

// c^{n+1} - (1, c, ..., c^{n-1}) G_{n-1}^{-1} u_{n+1,2n}; the c^n coefficient
// is zero by construction.
MonicPolynomial p_tilde(const MomentVector& u, int n) {
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 2, 0.0);
  coeffs[static_cast<std::size_t>(n) + 1] = 1.0;
  GramMatrix g = build_gram(u, n - 1);
  Eigen::VectorXd x = g.solve(u.slice(n + 1, 2 * n));
  for (int k = 0; k < n; ++k) coeffs[static_cast<std::size_t>(k)] = -x[k];
  return MonicPolynomial(std::move(coeffs));
}

}  // namespace

bool RootSet::all_real(double tol_scale) const {
  const double tol = tol_scale * spread();
  for (double im : imag_residuals)
    if (im > tol) return false;
  return true;
}

double RootSet::spread() const {
  if (roots.empty()) return 1.0;
  return roots.back() - roots.front() + 1.0;
}

const char* status_name(HyperbolicityStatus s) {
  switch (s) {
    case HyperbolicityStatus::strict: return "strict";
    case HyperbolicityStatus::real_with_multiplicity: return "real_with_multiplicity";
    case HyperbolicityStatus::nonreal_roots: return "nonreal_roots";
  }
  return "unknown";
}

CharPoly char_poly_analytic(const MomentVector& u, const ClosureSpec& spec) {
  const int M = u.max_order();
  switch (spec.kind) {
    case ClosureKind::gramian_even: {
      const int n = M / 2;
      MonicPolynomial pn = orthogonal_poly(u, n);
      MomentVector ext = u.appended(close_gramian_even(u).u_next);
      MonicPolynomial pn1 = orthogonal_poly(ext, n + 1);
      return CharPoly{pn * pn1, std::make_pair(pn, pn1)};
    }
    case ClosureKind::extended_even: {
      const int n = M / 2;
      ClosureResult closed = close_extended_even(u, spec.chi);
      MonicPolynomial pn = orthogonal_poly(u, n);
      MonicPolynomial pnm1 = orthogonal_poly(u, n - 1);
      MomentVector ext = u.appended(closed.u_next);
      MonicPolynomial pn1 = orthogonal_poly(ext, n + 1);
      SigmaValues s_n = sigma_values(u, n);
      SigmaValues s_nm1 = sigma_values(u, n - 1);
      MonicPolynomial factor = combine(pn1, *closed.chi_used * (*s_n.sigma_nn / *s_nm1.sigma_nn), pnm1);
      return CharPoly{pn * factor, std::make_pair(pn, factor)};
    }
    case ClosureKind::gramian_odd: {
      const int n = (M + 1) / 2;
      MonicPolynomial pn = orthogonal_poly(u, n);
      return CharPoly{pn * pn, std::make_pair(pn, pn)};
    }
    case ClosureKind::extended_odd: {
      const int n = (M + 1) / 2;
      ClosureResult closed = close_extended_odd(u, spec.chi);
      MomentVector ext = u.appended(closed.u_next);
      MonicPolynomial pnm1 = orthogonal_poly(u, n - 1);
      MonicPolynomial pn = orthogonal_poly(u, n);
      SigmaValues s = sigma_values(u, n - 1);
      MonicPolynomial factor =
          combine(p_tilde(ext, n), 2.0 * *closed.chi_used * (*s.sigma_n_np1 / *s.sigma_nn), pn);
      return CharPoly{pnm1 * factor, std::make_pair(pnm1, factor)};
    }
    default:
      throw MomentError("analytic characteristic polynomial only exists for Gramian closures");
  }
}

CharPoly char_poly_fd(const MomentVector& u, const ClosureSpec& spec, double step_scale) {
  const int M = u.max_order();
  std::vector<double> coeffs(static_cast<std::size_t>(M) + 2, 0.0);
  coeffs[static_cast<std::size_t>(M) + 1] = 1.0;
  for (int j = 0; j <= M; ++j) {
    const double h = step_scale * std::max(1.0, std::abs(u[j]));
    std::vector<double> up = u.values();
    std::vector<double> dn = u.values();
    up[static_cast<std::size_t>(j)] += h;
    dn[static_cast<std::size_t>(j)] -= h;
    const double cp = close(MomentVector(std::move(up)), spec).u_next;
    const double cm = close(MomentVector(std::move(dn)), spec).u_next;
    coeffs[static_cast<std::size_t>(j)] = -(cp - cm) / (2.0 * h);
  }
  return CharPoly{MonicPolynomial(std::move(coeffs)), std::nullopt};
}

RootSet poly_roots(const MonicPolynomial& p) {
  const int d = p.degree();
  if (d < 1) throw MomentError("poly_roots needs degree >= 1");
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[i];

  // Eigen's EigenSolver applies no balancing, and the raw companion matrix can
  // defeat the QR iteration outright (NoConvergence) or lose accuracy on
  // multiple roots. Balance with power-of-two diagonal similarity transforms
  // (Parlett-Reinsch) first; eigenvalues are unchanged.
  for (bool again = true; again;) {
    again = false;
    for (int i = 0; i < d; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        r += std::abs(companion(i, j));
        c += std::abs(companion(j, i));
      }
      if (r == 0.0 || c == 0.0) continue;
      double f = 1.0;
      const double s = r + c;
      while (c < r / 2.0) {
        f *= 2.0;
        c *= 4.0;
      }
      while (c >= r * 2.0) {
        f /= 2.0;
        c /= 4.0;
      }
      if (f != 1.0 && (c + r) / f < 0.95 * s) {
        again = true;
        companion.row(i) /= f;
        companion.col(i) *= f;
      }
    }
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
  if (es.info() != Eigen::Success) throw MomentError("companion eigenvalue iteration failed");

  RootSet rs;
  rs.roots.resize(static_cast<std::size_t>(d));
  rs.imag_residuals.resize(static_cast<std::size_t>(d));
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return es.eigenvalues()[a].real() < es.eigenvalues()[b].real();
  });
  for (int i = 0; i < d; ++i) {
    rs.roots[static_cast<std::size_t>(i)] = es.eigenvalues()[idx[static_cast<std::size_t>(i)]].real();
    rs.imag_residuals[static_cast<std::size_t>(i)] =
        std::abs(es.eigenvalues()[idx[static_cast<std::size_t>(i)]].imag());
  }
  rs.multiplicity_tol = kGapTolScale * rs.spread();
  return rs;
}

std::pair<std::vector<double>, std::vector<double>> recursion_coeffs(const MomentVector& u, int n_max) {
  std::vector<double> alpha;
  std::vector<double> beta;
  double prev_norm = 0.0;
  for (int k = 0; k < n_max; ++k) {
    MonicPolynomial pk = orthogonal_poly(u, k);
    // <p_k, p_k>_f = sigma_{k,k}; <c p_k, p_k>_f from the coefficient expansion
    const double norm = poly_moment(pk, u, k);
    double shifted = 0.0;
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) shifted += pk[i] * pk[j] * u[i + j + 1];
    alpha.push_back(shifted / norm);
    beta.push_back(k == 0 ? 0.0 : norm / prev_norm);
    prev_norm = norm;
  }
  return {alpha, beta};
}

bool check_interlacing(const RootSet& a, const RootSet& b) {
  if (b.roots.size() != a.roots.size() + 1)
    throw SizeMismatch("interlacing check needs |b| = |a| + 1");
  const double tol = kGapTolScale * (std::max(a.spread(), b.spread()));
  for (std::size_t i = 0; i < a.roots.size(); ++i) {
    if (!(b.roots[i] < a.roots[i] - tol)) return false;
    if (!(a.roots[i] < b.roots[i + 1] - tol)) return false;
  }
  return true;
}

HyperbolicityVerdict verdict(const MomentVector& u, const ClosureSpec& spec) {
  CharPoly cp = char_poly_analytic(u, spec);
  RootSet rs = poly_roots(cp.poly);

  HyperbolicityVerdict v;
  if (!rs.all_real(kImagTolScale)) {
    v.status = HyperbolicityStatus::nonreal_roots;
    return v;
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rs.roots.size(); ++i)
    min_gap = std::min(min_gap, rs.roots[i] - rs.roots[i - 1]);
  v.min_gap = min_gap;
  v.status = min_gap > rs.multiplicity_tol ? HyperbolicityStatus::strict
                                           : HyperbolicityStatus::real_with_multiplicity;
  if (cp.factors) {
    const auto& [fa, fb] = *cp.factors;
    if (fb.degree() == fa.degree() + 1) {
      RootSet ra = poly_roots(fa);
      RootSet rb = poly_roots(fb);
      if (ra.all_real() && rb.all_real()) v.interlaced = check_interlacing(ra, rb);
    }
  }
  return v;
}

InvarianceResiduals invariance_residuals(const MomentVector& u, const ClosureSpec& spec) {
  const int M = u.max_order();
  CharPoly cp = char_poly_analytic(u, spec);
  MomentVector ext = u.appended(close(u, spec).u_next);

  InvarianceResiduals r;
  for (int k = 0; k <= M + 1; ++k) {
    const double pk = cp.poly[k];
    r.r1 += pk * ext[k];
    if (k >= 1) {
      r.r2 += k * pk * ext[k - 1];
      r.r3 += k * pk * ext[k];
    }
  }
  return r;
}

}  // namespace gramian
