#include "gramian/moments.hpp"

#include <cmath>
#include <sstream>

namespace gramian {

Eigen::VectorXd MomentVector::slice(int k, int l) const {
  if (k < 0 || l > max_order() || k > l) {
    std::ostringstream msg;
    msg << "moment slice [" << k << "," << l << "] out of range, M=" << max_order();
    throw AbsentMoment(msg.str());
  }
  Eigen::VectorXd out(l - k + 1);
  for (int i = k; i <= l; ++i) out[i - k] = values_[static_cast<std::size_t>(i)];
  return out;
}

MomentVector MomentVector::appended(double u_next) const {
  std::vector<double> v = values_;
  v.push_back(u_next);
  return MomentVector(std::move(v));
}

GramMatrix::GramMatrix(const MomentVector& u, int n) : order_(n) {
  if (2 * n > u.max_order()) {
    std::ostringstream msg;
    msg << "Gram matrix of order " << n << " needs u_" << 2 * n << " but M=" << u.max_order();
    throw OrderTooHigh(msg.str());
  }
  entries_.resize(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) entries_(i, j) = u[i + j];
}

Eigen::VectorXd GramMatrix::solve(const Eigen::VectorXd& b) const {
  Eigen::LLT<Eigen::MatrixXd> llt(entries_);
  if (llt.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Cholesky factorization of G_" << order_ << " failed";
    throw NotPositiveDefinite(msg.str());
  }
  return llt.solve(b);
}

double GramMatrix::condition_number() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(entries_, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double lo = ev.minCoeff();
  double hi = ev.maxCoeff();
  if (lo <= 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

MonicPolynomial::MonicPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.back() != 1.0)
    throw MomentError("monic polynomial requires leading coefficient 1");
}

double MonicPolynomial::eval(double z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

MonicPolynomial MonicPolynomial::operator*(const MonicPolynomial& other) const {
  std::vector<double> out(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
      out[i + j] += coeffs_[i] * other.coeffs_[j];
  out.back() = 1.0;  // guard against rounding in the leading term
  return MonicPolynomial(std::move(out));
}

GramMatrix build_gram(const MomentVector& u, int n) { return GramMatrix(u, n); }

MonicPolynomial orthogonal_poly(const MomentVector& u, int n) {
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
  coeffs[static_cast<std::size_t>(n)] = 1.0;
  if (n > 0) {
    GramMatrix g = build_gram(u, n - 1);
    Eigen::VectorXd x = g.solve(u.slice(n, 2 * n - 1));
    for (int k = 0; k < n; ++k) coeffs[static_cast<std::size_t>(k)] = -x[k];
  }
  return MonicPolynomial(std::move(coeffs));
}

SigmaValues sigma_values(const MomentVector& u, int n) {
  SigmaValues s;
  const int M = u.max_order();
  if (n == 0) {
    s.sigma_nn = u[0];
    if (M >= 1) s.sigma_n_np1 = u[1];
    return s;
  }
  GramMatrix g = build_gram(u, n - 1);
  Eigen::VectorXd x = g.solve(u.slice(n, 2 * n - 1));  // G_{n-1}^{-1} u_{n,2n-1}
  if (M >= 2 * n) s.sigma_nn = u[2 * n] - u.slice(n, 2 * n - 1).dot(x);
  if (M >= 2 * n + 1) s.sigma_n_np1 = u[2 * n + 1] - u.slice(n + 1, 2 * n).dot(x);
  if (M >= 2 * n && n >= 1) {
    if (n == 1) {
      s.sigma_nm1_np1 = u[2];  // p_0 = 1
    } else {
      GramMatrix g2 = build_gram(u, n - 2);
      Eigen::VectorXd y = g2.solve(u.slice(n - 1, 2 * n - 3));
      s.sigma_nm1_np1 = u[2 * n] - u.slice(n + 1, 2 * n - 1).dot(y);
    }
  }
  return s;
}

double poly_moment(const MonicPolynomial& p, const MomentVector& u, int m) {
  if (p.degree() + m > u.max_order()) {
    std::ostringstream msg;
    msg << "poly_moment needs u_" << p.degree() + m << " but M=" << u.max_order();
    throw AbsentMoment(msg.str());
  }
  double acc = 0.0;
  for (int k = 0; k <= p.degree(); ++k) acc += p[k] * u[k + m];
  return acc;
}

}  // namespace gramian
