#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gramian/errors.hpp"

namespace gramian {

// Raw moments u_0..u_M of an implicit 1D distribution, u_k = \int c^k f dc.
class MomentVector {
 public:
  MomentVector() = default;
  explicit MomentVector(std::vector<double> values) : values_(std::move(values)) {}

  int max_order() const { return static_cast<int>(values_.size()) - 1; }
  double operator[](int k) const { return values_.at(static_cast<std::size_t>(k)); }
  const std::vector<double>& values() const { return values_; }

  // Inclusive slice u_{k..l} as a dense vector.
  Eigen::VectorXd slice(int k, int l) const;

  // Extends by one moment (used to append a closed u_{M+1}).
  MomentVector appended(double u_next) const;

 private:
  std::vector<double> values_;
};

// Hankel matrix of moments, entry (i,j) = u_{i+j}, 0 <= i,j <= n.
class GramMatrix {
 public:
  GramMatrix(const MomentVector& u, int n);

  int order() const { return order_; }
  const Eigen::MatrixXd& entries() const { return entries_; }

  // Solves G x = b with a Cholesky factorization; throws NotPositiveDefinite
  // when the factorization fails.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

  // 2-norm condition number (exact at these sizes).
  double condition_number() const;

 private:
  int order_;
  Eigen::MatrixXd entries_;
};

// Real polynomial with leading coefficient fixed to 1, coefficients stored
// ascending in power.
class MonicPolynomial {
 public:
  explicit MonicPolynomial(std::vector<double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

  double eval(double z) const;
  MonicPolynomial operator*(const MonicPolynomial& other) const;

 private:
  std::vector<double> coeffs_;
};

// sigma_{n,m} = \int p_n(c) c^m f dc for the index pairs used by the closures.
// Components whose defining moments are unavailable stay unset.
struct SigmaValues {
  std::optional<double> sigma_nn;       // sigma_{n,n}, needs u_{2n}
  std::optional<double> sigma_n_np1;    // sigma_{n,n+1}, needs u_{2n+1}
  std::optional<double> sigma_nm1_np1;  // sigma_{n-1,n+1}, needs u_{2n}
};

GramMatrix build_gram(const MomentVector& u, int n);

// Monic orthogonal polynomial p_n of the moment inner product,
// p_n(c) = c^n - (1,c,...,c^{n-1}) G_{n-1}^{-1} u_{n,2n-1}.
MonicPolynomial orthogonal_poly(const MomentVector& u, int n);

SigmaValues sigma_values(const MomentVector& u, int n);

// \int p(c) c^m f dc = sum_k coeffs[k] u_{k+m}.
double poly_moment(const MonicPolynomial& p, const MomentVector& u, int m);

}  // namespace gramian
