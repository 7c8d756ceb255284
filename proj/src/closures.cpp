#include "gramian/closures.hpp"

#include <cmath>
#include <sstream>

#include "gramian/baselines.hpp"

namespace gramian {

namespace {

void require_parity(const MomentVector& u, bool even, const char* what) {
  const int M = u.max_order();
  if ((M % 2 == 0) != even) {
    std::ostringstream msg;
    msg << what << " requires " << (even ? "even" : "odd") << " M, got M=" << M;
    throw WrongParity(msg.str());
  }
}

double checked_sigma_denominator(double sigma, double scale_moment) {
  if (std::abs(sigma) <= 1e-13 * std::max(1.0, std::abs(scale_moment)))
    throw ZeroDenominator("sigma_{n-1,n-1} vanishes: moment vector on the realizability boundary");
  return sigma;
}

}  // namespace

double default_chi(ClosureKind kind, int M) {
  if (kind == ClosureKind::extended_even) {
    const int n = M / 2;
    return static_cast<double>(n + 1) / n;
  }
  if (kind == ClosureKind::extended_odd) {
    const int n = (M + 1) / 2;
    return static_cast<double>(n + 1) / (2 * n);
  }
  throw MomentError("chi is only defined for extended closures");
}

std::string closure_name(ClosureKind kind) {
  switch (kind) {
    case ClosureKind::gramian_even: return "gramian-even";
    case ClosureKind::extended_even: return "extended-even";
    case ClosureKind::gramian_odd: return "gramian-odd";
    case ClosureKind::extended_odd: return "extended-odd";
    case ClosureKind::grad: return "grad";
    case ClosureKind::maxent: return "maxent";
  }
  throw MomentError("unknown closure kind");
}

ClosureKind closure_from_name(const std::string& name) {
  if (name == "gramian-even") return ClosureKind::gramian_even;
  if (name == "extended-even") return ClosureKind::extended_even;
  if (name == "gramian-odd") return ClosureKind::gramian_odd;
  if (name == "extended-odd") return ClosureKind::extended_odd;
  if (name == "grad") return ClosureKind::grad;
  if (name == "maxent") return ClosureKind::maxent;
  throw MomentError("unknown closure name: " + name);
}

ClosureResult close_gramian_even(const MomentVector& u) {
  require_parity(u, true, "gramian-even");
  const int M = u.max_order();
  if (M < 2) throw OrderTooHigh("gramian-even needs M >= 2");
  const int n = M / 2;
  GramMatrix g = build_gram(u, n - 1);
  ClosureResult r;
  r.u_next = u.slice(n + 1, 2 * n).dot(g.solve(u.slice(n, 2 * n - 1)));
  r.condition_numbers.push_back(g.condition_number());
  return r;
}

ClosureResult close_extended_even(const MomentVector& u, std::optional<double> chi) {
  require_parity(u, true, "extended-even");
  const int M = u.max_order();
  if (M < 4) throw OrderTooHigh("extended-even needs M >= 4 (G_{n-2} must exist)");
  const int n = M / 2;
  const double chi_val = chi.value_or(default_chi(ClosureKind::extended_even, M));

  GramMatrix g1 = build_gram(u, n - 1);
  GramMatrix g2 = build_gram(u, n - 2);
  const double simple = u.slice(n + 1, 2 * n).dot(g1.solve(u.slice(n, 2 * n - 1)));

  SigmaValues s_n = sigma_values(u, n);
  SigmaValues s_nm1 = sigma_values(u, n - 1);
  const double denom = checked_sigma_denominator(*s_nm1.sigma_nn, u[2 * n - 2]);

  ClosureResult r;
  r.u_next = simple + chi_val * (*s_n.sigma_nn / denom) * (*s_nm1.sigma_n_np1);
  r.chi_used = chi_val;
  r.condition_numbers = {g1.condition_number(), g2.condition_number()};
  return r;
}

ClosureResult close_gramian_odd(const MomentVector& u) {
  require_parity(u, false, "gramian-odd");
  const int M = u.max_order();
  const int n = (M + 1) / 2;
  GramMatrix g = build_gram(u, n - 1);
  Eigen::VectorXd b = u.slice(n, 2 * n - 1);
  ClosureResult r;
  r.u_next = b.dot(g.solve(b));
  r.condition_numbers.push_back(g.condition_number());
  return r;
}

ClosureResult close_extended_odd(const MomentVector& u, std::optional<double> chi) {
  require_parity(u, false, "extended-odd");
  const int M = u.max_order();
  if (M < 3) throw OrderTooHigh("extended-odd needs M >= 3");
  const int n = (M + 1) / 2;
  const double chi_val = chi.value_or(default_chi(ClosureKind::extended_odd, M));

  GramMatrix g = build_gram(u, n - 2);
  const double first = u.slice(n + 1, 2 * n - 1).dot(g.solve(u.slice(n - 1, 2 * n - 3)));

  SigmaValues s = sigma_values(u, n - 1);
  const double denom = checked_sigma_denominator(*s.sigma_nn, u[2 * n - 2]);

  ClosureResult r;
  r.u_next = first + chi_val * (*s.sigma_n_np1) * (*s.sigma_n_np1) / denom;
  r.chi_used = chi_val;
  r.condition_numbers.push_back(g.condition_number());
  return r;
}

ClosureResult close(const MomentVector& u, const ClosureSpec& spec) {
  switch (spec.kind) {
    case ClosureKind::gramian_even: return close_gramian_even(u);
    case ClosureKind::extended_even: return close_extended_even(u, spec.chi);
    case ClosureKind::gramian_odd: return close_gramian_odd(u);
    case ClosureKind::extended_odd: return close_extended_odd(u, spec.chi);
    case ClosureKind::grad: return grad_close(u);
    case ClosureKind::maxent: {
      auto [result, solution] = maxent_close(u, Grid{-8.0, 8.0, 1001});
      return result;
    }
  }
  throw MomentError("unknown closure kind");
}

}  // namespace gramian
