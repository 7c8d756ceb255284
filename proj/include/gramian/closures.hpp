#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gramian/moments.hpp"

namespace gramian {

enum class ClosureKind {
  gramian_even,
  extended_even,
  gramian_odd,
  extended_odd,
  grad,
  maxent,
};

// Identifies a closure plus its chi parameter. chi only applies to the
// extended kinds; when unset the gauge-invariant default is resolved from M
// at call time: (n+1)/n for even, (n+1)/(2n) for odd.
struct ClosureSpec {
  ClosureKind kind = ClosureKind::extended_even;
  std::optional<double> chi;
};

struct ClosureResult {
  double u_next = 0.0;  // predicted u_{M+1}
  std::optional<double> chi_used;
  std::vector<double> condition_numbers;  // of the Gram systems solved
};

double default_chi(ClosureKind kind, int M);

std::string closure_name(ClosureKind kind);
ClosureKind closure_from_name(const std::string& name);

// u_{2n+1} = u_{n+1,2n}^T G_{n-1}^{-1} u_{n,2n-1}, n = M/2.
ClosureResult close_gramian_even(const MomentVector& u);

// Adds chi * (sigma_{n,n} / sigma_{n-1,n-1}) * sigma_{n-1,n}; chi = 0
// reproduces the simple closure exactly.
ClosureResult close_extended_even(const MomentVector& u, std::optional<double> chi = std::nullopt);

// u_{2n} = u_{n,2n-1}^T G_{n-1}^{-1} u_{n,2n-1}, n = (M+1)/2.
ClosureResult close_gramian_odd(const MomentVector& u);

// u_{2n} = u_{n+1,2n-1}^T G_{n-2}^{-1} u_{n-1,2n-3}
//          + chi * sigma_{n-1,n}^2 / sigma_{n-1,n-1}.
ClosureResult close_extended_odd(const MomentVector& u, std::optional<double> chi = std::nullopt);

// Dispatch across all kinds, including the Grad and max-entropy baselines
// (maxent uses its default grid here).
ClosureResult close(const MomentVector& u, const ClosureSpec& spec);

}  // namespace gramian
