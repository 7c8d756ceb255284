#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gramian/baselines.hpp"
#include "gramian/closures.hpp"
#include "gramian/distributions.hpp"

namespace gramian {

// |u_pred - u_truth| / |u_truth| with the truth magnitude below resolution.
struct ZeroTruth : MomentError {
  using MomentError::MomentError;
};

double rel_error(double u_pred, double u_truth);

struct SweepConfig {
  DistributionSpec family;        // parameter template; the swept field is overwritten
  std::string sweep_parameter;    // "v2" (bimodal), "phi" (electron-hole), "x" (mott-smith)
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
  std::vector<double> fixed_values;  // convergence studies evaluate these only
  std::vector<int> orders;
  std::vector<ClosureSpec> closures;
  Grid maxent_grid;
  std::string output_path;
};

struct ResultRow {
  double parameter_value = 0.0;
  int M = 0;
  std::string closure;
  std::optional<double> chi;
  double u_truth = 0.0;
  double u_pred = 0.0;
  double relative_error = 0.0;
  std::string verdict;
};

// Parses the flat key-value config format (key = value, '#' comments).
SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::string& path);

// One row per (parameter value, order, closure); parameter outer, M middle,
// closure inner. Per-row failures are captured in the verdict column.
std::vector<ResultRow> run_sweep(const SweepConfig& cfg, bool parallel = true);

// Serial reference path; produces identical rows to the parallel kernel.
std::vector<ResultRow> run_sweep_serial(const SweepConfig& cfg);

// Rows across the order list at each fixed parameter value.
std::vector<ResultRow> run_convergence(const SweepConfig& cfg, bool parallel = true);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace gramian
