// Compares the OpenMP sweep kernel against the serial reference on the
// bimodal benchmark and checks that both produce identical rows.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "gramian/experiments.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rows_identical(const std::vector<gramian::ResultRow>& a,
                    const std::vector<gramian::ResultRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool pred_same = (std::isnan(a[i].u_pred) && std::isnan(b[i].u_pred)) ||
                           a[i].u_pred == b[i].u_pred;
    if (!pred_same || a[i].verdict != b[i].verdict || a[i].u_truth != b[i].u_truth) return false;
  }
  return true;
}

}  // namespace

int main() {
  gramian::SweepConfig cfg;
  cfg.family = gramian::BimodalParams{};
  cfg.sweep_parameter = "v2";
  cfg.from = 0.5;
  cfg.to = 4.0;
  cfg.step = 0.05;
  cfg.orders = {4, 6};
  cfg.closures = {
      {gramian::ClosureKind::gramian_even, std::nullopt},
      {gramian::ClosureKind::extended_even, std::nullopt},
      {gramian::ClosureKind::grad, std::nullopt},
      {gramian::ClosureKind::maxent, std::nullopt},
  };
  cfg.maxent_grid = gramian::Grid{-4.0, 6.0, 1000};

  auto t0 = Clock::now();
  auto serial = gramian::run_sweep_serial(cfg);
  const double t_serial = seconds_since(t0);

  t0 = Clock::now();
  auto parallel = gramian::run_sweep(cfg, true);
  const double t_parallel = seconds_since(t0);

  std::printf("rows:     %zu\n", serial.size());
  std::printf("serial:   %.3f s\n", t_serial);
  std::printf("parallel: %.3f s\n", t_parallel);
  std::printf("speedup:  %.2fx\n", t_serial / t_parallel);

  if (!rows_identical(serial, parallel)) {
    std::printf("MISMATCH between serial and parallel rows\n");
    return 1;
  }
  std::printf("serial and parallel rows identical\n");
  return 0;
}
