// Acceptance suite: one pass/fail line per criterion; exit code is the
// number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gramian/baselines.hpp"
#include "gramian/closures.hpp"
#include "gramian/distributions.hpp"
#include "gramian/experiments.hpp"
#include "gramian/gauge.hpp"
#include "gramian/hyperbolicity.hpp"
#include "gramian/moments.hpp"
#include "test_util.hpp"

using namespace gramian;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  std::string name;
  double time_limit_s;  // 0 = no limit
  std::function<Outcome()> run;
};

void fail(Outcome& o, const std::string& msg) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += msg;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

MomentVector truncated(const MomentVector& u, int M) {
  return MomentVector(std::vector<double>(u.values().begin(), u.values().begin() + M + 1));
}

// ---- criterion bodies -----------------------------------------------------

Outcome equilibrium_preservation() {
  Outcome o;
  std::mt19937 rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    GaugeParams g = testutil::random_gauge(rng);
    for (int M : {4, 6, 8, 10}) {
      MomentVector eq = equilibrium_moments(g, M + 1);
      const double pred = close_extended_even(truncated(eq, M)).u_next;
      worst = std::max(worst, std::abs(pred - eq[M + 1]) / std::max(1.0, std::abs(eq[M + 1])));
    }
  }
  if (worst > 1e-9) fail(o, "max relative deviation " + fmt(worst));
  o.detail = "max rel dev " + fmt(worst);
  return o;
}

Outcome gauge_equivariance() {
  Outcome o;
  std::mt19937 rng(1002);
  double worst_ext = 0.0;
  double worst_simple = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    GaugeParams g = testutil::random_gauge(rng);
    {
      MomentVector u = testutil::random_realizable_moments(rng, 4);
      const double a = transform_moments(u.appended(close_extended_even(u).u_next), g)[5];
      const double b = close_extended_even(transform_moments(u, g)).u_next;
      worst_ext = std::max(worst_ext, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    {
      MomentVector u = testutil::random_realizable_moments(rng, 5);
      const double a = transform_moments(u.appended(close_extended_odd(u).u_next), g)[6];
      const double b = close_extended_odd(transform_moments(u, g)).u_next;
      worst_ext = std::max(worst_ext, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    {
      // simple even closure under a v-shift of magnitude >= 1
      GaugeParams shift{1.0, (trial % 2 == 0) ? 1.0 + 0.01 * trial : -1.0 - 0.01 * trial, 1.0};
      MomentVector u = testutil::random_realizable_moments(rng, 4);
      const double a = transform_moments(u.appended(close_gramian_even(u).u_next), shift)[5];
      const double b = close_gramian_even(transform_moments(u, shift)).u_next;
      worst_simple = std::max(worst_simple, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
  }
  if (worst_ext > 1e-8) fail(o, "extended closures deviate by " + fmt(worst_ext));
  if (worst_simple <= 1e-2) fail(o, "simple closure unexpectedly invariant: " + fmt(worst_simple));
  o.detail += "extended dev " + fmt(worst_ext) + ", simple dev " + fmt(worst_simple);
  return o;
}

Outcome charpoly_factorization() {
  Outcome o;
  std::mt19937 rng(1003);
  const std::vector<std::pair<ClosureKind, std::vector<int>>> cases = {
      {ClosureKind::gramian_even, {4, 6}},
      {ClosureKind::extended_even, {4, 6}},
      {ClosureKind::gramian_odd, {3, 5}},
      {ClosureKind::extended_odd, {3, 5}}};
  double worst = 0.0;
  for (const auto& [kind, orders] : cases) {
    for (int trial = 0; trial < 100; ++trial) {
      for (int M : orders) {
        MomentVector u = testutil::random_realizable_moments(rng, M);
        CharPoly an = char_poly_analytic(u, {kind, std::nullopt});
        CharPoly fd = char_poly_fd(u, {kind, std::nullopt});
        double scale = 1.0;
        for (double c : an.poly.coeffs()) scale = std::max(scale, std::abs(c));
        for (int k = 0; k <= M + 1; ++k)
          worst = std::max(worst, std::abs(fd.poly[k] - an.poly[k]) / scale);
      }
    }
  }
  if (worst > 1e-5) fail(o, "max coefficient deviation " + fmt(worst));
  o.detail += "max coeff dev " + fmt(worst);
  return o;
}

Outcome strict_hyperbolicity() {
  Outcome o;
  std::mt19937 rng(1004);
  for (double chi : {-0.5, 0.0, 0.5, 1.5, 3.0}) {
    for (int trial = 0; trial < 100; ++trial) {
      for (int M : {4, 6}) {
        MomentVector u = testutil::random_realizable_moments(rng, M);
        CharPoly cp = char_poly_analytic(u, {ClosureKind::extended_even, chi});
        RootSet a = poly_roots(cp.factors->first);
        RootSet b = poly_roots(cp.factors->second);
        if (!a.all_real() || !b.all_real() || !check_interlacing(a, b)) {
          fail(o, "interlacing failed at chi=" + fmt(chi) + ", M=" + std::to_string(M));
          return o;
        }
      }
    }
  }
  // breakdown witness
  CharPoly cp = char_poly_analytic(equilibrium_moments({1, 0, 1}, 4), {ClosureKind::extended_even, -1.0});
  if (check_interlacing(poly_roots(cp.factors->first), poly_roots(cp.factors->second)))
    fail(o, "interlacing unexpectedly holds at chi=-1");
  return o;
}

Outcome odd_degeneracy() {
  Outcome o;
  std::mt19937 rng(1005);
  for (int trial = 0; trial < 200; ++trial) {
    for (int M : {3, 5}) {
      MomentVector u = testutil::random_realizable_moments(rng, M);
      RootSet r = poly_roots(char_poly_analytic(u, {ClosureKind::gramian_odd, std::nullopt}).poly);
      for (std::size_t i = 0; i + 1 < r.roots.size(); i += 2) {
        if (std::abs(r.roots[i + 1] - r.roots[i]) > r.multiplicity_tol) {
          fail(o, "root pair split at M=" + std::to_string(M));
          return o;
        }
      }
    }
  }
  return o;
}

Outcome invariance_defaults() {
  Outcome o;
  std::mt19937 rng(1006);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    for (auto [kind, M] : {std::pair{ClosureKind::extended_even, 4},
                           std::pair{ClosureKind::extended_even, 6},
                           std::pair{ClosureKind::extended_odd, 3},
                           std::pair{ClosureKind::extended_odd, 5}}) {
      MomentVector u = testutil::random_realizable_moments(rng, M);
      InvarianceResiduals r = invariance_residuals(u, {kind, std::nullopt});
      const double scale = std::max(1.0, std::abs(u[M]));
      worst = std::max({worst, std::abs(r.r1) / scale, std::abs(r.r2) / scale, std::abs(r.r3) / scale});
    }
  }
  if (worst > 1e-9) fail(o, "max residual " + fmt(worst));
  o.detail = "max residual " + fmt(worst);
  return o;
}

Outcome invariance_simple_even_r2() {
  Outcome o;
  std::mt19937 rng(1007);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    for (int M : {4, 6}) {
      const int n = M / 2;
      MomentVector u = testutil::random_realizable_moments(rng, M);
      InvarianceResiduals r = invariance_residuals(u, {ClosureKind::gramian_even, std::nullopt});
      const double expected = (n + 1) * u[2 * n];
      worst = std::max(worst, std::abs(r.r2 - expected) / std::max(1.0, std::abs(expected)));
    }
  }
  if (worst > 1e-12) fail(o, "max deviation from (n+1)*u_2n: " + fmt(worst));
  return o;
}

Outcome hand_values() {
  Outcome o;
  MomentVector n11({1, 1, 2, 4, 10});
  if (std::abs(close_gramian_even(n11).u_next - 20.0) > 1e-12 * 20.0)
    fail(o, "gramian_even on N(1,1) != 20");
  if (std::abs(close_extended_even(n11, 1.5).u_next - 26.0) > 1e-12 * 26.0)
    fail(o, "extended_even on N(1,1) != 26");
  MomentVector std3({1, 0, 1, 0});
  if (std::abs(close_gramian_odd(std3).u_next - 1.0) > 1e-12) fail(o, "gramian_odd != 1");
  if (std::abs(close_extended_odd(std3).u_next) > 1e-12) fail(o, "extended_odd != 0");
  return o;
}

Outcome baseline_sanity() {
  Outcome o;
  auto [r, sol] = maxent_close(MomentVector({1, 0, 1}), Grid{-8.0, 8.0, 1001});
  if (!sol.converged) fail(o, "maxent did not converge on (1,0,1)");
  if (std::abs(r.u_next) > 1e-6) fail(o, "maxent u_3 = " + fmt(r.u_next));
  for (double res : sol.constraint_residuals)
    if (std::abs(res) > 1e-8) fail(o, "maxent constraint residual " + fmt(res));

  // Grad on a density inside its ansatz space
  auto he4 = [](double s) { return ((s * s - 6.0) * s * s) + 3.0; };
  auto density = [&](double c) {
    return std::exp(-0.5 * c * c) / std::sqrt(2.0 * M_PI) * (1.0 + 0.1 * he4(c) / 24.0);
  };
  std::vector<double> u(6);
  for (int k = 0; k <= 5; ++k)
    u[static_cast<std::size_t>(k)] =
        testutil::simpson([&](double c) { return std::pow(c, k) * density(c); }, -12.0, 12.0);
  const double pred = grad_close(MomentVector(std::vector<double>(u.begin(), u.begin() + 5))).u_next;
  if (testutil::rel_diff(pred, u[5]) > 1e-8)
    fail(o, "grad not exact on ansatz density: " + fmt(testutil::rel_diff(pred, u[5])));
  return o;
}

Outcome figure_reproduction() {
  Outcome o;
  using clock = std::chrono::steady_clock;

  SweepConfig fig2;
  fig2.family = BimodalParams{};
  fig2.sweep_parameter = "v2";
  fig2.from = 0.5;
  fig2.to = 4.0;
  fig2.step = 0.05;
  fig2.orders = {4, 6};
  fig2.closures = {{ClosureKind::gramian_even, std::nullopt},
                   {ClosureKind::extended_even, std::nullopt},
                   {ClosureKind::grad, std::nullopt}};
  fig2.maxent_grid = Grid{-4.0, 6.0, 1000};

  auto t0 = clock::now();
  std::vector<ResultRow> rows = run_sweep(fig2);
  const double sweep_s = std::chrono::duration<double>(clock::now() - t0).count();
  if (sweep_s >= 10.0) fail(o, "non-maxent sweep took " + fmt(sweep_s) + " s");

  auto row = [&rows](double p, int M, const std::string& c) -> const ResultRow& {
    for (const auto& r : rows)
      if (std::abs(r.parameter_value - p) < 1e-9 && r.M == M && r.closure == c) return r;
    throw MomentError("row not found");
  };
  const double ext4 = row(4.0, 4, "extended-even").relative_error;
  if (!(ext4 < row(4.0, 4, "gramian-even").relative_error))
    fail(o, "extended_even does not beat gramian_even at v2=4");
  if (!(ext4 < row(4.0, 4, "grad").relative_error)) fail(o, "extended_even does not beat grad at v2=4");
  if (!(row(0.5, 4, "grad").relative_error < 1e-2)) fail(o, "grad error at v2=0.5 not < 1e-2");

  {
    SweepConfig ms = fig2;
    ms.family = MottSmithParams{};
    ms.sweep_parameter = "x";
    ms.from = ms.to = -10.0;
    ms.step = 1.0;
    ms.orders = {4};
    ms.closures = {{ClosureKind::extended_even, std::nullopt}};
    std::vector<ResultRow> r = run_sweep(ms);
    if (!(r[0].relative_error < 1e-3))
      fail(o, "Mott-Smith x=-10 error " + fmt(r[0].relative_error));
  }
  {
    SweepConfig conv = fig2;
    conv.orders = {4, 6, 8, 10};
    conv.closures = {{ClosureKind::extended_even, std::nullopt}};
    conv.fixed_values = {2.0, 4.0};
    std::vector<ResultRow> r = run_convergence(conv);
    for (double v2 : {2.0, 4.0}) {
      double prev = std::numeric_limits<double>::infinity();
      for (int M : {4, 6, 8, 10}) {
        for (const auto& rr : r)
          if (rr.parameter_value == v2 && rr.M == M) {
            if (!(rr.relative_error <= 1.1 * prev))
              fail(o, "convergence violated at v2=" + fmt(v2) + ", M=" + std::to_string(M));
            prev = rr.relative_error;
          }
      }
    }
  }

  // full sweep including maxent must finish within five minutes
  SweepConfig with_me = fig2;
  with_me.closures.push_back({ClosureKind::maxent, std::nullopt});
  t0 = clock::now();
  run_sweep(with_me);
  const double me_s = std::chrono::duration<double>(clock::now() - t0).count();
  if (me_s >= 300.0) fail(o, "maxent sweep took " + fmt(me_s) + " s");
  o.detail += "sweep " + fmt(sweep_s) + " s, with maxent " + fmt(me_s) + " s";
  return o;
}

Outcome determinism() {
  Outcome o;
  SweepConfig cfg;
  cfg.family = BimodalParams{};
  cfg.sweep_parameter = "v2";
  cfg.from = 0.5;
  cfg.to = 4.0;
  cfg.step = 0.5;
  cfg.orders = {4};
  cfg.closures = {{ClosureKind::gramian_even, std::nullopt},
                  {ClosureKind::extended_even, std::nullopt},
                  {ClosureKind::grad, std::nullopt},
                  {ClosureKind::maxent, std::nullopt}};
  cfg.maxent_grid = Grid{-4.0, 6.0, 1000};
  std::ostringstream a, b;
  write_csv(run_sweep(cfg), a);
  write_csv(run_sweep(cfg), b);
  if (a.str() != b.str()) fail(o, "CSV outputs differ between runs");
  return o;
}

}  // namespace

int main() {
  std::vector<Check> checks = {
      {"1. equilibrium preservation (extended even, default chi)", 1.0, equilibrium_preservation},
      {"2. gauge equivariance of extended closures / variance of simple even", 5.0, gauge_equivariance},
      {"3. characteristic polynomial factorization vs finite differences", 10.0, charpoly_factorization},
      {"4. strict hyperbolicity via interlacing, breakdown at chi=-1", 5.0, strict_hyperbolicity},
      {"5. odd simple closure: pairwise identical roots", 0.0, odd_degeneracy},
      {"6a. invariance residuals vanish at default chi", 0.0, invariance_defaults},
      {"6b. simple even closure residual r2 = (n+1)*u_2n", 0.0, invariance_simple_even_r2},
      {"7. hand-derived closure values", 0.0, hand_values},
      {"8. baseline sanity (maxent Gaussian, Grad ansatz exactness)", 0.0, baseline_sanity},
      {"9. figure-level qualitative reproduction", 0.0, figure_reproduction},
      {"10. determinism of sweep CSV output", 0.0, determinism},
  };

  int failures = 0;
  for (auto& c : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0.0 && secs >= c.time_limit_s) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time limit ") +
                  fmt(c.time_limit_s) + " s";
    }
    std::printf("[%s] %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(checks.size()) - failures,
              checks.size());
  return failures;
}
