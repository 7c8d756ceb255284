#include "gramian/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gramian/hyperbolicity.hpp"

namespace gramian {

namespace {

void set_sweep_parameter(DistributionSpec& family, const std::string& name, double value) {
  if (auto* bm = std::get_if<BimodalParams>(&family)) {
    if (name == "v2") {
      bm->v2 = value;
      return;
    }
  } else if (auto* eh = std::get_if<ElectronHoleParams>(&family)) {
    if (name == "phi") {
      eh->phi = value;
      return;
    }
  } else if (auto* ms = std::get_if<MottSmithParams>(&family)) {
    if (name == "x") {
      ms->x = value;
      return;
    }
  }
  throw MomentError("sweep parameter '" + name + "' does not apply to this family");
}

ResultRow compute_row(const SweepConfig& cfg, double parameter, int M, const ClosureSpec& spec) {
  ResultRow row;
  row.parameter_value = parameter;
  row.M = M;
  row.closure = closure_name(spec.kind);
  row.u_pred = std::numeric_limits<double>::quiet_NaN();

  DistributionSpec family = cfg.family;
  set_sweep_parameter(family, cfg.sweep_parameter, parameter);

  try {
    MomentVector truth = moments(family, M + 1);
    MomentVector u(std::vector<double>(truth.values().begin(), truth.values().begin() + M + 1));
    row.u_truth = truth[M + 1];

    ClosureResult result;
    if (spec.kind == ClosureKind::maxent) {
      auto [r, sol] = maxent_close(u, cfg.maxent_grid);
      result = r;
      row.verdict = sol.converged ? "converged" : "not-converged";
      if (!sol.converged) return row;
    } else {
      result = close(u, spec);
      if (spec.kind == ClosureKind::grad) {
        row.verdict = "-";
      } else {
        row.verdict = status_name(verdict(u, spec).status);
      }
    }
    row.u_pred = result.u_next;
    row.chi = result.chi_used;
    row.relative_error = rel_error(row.u_pred, row.u_truth);
  } catch (const ZeroTruth&) {
    row.verdict = "zero-truth";
    row.relative_error = std::numeric_limits<double>::quiet_NaN();
  } catch (const MomentError& e) {
    row.verdict = std::string("error: ") + e.what();
  }
  return row;
}

std::vector<ResultRow> run_rows(const SweepConfig& cfg, const std::vector<double>& parameters,
                                bool parallel) {
  struct Task {
    double parameter;
    int M;
    const ClosureSpec* spec;
  };
  std::vector<Task> tasks;
  for (double p : parameters)
    for (int M : cfg.orders)
      for (const auto& spec : cfg.closures) tasks.push_back({p, M, &spec});

  std::vector<ResultRow> rows(tasks.size());
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      rows[static_cast<std::size_t>(i)] =
          compute_row(cfg, tasks[static_cast<std::size_t>(i)].parameter,
                      tasks[static_cast<std::size_t>(i)].M, *tasks[static_cast<std::size_t>(i)].spec);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      rows[static_cast<std::size_t>(i)] =
          compute_row(cfg, tasks[static_cast<std::size_t>(i)].parameter,
                      tasks[static_cast<std::size_t>(i)].M, *tasks[static_cast<std::size_t>(i)].spec);
  }
  return rows;
}

}  // namespace

double rel_error(double u_pred, double u_truth) {
  if (std::abs(u_truth) <= 1e-14 * std::abs(u_pred))
    throw ZeroTruth("relative error undefined: |u_truth| below resolution");
  return std::abs(u_pred - u_truth) / std::abs(u_truth);
}

std::vector<ResultRow> run_sweep(const SweepConfig& cfg, bool parallel) {
  if (!(cfg.step > 0.0)) throw MomentError("sweep step must be positive");
  // Inclusive endpoints; integer-multiple arithmetic avoids float drift in counts.
  const int count = static_cast<int>(std::llround((cfg.to - cfg.from) / cfg.step)) + 1;
  std::vector<double> parameters(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) parameters[static_cast<std::size_t>(i)] = cfg.from + i * cfg.step;
  return run_rows(cfg, parameters, parallel);
}

std::vector<ResultRow> run_sweep_serial(const SweepConfig& cfg) { return run_sweep(cfg, false); }

std::vector<ResultRow> run_convergence(const SweepConfig& cfg, bool parallel) {
  if (cfg.fixed_values.empty()) throw MomentError("convergence study needs fixed parameter values");
  return run_rows(cfg, cfg.fixed_values, parallel);
}

SweepConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto get = [&kv](const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };
  auto get_double = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
  };
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
    return out;
  };

  SweepConfig cfg;
  const std::string family = get("family", "bimodal");
  if (family == "bimodal") {
    BimodalParams p;
    p.rho1 = get_double("bimodal.rho1", p.rho1);
    p.v1 = get_double("bimodal.v1", p.v1);
    p.theta1 = get_double("bimodal.theta1", p.theta1);
    p.rho2 = get_double("bimodal.rho2", p.rho2);
    p.v2 = get_double("bimodal.v2", p.v2);
    p.theta2 = get_double("bimodal.theta2", p.theta2);
    cfg.family = p;
    cfg.sweep_parameter = "v2";
  } else if (family == "electron-hole") {
    ElectronHoleParams p;
    p.phi = get_double("electron-hole.phi", p.phi);
    p.v0 = get_double("electron-hole.v0", p.v0);
    p.beta = get_double("electron-hole.beta", p.beta);
    cfg.family = p;
    cfg.sweep_parameter = "phi";
  } else if (family == "mott-smith") {
    MottSmithParams p;
    p.mach = get_double("mott-smith.mach", p.mach);
    p.gamma = get_double("mott-smith.gamma", p.gamma);
    p.x = get_double("mott-smith.x", p.x);
    cfg.family = p;
    cfg.sweep_parameter = "x";
  } else {
    throw MomentError("unknown distribution family: " + family);
  }
  cfg.sweep_parameter = get("sweep.parameter", cfg.sweep_parameter);
  cfg.from = get_double("sweep.from", 0.0);
  cfg.to = get_double("sweep.to", 0.0);
  cfg.step = get_double("sweep.step", 1.0);
  for (const auto& v : split(get("sweep.values", ""))) cfg.fixed_values.push_back(std::stod(v));
  for (const auto& v : split(get("orders", ""))) cfg.orders.push_back(std::stoi(v));
  for (const auto& name : split(get("closures", ""))) cfg.closures.push_back(ClosureSpec{closure_from_name(name), std::nullopt});
  cfg.maxent_grid.lo = get_double("maxent.lo", cfg.maxent_grid.lo);
  cfg.maxent_grid.hi = get_double("maxent.hi", cfg.maxent_grid.hi);
  cfg.maxent_grid.points = static_cast<int>(get_double("maxent.points", cfg.maxent_grid.points));
  cfg.output_path = get("output", "sweep.csv");
  if (cfg.orders.empty()) throw MomentError("config needs at least one order");
  if (cfg.closures.empty()) throw MomentError("config needs at least one closure");
  return cfg;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MomentError("cannot open config file: " + path);
  return parse_config(in);
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << "parameter,M,closure,chi,u_truth,u_pred,rel_error,verdict\n";
  char buf[64];
  auto fmt = [&buf](double x) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out << fmt(r.parameter_value) << ',' << r.M << ',' << r.closure << ','
        << (r.chi ? fmt(*r.chi) : std::string()) << ',' << fmt(r.u_truth) << ',' << fmt(r.u_pred)
        << ',' << fmt(r.relative_error) << ',' << r.verdict << '\n';
  }
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MomentError("cannot open output file: " + path);
  write_csv(rows, out);
}

}  // namespace gramian
