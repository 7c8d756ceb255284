#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "gramian/experiments.hpp"
#include "gramian/hyperbolicity.hpp"

namespace {

gramian::MomentVector parse_moments(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  if (values.empty()) throw gramian::MomentError("no moments given");
  return gramian::MomentVector(std::move(values));
}

gramian::ClosureSpec make_spec(const std::string& name, double chi, bool chi_set) {
  gramian::ClosureSpec spec;
  spec.kind = gramian::closure_from_name(name);
  if (chi_set) spec.chi = chi;
  return spec;
}

void print_roots(const gramian::RootSet& rs) {
  std::printf("roots:");
  for (double r : rs.roots) std::printf(" %.12g", r);
  std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gramian moment closures: closure evaluation, hyperbolicity diagnostics, and benchmark sweeps"};
  app.require_subcommand(1);

  std::string moments_csv, closure = "extended-even", config_path;
  double chi = 0.0;
  bool serial = false;

  auto add_closure_opts = [&](CLI::App* cmd) {
    cmd->add_option("--moments", moments_csv, "comma-separated moments u_0..u_M")->required();
    cmd->add_option("--closure", closure, "closure kind");
    cmd->add_option("--chi", chi, "chi override for extended closures");
  };

  auto* cmd_close = app.add_subcommand("close", "predict u_{M+1} for a moment vector");
  add_closure_opts(cmd_close);

  auto* cmd_hyp = app.add_subcommand("hyperbolicity", "characteristic polynomial, roots, verdict");
  add_closure_opts(cmd_hyp);

  auto* cmd_inv = app.add_subcommand("invariance", "gauge-invariance residuals (r1, r2, r3)");
  add_closure_opts(cmd_inv);

  auto* cmd_sweep = app.add_subcommand("sweep", "run a parameter sweep from a config file, write CSV");
  cmd_sweep->add_option("--config", config_path, "config file")->required();
  cmd_sweep->add_flag("--serial", serial, "use the serial reference kernel");

  auto* cmd_conv = app.add_subcommand("converge", "run a convergence study from a config file, write CSV");
  cmd_conv->add_option("--config", config_path, "config file")->required();
  cmd_conv->add_flag("--serial", serial, "use the serial reference kernel");

  CLI11_PARSE(app, argc, argv);

  try {
    const bool chi_set = cmd_close->count("--chi") || cmd_hyp->count("--chi") || cmd_inv->count("--chi");

    if (cmd_close->parsed()) {
      gramian::MomentVector u = parse_moments(moments_csv);
      gramian::ClosureSpec spec = make_spec(closure, chi, chi_set);
      gramian::ClosureResult r = gramian::close(u, spec);
      std::printf("u_%d = %.17g\n", u.max_order() + 1, r.u_next);
      if (r.chi_used) std::printf("chi = %.17g\n", *r.chi_used);
      if (spec.kind != gramian::ClosureKind::grad && spec.kind != gramian::ClosureKind::maxent) {
        std::printf("status = %s\n", gramian::status_name(gramian::verdict(u, spec).status));
      }
    } else if (cmd_hyp->parsed()) {
      gramian::MomentVector u = parse_moments(moments_csv);
      gramian::ClosureSpec spec = make_spec(closure, chi, chi_set);
      gramian::CharPoly cp = gramian::char_poly_analytic(u, spec);
      std::printf("coefficients (ascending):");
      for (int k = 0; k <= cp.poly.degree(); ++k) std::printf(" %.12g", cp.poly[k]);
      std::printf("\n");
      print_roots(gramian::poly_roots(cp.poly));
      gramian::HyperbolicityVerdict v = gramian::verdict(u, spec);
      std::printf("status = %s, min_gap = %.6g", gramian::status_name(v.status), v.min_gap);
      if (v.interlaced) std::printf(", interlaced = %s", *v.interlaced ? "true" : "false");
      std::printf("\n");
    } else if (cmd_inv->parsed()) {
      gramian::MomentVector u = parse_moments(moments_csv);
      gramian::ClosureSpec spec = make_spec(closure, chi, chi_set);
      gramian::InvarianceResiduals r = gramian::invariance_residuals(u, spec);
      std::printf("r1 = %.17g\nr2 = %.17g\nr3 = %.17g\n", r.r1, r.r2, r.r3);
    } else if (cmd_sweep->parsed()) {
      gramian::SweepConfig cfg = gramian::load_config(config_path);
      gramian::write_csv(gramian::run_sweep(cfg, !serial), cfg.output_path);
      std::printf("wrote %s\n", cfg.output_path.c_str());
    } else if (cmd_conv->parsed()) {
      gramian::SweepConfig cfg = gramian::load_config(config_path);
      gramian::write_csv(gramian::run_convergence(cfg, !serial), cfg.output_path);
      std::printf("wrote %s\n", cfg.output_path.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
