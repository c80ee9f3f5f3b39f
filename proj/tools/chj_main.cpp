#include <cstdio>
#include <exception>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "chj/carleman_ops.hpp"
#include "chj/carleman_tn.hpp"
#include "chj/config.hpp"
#include "chj/csv.hpp"
#include "chj/experiment.hpp"
#include "chj/metrics.hpp"
#include "chj/nshj.hpp"
#include "chj/resources.hpp"

namespace {

std::string config_stem(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  return stem.empty() ? std::string("run") : stem;
}

void print_diagnostics(const chj::RunConfig& cfg, const chj::RunArtifacts& art) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "grid %dx%d  dt %g  nu %g  steps %d  Re %.4g  Ma %.4g  T %.4g",
                cfg.grid.nx, cfg.grid.ny, cfg.params.dt, cfg.params.nu,
                cfg.params.n_steps, art.diag.reynolds, art.diag.mach,
                art.diag.t_dissipative);
  std::cout << buf << "\n";
  for (const std::string& w : art.warnings) std::cout << "warning: " << w << "\n";
}

void print_files(const std::string& outdir, const std::vector<std::string>& files) {
  for (const std::string& f : files) std::cout << "wrote " << outdir << "/" << f << "\n";
}

int cmd_run(const std::string& config_path, bool reference_only) {
  chj::RunConfig cfg = chj::load_config_file(config_path);
  if (reference_only) cfg.carleman.orders.clear();
  const std::string tag = config_stem(config_path);
  std::vector<std::pair<std::string, chj::RunArtifacts>> runs;
  runs.emplace_back("", chj::run_experiment(cfg));
  print_diagnostics(cfg, runs[0].second);
  print_files(cfg.output_dir, chj::emit_plot_data(tag, runs, cfg.output_dir));
  return 0;
}

int cmd_preset(const std::string& name, const std::string& outdir_override,
               int steps_override) {
  chj::Preset preset = chj::make_preset(name);
  for (auto& [vlabel, cfg] : preset.variants) {
    if (!outdir_override.empty()) cfg.output_dir = outdir_override;
    if (steps_override > 0) cfg.params.n_steps = steps_override;
  }
  std::vector<std::pair<std::string, chj::RunArtifacts>> runs;
  for (const auto& [vlabel, cfg] : preset.variants) {
    std::cout << "== " << name << " variant " << vlabel << " ==\n";
    runs.emplace_back(vlabel, chj::run_experiment(cfg));
    print_diagnostics(cfg, runs.back().second);
  }
  const std::string outdir = preset.variants.front().second.output_dir;
  print_files(outdir, chj::emit_plot_data(preset.tag, runs, outdir));
  return 0;
}

int cmd_resources(const std::string& config_path, const std::string& csv_path) {
  chj::RunConfig cfg = chj::load_config_file(config_path);
  const chj::FluidState ic = chj::build_ic(cfg);
  const chj::CarlemanOps ops = chj::build_ops(cfg.grid, cfg.params);
  chj::TNState st = chj::tn_lift(ic, 2);
  chj::tn_step(st, ops);
  const double psi_next = chj::psi_norm(st);
  const chj::ResourceReport rep = chj::resource_report(cfg.grid, cfg.params, psi_next);
  std::cout << chj::resource_report_text(rep);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + csv_path);
    out << chj::resource_report_csv(rep);
    std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

int cmd_memory_scaling(const std::vector<int>& orders, const std::vector<int>& grids,
                       int steps, const std::string& csv_path) {
  std::vector<chj::CostReport> reports;
  for (int order : orders) {
    for (int n : grids) {
      const std::size_t g = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
      reports.push_back(chj::memory_cost(order, g, steps));
    }
  }
  if (csv_path.empty()) {
    std::cout << chj::cost_csv_text(reports);
  } else {
    chj::write_cost_csv(csv_path, reports);
    std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

int cmd_verify_appendix(const std::string& out_path) {
  const chj::DiscrepancyReport check = chj::verify_appendix_matrices();
  if (out_path.empty()) {
    std::cout << check.text();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + out_path);
    out << check.text();
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CHJ toolkit: NSHJ reference solver and Carleman-linearized evolutions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string outdir_override;
  std::string out_path;
  std::string csv_path;
  int steps_override = 0;
  int scaling_steps = 150;
  std::vector<int> orders{3, 4, 5};
  std::vector<int> grids{32, 64, 128};

  CLI::App* run_nshj = app.add_subcommand(
      "run-nshj", "Evolve the NSHJ reference solver alone from a config file");
  run_nshj->add_option("config", config_path, "path to a run config")->required();

  CLI::App* run_chj = app.add_subcommand(
      "run-chj", "Evolve NSHJ and the requested Carleman orders side by side");
  run_chj->add_option("config", config_path, "path to a run config")->required();

  CLI::App* preset = app.add_subcommand(
      "preset", "Run a packaged experiment (fig2, fig3, fig4, fig7, fig8)");
  preset->add_option("name", preset_name, "preset name")->required();
  preset->add_option("--output-dir", outdir_override, "override the output directory");
  preset->add_option("--steps", steps_override, "override the step count");

  CLI::App* resources = app.add_subcommand(
      "resources", "Block-encoding constants and one-step success probability");
  resources->add_option("config", config_path, "path to a run config")->required();
  resources->add_option("--csv", csv_path, "also write a single-row CSV");

  CLI::App* scaling = app.add_subcommand(
      "memory-scaling", "Full-tensor vs tensor-network memory cost table");
  scaling->add_option("--orders", orders, "truncation orders (3..5)")
      ->delimiter(',');
  scaling->add_option("--grids", grids, "linear grid sizes n (G = n*n)")
      ->delimiter(',');
  scaling->add_option("--steps", scaling_steps, "evolution steps the state is grown for");
  scaling->add_option("--csv", csv_path, "write the table to a file instead of stdout");

  CLI::App* appendix = app.add_subcommand(
      "verify-appendix", "Diff the derived bilinear tables against the transcribed ones");
  appendix->add_option("--out", out_path, "write the report to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_nshj->parsed()) return cmd_run(config_path, true);
    if (run_chj->parsed()) return cmd_run(config_path, false);
    if (preset->parsed()) return cmd_preset(preset_name, outdir_override, steps_override);
    if (resources->parsed()) return cmd_resources(config_path, csv_path);
    if (scaling->parsed()) return cmd_memory_scaling(orders, grids, scaling_steps, csv_path);
    if (appendix->parsed()) return cmd_verify_appendix(out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand given\n";
  return 1;
}
