#include "chj/experiment.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "chj/carleman_dense.hpp"
#include "chj/carleman_tn.hpp"
#include "chj/csv.hpp"
#include "chj/nshj.hpp"

namespace chj {

FluidState build_ic(const RunConfig& cfg) {
  cfg.grid.validate();
  if (cfg.ic.kind != "kolmogorov") {
    throw std::invalid_argument("build_ic: unknown ic kind '" + cfg.ic.kind + "'");
  }
  FluidState s(cfg.grid);
  for (int y = 0; y < cfg.grid.ny; ++y) {
    for (int x = 0; x < cfg.grid.nx; ++x) {
      s.ax.at(x, y) = cfg.ic.ux * std::cos(cfg.ic.kx * cfg.grid.y_of(y));
      s.ay.at(x, y) = cfg.ic.uy * std::cos(cfg.ic.ky * cfg.grid.x_of(x));
    }
  }
  return s;
}

ScalarField momentum_x(const FluidState& s) {
  const auto v = velocity(s);
  ScalarField jx(s.spec());
  for (std::size_t i = 0; i < jx.values.size(); ++i) {
    jx.values[i] = s.rho.values[i] * v.first.values[i];
  }
  return jx;
}

namespace {

std::string coord_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  std::string s(buf);
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

}  // namespace

std::string probe_tag(const Probe& p) {
  const std::string a = coord_tag(p.x);
  const std::string b = coord_tag(p.y);
  if (a.size() == 1 && b.size() == 1) return a + b;
  return a + "_" + b;
}

RunArtifacts run_experiment(const RunConfig& cfg, bool quiet) {
  cfg.validate();
  RunArtifacts art;
  art.cfg = cfg;
  const GridSpec spec = cfg.grid;
  FluidState ref = build_ic(cfg);
  art.diag = diagnostics(ref, cfg.params, cfg.dominant_k());
  art.warnings = stability_warnings(spec, cfg.params);

  const std::vector<int>& orders = cfg.carleman.orders;
  const bool use_tn = cfg.carleman.backend == "tn";
  TnOptions topts;
  topts.compress_tol = cfg.carleman.compress_tol;
  const CarlemanOps ops = build_ops(spec, cfg.params);
  std::vector<TNState> tns;
  std::vector<DenseCarlemanState> denses;
  for (int n : orders) {
    if (use_tn) {
      tns.push_back(tn_lift(ref, n));
    } else {
      denses.push_back(lift(ref, n));
    }
  }
  const auto j1_of = [&](std::size_t oi) -> const PrimaryVector& {
    return use_tn ? tns[oi].j1 : denses[oi].j1();
  };

  static const std::array<const char*, 4> kFieldTag = {"rho", "chi", "ax", "jx"};
  std::vector<std::array<ErrorSeries, 4>> err(orders.size());
  for (std::size_t oi = 0; oi < orders.size(); ++oi) {
    for (std::size_t f = 0; f < 4; ++f) {
      err[oi][f].label = "chj" + std::to_string(orders[oi]) + "_" + kFieldTag[f];
    }
  }
  art.probes.resize(cfg.probes.size());
  std::vector<std::size_t> probe_nodes(cfg.probes.size());
  for (std::size_t pi = 0; pi < cfg.probes.size(); ++pi) {
    ProbeRecord& rec = art.probes[pi];
    rec.probe = cfg.probes[pi];
    rec.tag = probe_tag(cfg.probes[pi]);
    rec.series.resize(1 + orders.size());
    rec.series[0].label = "nshj";
    for (std::size_t oi = 0; oi < orders.size(); ++oi) {
      rec.series[1 + oi].label = "chj" + std::to_string(orders[oi]);
    }
    probe_nodes[pi] = resolve(cfg.probes[pi], spec).node;
  }
  ErrorSeries ref_norm;
  ref_norm.label = "nshj_state_norm";
  std::vector<ErrorSeries> j1_norm(orders.size());
  std::vector<ErrorSeries> j2_norm(orders.size());
  std::vector<ErrorSeries> psi(orders.size());
  for (std::size_t oi = 0; oi < orders.size(); ++oi) {
    const std::string on = std::to_string(orders[oi]);
    j1_norm[oi].label = "chj" + on + "_j1_norm";
    j2_norm[oi].label = "chj" + on + "_j2_norm";
    psi[oi].label = "chj" + on + "_psi_norm";
  }

  const auto sample = [&](double t, bool with_errors) {
    const ScalarField ref_jx = momentum_x(ref);
    ref_norm.times.push_back(t);
    ref_norm.values.push_back(l2_norm(flatten(ref)));
    for (std::size_t pi = 0; pi < cfg.probes.size(); ++pi) {
      art.probes[pi].series[0].times.push_back(t);
      art.probes[pi].series[0].values.push_back(ref_jx.values[probe_nodes[pi]]);
    }
    for (std::size_t oi = 0; oi < orders.size(); ++oi) {
      const FluidState approx = unflatten(j1_of(oi), spec);
      const ScalarField approx_jx = momentum_x(approx);
      if (with_errors) {
        const std::array<double, 4> values = {
            global_rel_error(approx.rho, ref.rho), global_rel_error(approx.chi, ref.chi),
            global_rel_error(approx.ax, ref.ax), global_rel_error(approx_jx, ref_jx)};
        for (std::size_t f = 0; f < 4; ++f) {
          err[oi][f].times.push_back(t);
          err[oi][f].values.push_back(values[f]);
        }
      }
      for (std::size_t pi = 0; pi < cfg.probes.size(); ++pi) {
        art.probes[pi].series[1 + oi].times.push_back(t);
        art.probes[pi].series[1 + oi].values.push_back(approx_jx.values[probe_nodes[pi]]);
      }
      j1_norm[oi].times.push_back(t);
      j1_norm[oi].values.push_back(l2_norm(j1_of(oi)));
      if (orders[oi] == 2) {
        // The order-2 component stays a single factorized term, so these are cheap.
        const double n2 =
            use_tn ? factor_list_norm(tns[oi].j2, spec) : l2_norm(denses[oi].comp[1]);
        j2_norm[oi].times.push_back(t);
        j2_norm[oi].values.push_back(n2);
        psi[oi].times.push_back(t);
        psi[oi].values.push_back(l2_norm(j1_of(oi)) * n2);
      }
    }
  };

  sample(0.0, false);
  const int n_steps = cfg.params.n_steps;
  const int stride = n_steps >= 10 ? n_steps / 10 : 1;
  for (int step = 1; step <= n_steps; ++step) {
    try {
      ref = nshj_step(ref, cfg.params);
      for (TNState& st : tns) tn_step(st, ops, topts);
      for (DenseCarlemanState& st : denses) dense_step(st, ops);
    } catch (const std::exception& e) {
      throw std::runtime_error("run_experiment: step " + std::to_string(step) + ": " + e.what());
    }
    sample(step * cfg.params.dt, true);
    if (!quiet && n_steps >= 100 && step % stride == 0) {
      std::fprintf(stderr, "  step %d/%d\n", step, n_steps);
    }
  }

  for (std::size_t oi = 0; oi < orders.size(); ++oi) {
    for (std::size_t f = 0; f < 4; ++f) art.error_series.push_back(std::move(err[oi][f]));
  }
  art.norm_series.push_back(std::move(ref_norm));
  for (std::size_t oi = 0; oi < orders.size(); ++oi) {
    art.norm_series.push_back(std::move(j1_norm[oi]));
    if (orders[oi] == 2) {
      art.norm_series.push_back(std::move(j2_norm[oi]));
      art.norm_series.push_back(std::move(psi[oi]));
    }
  }
  art.final_nshj = std::move(ref);
  for (std::size_t oi = 0; oi < orders.size(); ++oi) {
    art.final_chj[orders[oi]] = j1_of(oi);
  }
  return art;
}

namespace {

RunConfig preset_base(int n, int steps, double nu, std::vector<int> orders) {
  RunConfig cfg;
  cfg.grid = GridSpec{n, n};
  cfg.params.nu = nu;
  // Runs at different viscosities keep the same step count by rescaling dt,
  // so equal step indices compare equal fractions of the decay time.
  cfg.params.dt = 0.01 * (1.0 / 6.0) / nu;
  cfg.params.n_steps = steps;
  cfg.carleman.orders = std::move(orders);
  cfg.carleman.backend = "tn";
  return cfg;
}

constexpr double kNu6 = 1.0 / 6.0;
constexpr double kNu18 = 1.0 / 18.0;

}  // namespace

Preset make_preset(const std::string& name) {
  Preset p;
  p.tag = name;
  if (name == "fig2") {
    for (const auto& [vlabel, nu] : {std::pair{"nu6", kNu6}, std::pair{"nu18", kNu18}}) {
      p.variants.emplace_back(vlabel, preset_base(32, 100, nu, {2}));
    }
  } else if (name == "fig3") {
    for (const auto& [vlabel, nu] : {std::pair{"nu6", kNu6}, std::pair{"nu18", kNu18}}) {
      RunConfig cfg = preset_base(32, 600, nu, {2, 3});
      // Field-error comparisons normalize by the reference field norm; the
      // gauge shift keeps chi centered near zero, which would make that
      // denominator vanishingly small, so these runs leave the gauge off.
      cfg.params.gauge_shift = false;
      p.variants.emplace_back(vlabel, cfg);
    }
  } else if (name == "fig4") {
    for (const auto& [vlabel, nu] : {std::pair{"nu6", kNu6}, std::pair{"nu18", kNu18}}) {
      RunConfig cfg = preset_base(32, 150, nu, {2, 3, 4});
      cfg.params.gauge_shift = false;
      cfg.probes = {{0.0, 0.0}, {5.5, 2.0}};
      p.variants.emplace_back(vlabel, cfg);
    }
  } else if (name == "fig7") {
    for (const auto& [vlabel, nu] : {std::pair{"nu6", kNu6}, std::pair{"nu18", kNu18}}) {
      RunConfig cfg = preset_base(32, 100, nu, {2, 3, 4});
      cfg.ic.ux = 0.3;
      cfg.ic.uy = 0.2;
      cfg.ic.kx = 1.0;
      cfg.ic.ky = 4.0;
      cfg.probes = {{0.0, 0.0}, {5.5, 2.0}};
      cfg.k_dominant = 4.0;
      p.variants.emplace_back(vlabel, cfg);
    }
  } else if (name == "fig8") {
    for (const auto& [vlabel, nu] : {std::pair{"sym_nu6", kNu6}, std::pair{"sym_nu18", kNu18}}) {
      RunConfig cfg = preset_base(128, 2400, nu, {2});
      cfg.probes = {{5.5, 2.0}};
      cfg.k_dominant = 1.0;
      p.variants.emplace_back(vlabel, cfg);
    }
    for (const auto& [vlabel, nu] : {std::pair{"asym_nu6", kNu6}, std::pair{"asym_nu18", kNu18}}) {
      RunConfig cfg = preset_base(128, 2400, nu, {2});
      cfg.ic.ux = 0.3;
      cfg.ic.uy = 0.2;
      cfg.ic.kx = 1.0;
      cfg.ic.ky = 4.0;
      cfg.probes = {{5.5, 2.0}};
      cfg.k_dominant = 4.0;
      p.variants.emplace_back(vlabel, cfg);
    }
  } else {
    throw std::invalid_argument("make_preset: unknown preset '" + name + "'");
  }
  for (auto& [vlabel, cfg] : p.variants) cfg.output_dir = "out/" + name;
  return p;
}

namespace {

void write_final_fields(const std::string& path, const FluidState& s) {
  const auto v = velocity(s);
  const GridSpec& g = s.spec();
  std::vector<std::vector<std::string>> rows;
  rows.reserve(g.size());
  for (int y = 0; y < g.ny; ++y) {
    for (int x = 0; x < g.nx; ++x) {
      const std::size_t i = g.index(x, y);
      rows.push_back({std::to_string(x), std::to_string(y), format_double(g.x_of(x)),
                      format_double(g.y_of(y)), format_double(s.rho.values[i]),
                      format_double(s.chi.values[i]), format_double(s.ax.values[i]),
                      format_double(s.ay.values[i]),
                      format_double(s.rho.values[i] * v.first.values[i]),
                      format_double(s.rho.values[i] * v.second.values[i])});
    }
  }
  write_table_csv(path, "ix,iy,x,y,rho,chi,ax,ay,jx,jy", rows);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

std::vector<std::string> emit_plot_data(
    const std::string& tag, const std::vector<std::pair<std::string, RunArtifacts>>& runs,
    const std::string& outdir) {
  std::filesystem::create_directories(outdir);
  std::vector<std::string> files;
  std::vector<std::string> manifest;
  const auto add = [&](const std::string& name, const std::string& desc) {
    files.push_back(name);
    manifest.push_back(desc + ": " + name);
  };
  const auto suffix = [](const std::string& vlabel) {
    return vlabel.empty() ? std::string() : "_" + vlabel;
  };
  const auto paren = [](const std::string& vlabel) {
    return vlabel.empty() ? std::string() : " (" + vlabel + ")";
  };
  const auto path_of = [&](const std::string& name) { return outdir + "/" + name; };

  for (const auto& [vlabel, art] : runs) {
    if (!art.error_series.empty()) {
      const std::string name = tag + "_error" + suffix(vlabel) + ".csv";
      write_error_series_csv(path_of(name), art.error_series);
      add(name, "global relative error series" + paren(vlabel));
    }
    if (!art.norm_series.empty()) {
      const std::string name = tag + "_norms" + suffix(vlabel) + ".csv";
      write_error_series_csv(path_of(name), art.norm_series);
      add(name, "state and component norm series" + paren(vlabel));
    }
    {
      const std::string name = tag + "_final" + suffix(vlabel) + "_nshj.csv";
      write_final_fields(path_of(name), art.final_nshj);
      add(name, "final reference fields" + paren(vlabel));
    }
    for (const auto& [order, j1] : art.final_chj) {
      const std::string name =
          tag + "_final" + suffix(vlabel) + "_chj" + std::to_string(order) + ".csv";
      write_final_fields(path_of(name), unflatten(j1, art.cfg.grid));
      add(name, "final order-" + std::to_string(order) + " lifted fields" + paren(vlabel));
    }
    {
      const std::string name = tag + "_config" + suffix(vlabel) + ".ini";
      write_text_file(path_of(name), render_config(art.cfg));
      add(name, "run configuration" + paren(vlabel));
    }
  }

  // Probe files stack every variant's series so one file drives one plot.
  std::vector<std::string> ptags;
  for (const auto& [vlabel, art] : runs) {
    for (const ProbeRecord& rec : art.probes) {
      bool seen = false;
      for (const std::string& t : ptags) seen = seen || t == rec.tag;
      if (!seen) ptags.push_back(rec.tag);
    }
  }
  for (const std::string& ptag : ptags) {
    std::vector<ErrorSeries> stacked;
    for (const auto& [vlabel, art] : runs) {
      for (const ProbeRecord& rec : art.probes) {
        if (rec.tag != ptag) continue;
        for (const ErrorSeries& s : rec.series) {
          stacked.push_back(s);
          stacked.back().label += suffix(vlabel);
        }
        if (!rec.series.empty() && !rec.series[0].values.empty()) {
          // Analytic shear-decay reference, scaled to the reference run's initial value.
          ErrorSeries d = decay_reference(art.cfg.dominant_k(), art.cfg.params.nu,
                                          rec.series[0].times);
          const double scale = rec.series[0].values[0];
          for (double& v : d.values) v *= scale;
          d.label = "decay" + suffix(vlabel);
          stacked.push_back(std::move(d));
        }
      }
    }
    if (stacked.empty()) continue;
    const std::string name = tag + "_probe_" + ptag + ".csv";
    write_error_series_csv(path_of(name), stacked);
    add(name, "J_x probe series [" + ptag + "]");
  }

  {
    const std::string name = tag + "_appendix_diff.txt";
    write_text_file(path_of(name), verify_appendix_matrices().text());
    add(name, "bilinear-operator transcription check");
  }

  std::string mtext;
  for (const std::string& line : manifest) mtext += line + "\n";
  write_text_file(path_of("manifest.txt"), mtext);
  files.push_back("manifest.txt");
  return files;
}

}  // namespace chj
