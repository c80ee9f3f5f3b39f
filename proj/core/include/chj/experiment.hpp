#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chj/config.hpp"
#include "chj/metrics.hpp"
#include "chj/state.hpp"

namespace chj {

/// Realizes the configured initial condition on the configured grid.
FluidState build_ic(const RunConfig& cfg);

/// x-momentum field J_x = rho * v_x.
ScalarField momentum_x(const FluidState& s);

/// Raw time series of J_x at one probe, for the reference run and each lifted order.
struct ProbeRecord {
  Probe probe;
  std::string tag;                  ///< filename fragment, e.g. "5p5_2"
  std::vector<ErrorSeries> series;  ///< labels "nshj", "chj2", ...
};

/// Everything one experiment produces, before any file is written.
struct RunArtifacts {
  RunConfig cfg;
  DiagnosticsRecord diag;
  std::vector<std::string> warnings;
  std::vector<ErrorSeries> error_series;  ///< global relative errors per order/field, from step 1
  std::vector<ErrorSeries> norm_series;   ///< state/component norms, from t = 0
  std::vector<ProbeRecord> probes;
  FluidState final_nshj;
  std::map<int, PrimaryVector> final_chj;  ///< order -> final lifted j^(1)
};

/// Advances the reference solver and all configured lifted orders in lockstep,
/// sampling errors, norms and probes at every step. Throws std::runtime_error
/// tagged with the step index if any evolution produces non-finite values.
RunArtifacts run_experiment(const RunConfig& cfg, bool quiet = false);

/// Filename fragment for a probe position: %g rendering with '.' -> 'p'; the two
/// coordinates are joined with '_' unless both render to single characters.
std::string probe_tag(const Probe& p);

/// A named experiment family: a file tag plus one config per variant label.
struct Preset {
  std::string tag;
  std::vector<std::pair<std::string, RunConfig>> variants;
};

/// Built-in experiment family (fig2, fig3, fig4, fig7, fig8); throws on unknown names.
Preset make_preset(const std::string& name);

/// Writes the CSV/manifest artifacts for a set of finished runs into `outdir`
/// (created if missing) and returns the emitted file names, manifest last.
std::vector<std::string> emit_plot_data(
    const std::string& tag, const std::vector<std::pair<std::string, RunArtifacts>>& runs,
    const std::string& outdir);

}  // namespace chj
