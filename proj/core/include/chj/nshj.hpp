#pragma once

#include <string>
#include <utility>
#include <vector>

#include "chj/state.hpp"

namespace chj {

/// Time-stepping parameters shared by the reference solver and the linearized evolutions.
struct SimParams {
  double dt = 0.01;
  double nu = 1.0 / 6.0;
  double cs2 = 1.0 / 3.0;
  int n_steps = 0;
  bool gauge_shift = true;

  /// Throws std::invalid_argument on non-positive dt, negative nu, or non-positive cs2.
  void validate() const;
};

/// Velocity components v = grad(chi) + A.
std::pair<ScalarField, ScalarField> velocity(const FluidState& s);

/// Vorticity omega = dx_c(ay) - dy_c(ax).
ScalarField vorticity(const FluidState& s);

/// One explicit Euler step of the discrete NSHJ equations; throws on non-finite output.
FluidState nshj_step(const FluidState& s, const SimParams& p);

/// Domain sums of rho*vx and rho*vy.
std::pair<double, double> momentum(const FluidState& s);

/// Nondimensional numbers characterising a run.
struct DiagnosticsRecord {
  double u_max_x = 0.0;       ///< max over nodes of |vx|
  double u_max_y = 0.0;       ///< max over nodes of |vy|
  double reynolds = 0.0;      ///< sqrt(ux^2+uy^2) * box_length / nu
  double mach = 0.0;          ///< max(ux, uy) / sqrt(cs2)
  double t_dissipative = 0.0; ///< 1 / (k_dominant^2 * nu)
};

/// Evaluates the diagnostics of `s`; `k_dominant` selects the mode defining the decay time.
DiagnosticsRecord diagnostics(const FluidState& s, const SimParams& p, double k_dominant);

/// Human-readable warnings for parameter choices that break explicit-Euler stability margins.
std::vector<std::string> stability_warnings(const GridSpec& spec, const SimParams& p);

}  // namespace chj
