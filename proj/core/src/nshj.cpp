#include "chj/nshj.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chj {

void SimParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("SimParams: dt must be positive");
  if (nu < 0.0) throw std::invalid_argument("SimParams: nu must be non-negative");
  if (!(cs2 > 0.0)) throw std::invalid_argument("SimParams: cs2 must be positive");
  if (n_steps < 0) throw std::invalid_argument("SimParams: n_steps must be non-negative");
}

std::pair<ScalarField, ScalarField> velocity(const FluidState& s) {
  ScalarField vx = dx_c(s.chi);
  ScalarField vy = dy_c(s.chi);
  const std::size_t g = s.spec().size();
  for (std::size_t i = 0; i < g; ++i) {
    vx.values[i] += s.ax.values[i];
    vy.values[i] += s.ay.values[i];
  }
  return {std::move(vx), std::move(vy)};
}

ScalarField vorticity(const FluidState& s) {
  ScalarField w = dx_c(s.ay);
  ScalarField dyax = dy_c(s.ax);
  const std::size_t g = s.spec().size();
  for (std::size_t i = 0; i < g; ++i) w.values[i] -= dyax.values[i];
  return w;
}

namespace {

void check_finite(const ScalarField& f, const char* name) {
  for (double v : f.values) {
    if (!std::isfinite(v)) {
      throw std::runtime_error(std::string("nshj_step: non-finite value in field ") + name);
    }
  }
}

}  // namespace

FluidState nshj_step(const FluidState& s, const SimParams& p) {
  s.validate();
  p.validate();
  const GridSpec& g = s.spec();
  const std::size_t n = g.size();
  const double dt = p.dt;
  const double rho_gauge = p.gauge_shift ? 1.0 : 0.0;

  auto [vx, vy] = velocity(s);
  ScalarField w = vorticity(s);

  ScalarField drx = dx_c(s.rho);
  ScalarField dry = dy_c(s.rho);
  ScalarField dvxx = dx_c(vx);
  ScalarField dvyy = dy_c(vy);
  ScalarField dwx = dx_c(w);
  ScalarField dwy = dy_c(w);

  FluidState out(g);
  for (std::size_t i = 0; i < n; ++i) {
    const double div_v = dvxx.values[i] + dvyy.values[i];
    out.rho.values[i] =
        s.rho.values[i] -
        dt * (drx.values[i] * vx.values[i] + dry.values[i] * vy.values[i] +
              s.rho.values[i] * div_v);
    out.chi.values[i] =
        s.chi.values[i] +
        dt * (p.nu * div_v - p.cs2 * (s.rho.values[i] - rho_gauge) -
              0.5 * (vx.values[i] * vx.values[i] + vy.values[i] * vy.values[i]));
    out.ax.values[i] =
        s.ax.values[i] + dt * (w.values[i] * vy.values[i] - p.nu * dwy.values[i]);
    out.ay.values[i] =
        s.ay.values[i] + dt * (p.nu * dwx.values[i] - w.values[i] * vx.values[i]);
  }

  check_finite(out.rho, "rho");
  check_finite(out.chi, "chi");
  check_finite(out.ax, "ax");
  check_finite(out.ay, "ay");
  return out;
}

std::pair<double, double> momentum(const FluidState& s) {
  auto [vx, vy] = velocity(s);
  double mx = 0.0, my = 0.0;
  const std::size_t g = s.spec().size();
  for (std::size_t i = 0; i < g; ++i) {
    mx += s.rho.values[i] * vx.values[i];
    my += s.rho.values[i] * vy.values[i];
  }
  return {mx, my};
}

DiagnosticsRecord diagnostics(const FluidState& s, const SimParams& p, double k_dominant) {
  auto [vx, vy] = velocity(s);
  DiagnosticsRecord r;
  for (double v : vx.values) r.u_max_x = std::max(r.u_max_x, std::abs(v));
  for (double v : vy.values) r.u_max_y = std::max(r.u_max_y, std::abs(v));
  const double u_mag = std::sqrt(r.u_max_x * r.u_max_x + r.u_max_y * r.u_max_y);
  if (p.nu > 0.0) {
    r.reynolds = u_mag * s.spec().box_length / p.nu;
    r.t_dissipative = 1.0 / (k_dominant * k_dominant * p.nu);
  } else {
    r.reynolds = std::numeric_limits<double>::infinity();
    r.t_dissipative = std::numeric_limits<double>::infinity();
  }
  r.mach = std::max(r.u_max_x, r.u_max_y) / std::sqrt(p.cs2);
  return r;
}

std::vector<std::string> stability_warnings(const GridSpec& spec, const SimParams& p) {
  std::vector<std::string> w;
  const double dx = spec.dx();
  const double dy = spec.dy();
  // Largest eigenvalue of the (composed-derivative) Laplacian is 1/dx^2 + 1/dy^2.
  const double diff_limit = 2.0 / (1.0 / (dx * dx) + 1.0 / (dy * dy));
  if (p.nu > 0.0 && p.nu * p.dt > diff_limit) {
    w.push_back("viscous term exceeds the explicit-Euler diffusive stability bound: nu*dt = " +
                std::to_string(p.nu * p.dt) + " > " + std::to_string(diff_limit));
  }
  const double cfl = std::sqrt(p.cs2) * p.dt / std::min(dx, dy);
  if (cfl > 1.0) {
    w.push_back("acoustic CFL number exceeds 1: " + std::to_string(cfl));
  }
  return w;
}

}  // namespace chj
