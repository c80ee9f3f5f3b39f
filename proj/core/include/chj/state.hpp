#pragma once

#include <vector>

#include "chj/grid.hpp"

namespace chj {

/// Block order of the primary fields inside a flattened vector.
enum Field : int { field_rho = 0, field_chi = 1, field_ax = 2, field_ay = 3 };

inline constexpr int kNumFields = 4;

/// Flattened primary state of length 4*G, blocks ordered (rho, chi, ax, ay).
using PrimaryVector = std::vector<double>;

/// Full primary fluid state: density, velocity potential and gauge field.
struct FluidState {
  ScalarField rho;
  ScalarField chi;
  ScalarField ax;
  ScalarField ay;

  FluidState() = default;
  explicit FluidState(const GridSpec& g)
      : rho(g, 1.0), chi(g, 0.0), ax(g, 0.0), ay(g, 0.0) {}

  const GridSpec& spec() const { return rho.spec; }

  /// Throws std::invalid_argument if the four fields disagree on the grid.
  void validate() const;
};

/// Packs the four fields into one vector of length 4*spec.size().
PrimaryVector flatten(const FluidState& s);

/// Inverse of flatten; `v` must have length 4*spec.size().
FluidState unflatten(const PrimaryVector& v, const GridSpec& spec);

}  // namespace chj
