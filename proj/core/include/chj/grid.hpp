#pragma once

#include <cstddef>
#include <vector>

namespace chj {

/// Uniform periodic 2D grid on a square box, nodes indexed i = y*nx + x (x fastest).
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double box_length = 2.0 * 3.14159265358979323846;

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  double dx() const { return box_length / nx; }
  double dy() const { return box_length / ny; }
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * nx + x; }
  double x_of(int x) const { return x * dx(); }
  double y_of(int y) const { return y * dy(); }

  /// Throws std::invalid_argument unless nx, ny >= 4 and box_length > 0.
  void validate() const;

  bool operator==(const GridSpec& o) const {
    return nx == o.nx && ny == o.ny && box_length == o.box_length;
  }
};

/// One scalar degree of freedom sampled on every node of a grid.
struct ScalarField {
  GridSpec spec;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const GridSpec& g, double fill = 0.0)
      : spec(g), values(g.size(), fill) {}

  double& at(int x, int y) { return values[spec.index(x, y)]; }
  double at(int x, int y) const { return values[spec.index(x, y)]; }
};

/// Periodic finite-difference operators forming the algebra generated by the centered
/// first differences: dxx, dyy, dxy and laplacian are the exact operator products
/// dx*dx, dy*dy, dx*dy and dx*dx + dy*dy (radius-2 kernels). The evolution operators
/// are assembled from these, so repeated first-difference application and the
/// composite symbols agree to round-off.
enum class StencilOp { identity, dx, dy, dxx, dyy, dxy, laplacian };

/// Applies `op` to `in` (length spec.size()) writing `out`; buffers must not alias.
void apply_stencil(StencilOp op, const GridSpec& spec, const double* in, double* out);

/// Centered first x-derivative, periodic wrap.
ScalarField dx_c(const ScalarField& f);
/// Centered first y-derivative, periodic wrap.
ScalarField dy_c(const ScalarField& f);
/// Compact (3-point) centered second x-derivative, periodic wrap. Analysis helper;
/// distinct from StencilOp::dxx, which is the first-difference composition.
ScalarField dxx_c(const ScalarField& f);
/// Compact (3-point) centered second y-derivative, periodic wrap.
ScalarField dyy_c(const ScalarField& f);
/// Mixed derivative, the composition dx_c(dy_c(f)).
ScalarField dxy_c(const ScalarField& f);
/// Five-point Laplacian dxx_c + dyy_c.
ScalarField laplacian(const ScalarField& f);

/// Nonzero row entries (column, value) of an atomic stencil at one node.
struct StencilEntry {
  std::size_t col;
  double value;
};

/// Exact row of the matrix realisation of `op` at node `i`; entries have distinct columns.
std::vector<StencilEntry> stencil_row(StencilOp op, const GridSpec& spec, std::size_t i);

}  // namespace chj
