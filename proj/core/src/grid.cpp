#include "chj/grid.hpp"

#include <cstring>
#include <stdexcept>

namespace chj {

void GridSpec::validate() const {
  if (nx < 4 || ny < 4) {
    throw std::invalid_argument("GridSpec: nx and ny must be at least 4");
  }
  if (!(box_length > 0.0)) {
    throw std::invalid_argument("GridSpec: box_length must be positive");
  }
}

namespace {

void stencil_dx(const GridSpec& g, const double* in, double* out) {
  const int nx = g.nx, ny = g.ny;
  const double c = 1.0 / (2.0 * g.dx());
  for (int y = 0; y < ny; ++y) {
    const double* row = in + static_cast<std::size_t>(y) * nx;
    double* orow = out + static_cast<std::size_t>(y) * nx;
    orow[0] = c * (row[1] - row[nx - 1]);
    for (int x = 1; x < nx - 1; ++x) orow[x] = c * (row[x + 1] - row[x - 1]);
    orow[nx - 1] = c * (row[0] - row[nx - 2]);
  }
}

void stencil_dy(const GridSpec& g, const double* in, double* out) {
  const int nx = g.nx, ny = g.ny;
  const double c = 1.0 / (2.0 * g.dy());
  for (int y = 0; y < ny; ++y) {
    const double* up = in + static_cast<std::size_t>(y + 1 == ny ? 0 : y + 1) * nx;
    const double* dn = in + static_cast<std::size_t>(y == 0 ? ny - 1 : y - 1) * nx;
    double* orow = out + static_cast<std::size_t>(y) * nx;
    for (int x = 0; x < nx; ++x) orow[x] = c * (up[x] - dn[x]);
  }
}

// The second-derivative kernels are the exact compositions of the centered first
// derivatives (radius 2), matching what repeated first-derivative application yields.

void stencil_dxx(const GridSpec& g, const double* in, double* out) {
  const int nx = g.nx, ny = g.ny;
  const double c = 1.0 / (4.0 * g.dx() * g.dx());
  for (int y = 0; y < ny; ++y) {
    const double* row = in + static_cast<std::size_t>(y) * nx;
    double* orow = out + static_cast<std::size_t>(y) * nx;
    for (int x = 0; x < nx; ++x) {
      const int xp2 = x + 2 < nx ? x + 2 : x + 2 - nx;
      const int xm2 = x - 2 >= 0 ? x - 2 : x - 2 + nx;
      orow[x] = c * (row[xp2] - 2.0 * row[x] + row[xm2]);
    }
  }
}

void stencil_dyy(const GridSpec& g, const double* in, double* out) {
  const int nx = g.nx, ny = g.ny;
  const double c = 1.0 / (4.0 * g.dy() * g.dy());
  for (int y = 0; y < ny; ++y) {
    const int yp2 = y + 2 < ny ? y + 2 : y + 2 - ny;
    const int ym2 = y - 2 >= 0 ? y - 2 : y - 2 + ny;
    const double* row = in + static_cast<std::size_t>(y) * nx;
    const double* up = in + static_cast<std::size_t>(yp2) * nx;
    const double* dn = in + static_cast<std::size_t>(ym2) * nx;
    double* orow = out + static_cast<std::size_t>(y) * nx;
    for (int x = 0; x < nx; ++x) orow[x] = c * (up[x] - 2.0 * row[x] + dn[x]);
  }
}

void stencil_laplacian(const GridSpec& g, const double* in, double* out) {
  const int nx = g.nx, ny = g.ny;
  const double cx = 1.0 / (4.0 * g.dx() * g.dx());
  const double cy = 1.0 / (4.0 * g.dy() * g.dy());
  for (int y = 0; y < ny; ++y) {
    const int yp2 = y + 2 < ny ? y + 2 : y + 2 - ny;
    const int ym2 = y - 2 >= 0 ? y - 2 : y - 2 + ny;
    const double* row = in + static_cast<std::size_t>(y) * nx;
    const double* up = in + static_cast<std::size_t>(yp2) * nx;
    const double* dn = in + static_cast<std::size_t>(ym2) * nx;
    double* orow = out + static_cast<std::size_t>(y) * nx;
    for (int x = 0; x < nx; ++x) {
      const int xp2 = x + 2 < nx ? x + 2 : x + 2 - nx;
      const int xm2 = x - 2 >= 0 ? x - 2 : x - 2 + nx;
      orow[x] = cx * (row[xp2] - 2.0 * row[x] + row[xm2]) +
                cy * (up[x] - 2.0 * row[x] + dn[x]);
    }
  }
}

}  // namespace

void apply_stencil(StencilOp op, const GridSpec& spec, const double* in, double* out) {
  switch (op) {
    case StencilOp::identity:
      std::memcpy(out, in, spec.size() * sizeof(double));
      return;
    case StencilOp::dx:
      stencil_dx(spec, in, out);
      return;
    case StencilOp::dy:
      stencil_dy(spec, in, out);
      return;
    case StencilOp::dxx:
      stencil_dxx(spec, in, out);
      return;
    case StencilOp::dyy:
      stencil_dyy(spec, in, out);
      return;
    case StencilOp::dxy: {
      std::vector<double> tmp(spec.size());
      stencil_dy(spec, in, tmp.data());
      stencil_dx(spec, tmp.data(), out);
      return;
    }
    case StencilOp::laplacian:
      stencil_laplacian(spec, in, out);
      return;
  }
  throw std::logic_error("apply_stencil: unknown op");
}

namespace {

ScalarField apply(StencilOp op, const ScalarField& f) {
  ScalarField out(f.spec);
  apply_stencil(op, f.spec, f.values.data(), out.values.data());
  return out;
}

// Compact (radius-1) second differences backing the analysis helpers below; the
// StencilOp algebra above deliberately uses the radius-2 compositions instead.
void compact_dxx(const GridSpec& g, const double* in, double* out) {
  const int nx = g.nx, ny = g.ny;
  const double c = 1.0 / (g.dx() * g.dx());
  for (int y = 0; y < ny; ++y) {
    const double* row = in + static_cast<std::size_t>(y) * nx;
    double* orow = out + static_cast<std::size_t>(y) * nx;
    orow[0] = c * (row[1] - 2.0 * row[0] + row[nx - 1]);
    for (int x = 1; x < nx - 1; ++x) orow[x] = c * (row[x + 1] - 2.0 * row[x] + row[x - 1]);
    orow[nx - 1] = c * (row[0] - 2.0 * row[nx - 1] + row[nx - 2]);
  }
}

void compact_dyy(const GridSpec& g, const double* in, double* out) {
  const int nx = g.nx, ny = g.ny;
  const double c = 1.0 / (g.dy() * g.dy());
  for (int y = 0; y < ny; ++y) {
    const double* row = in + static_cast<std::size_t>(y) * nx;
    const double* up = in + static_cast<std::size_t>(y + 1 == ny ? 0 : y + 1) * nx;
    const double* dn = in + static_cast<std::size_t>(y == 0 ? ny - 1 : y - 1) * nx;
    double* orow = out + static_cast<std::size_t>(y) * nx;
    for (int x = 0; x < nx; ++x) orow[x] = c * (up[x] - 2.0 * row[x] + dn[x]);
  }
}

}  // namespace

ScalarField dx_c(const ScalarField& f) { return apply(StencilOp::dx, f); }
ScalarField dy_c(const ScalarField& f) { return apply(StencilOp::dy, f); }

ScalarField dxx_c(const ScalarField& f) {
  ScalarField out(f.spec);
  compact_dxx(f.spec, f.values.data(), out.values.data());
  return out;
}

ScalarField dyy_c(const ScalarField& f) {
  ScalarField out(f.spec);
  compact_dyy(f.spec, f.values.data(), out.values.data());
  return out;
}

ScalarField dxy_c(const ScalarField& f) { return apply(StencilOp::dxy, f); }

ScalarField laplacian(const ScalarField& f) {
  ScalarField out = dxx_c(f);
  ScalarField yy = dyy_c(f);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += yy.values[i];
  return out;
}

std::vector<StencilEntry> stencil_row(StencilOp op, const GridSpec& g, std::size_t i) {
  const int nx = g.nx, ny = g.ny;
  const int x = static_cast<int>(i) % nx;
  const int y = static_cast<int>(i) / nx;
  const int xp = (x + 1 == nx) ? 0 : x + 1;
  const int xm = (x == 0) ? nx - 1 : x - 1;
  const int yp = (y + 1 == ny) ? 0 : y + 1;
  const int ym = (y == 0) ? ny - 1 : y - 1;
  const int xp2 = x + 2 < nx ? x + 2 : x + 2 - nx;
  const int xm2 = x - 2 >= 0 ? x - 2 : x - 2 + nx;
  const int yp2 = y + 2 < ny ? y + 2 : y + 2 - ny;
  const int ym2 = y - 2 >= 0 ? y - 2 : y - 2 + ny;
  const double idx2 = 1.0 / (2.0 * g.dx());
  const double idy2 = 1.0 / (2.0 * g.dy());
  const double idxx = 1.0 / (4.0 * g.dx() * g.dx());
  const double idyy = 1.0 / (4.0 * g.dy() * g.dy());

  switch (op) {
    case StencilOp::identity:
      return {{i, 1.0}};
    case StencilOp::dx:
      return {{g.index(xp, y), idx2}, {g.index(xm, y), -idx2}};
    case StencilOp::dy:
      return {{g.index(x, yp), idy2}, {g.index(x, ym), -idy2}};
    case StencilOp::dxx:
      // On nx == 4 the two radius-2 neighbours coincide; merge them.
      if (xp2 == xm2) return {{g.index(xp2, y), 2.0 * idxx}, {i, -2.0 * idxx}};
      return {{g.index(xp2, y), idxx}, {i, -2.0 * idxx}, {g.index(xm2, y), idxx}};
    case StencilOp::dyy:
      if (yp2 == ym2) return {{g.index(x, yp2), 2.0 * idyy}, {i, -2.0 * idyy}};
      return {{g.index(x, yp2), idyy}, {i, -2.0 * idyy}, {g.index(x, ym2), idyy}};
    case StencilOp::dxy: {
      const double c = idx2 * idy2;
      return {{g.index(xp, yp), c},
              {g.index(xm, yp), -c},
              {g.index(xp, ym), -c},
              {g.index(xm, ym), c}};
    }
    case StencilOp::laplacian: {
      std::vector<StencilEntry> row = stencil_row(StencilOp::dxx, g, i);
      const std::vector<StencilEntry> ry = stencil_row(StencilOp::dyy, g, i);
      for (const StencilEntry& e : ry) {
        bool merged = false;
        for (StencilEntry& r : row) {
          if (r.col == e.col) {
            r.value += e.value;
            merged = true;
            break;
          }
        }
        if (!merged) row.push_back(e);
      }
      return row;
    }
  }
  throw std::logic_error("stencil_row: unknown op");
}

}  // namespace chj
