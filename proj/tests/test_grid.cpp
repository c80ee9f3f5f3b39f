#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "chj/grid.hpp"
#include "doctest.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

chj::ScalarField random_field(const chj::GridSpec& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  chj::ScalarField f(g);
  for (double& v : f.values) v = dist(rng);
  return f;
}

chj::ScalarField apply_op(chj::StencilOp op, const chj::ScalarField& f) {
  chj::ScalarField out(f.spec);
  chj::apply_stencil(op, f.spec, f.values.data(), out.values.data());
  return out;
}

double max_abs_diff(const chj::ScalarField& a, const chj::ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

chj::ScalarField shifted(const chj::ScalarField& f, int sx, int sy) {
  chj::ScalarField out(f.spec);
  for (int y = 0; y < f.spec.ny; ++y) {
    for (int x = 0; x < f.spec.nx; ++x) {
      out.at(x, y) = f.at((x + sx) % f.spec.nx, (y + sy) % f.spec.ny);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("grid validation and layout") {
  chj::GridSpec g{8, 4};
  g.validate();
  CHECK(g.size() == 32);
  CHECK(g.index(3, 2) == 19);
  CHECK(g.dx() == doctest::Approx(2.0 * kPi / 8).epsilon(1e-15));
  CHECK(g.dy() == doctest::Approx(2.0 * kPi / 4).epsilon(1e-15));
  CHECK(g.x_of(2) == doctest::Approx(2.0 * g.dx()).epsilon(1e-15));

  CHECK_THROWS_AS((chj::GridSpec{3, 8}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((chj::GridSpec{8, 3}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((chj::GridSpec{8, 8, 0.0}).validate(), std::invalid_argument);
}

TEST_CASE("first-derivative symbol on plane waves") {
  const chj::GridSpec g{16, 8};
  for (int k = 1; k <= 3; ++k) {
    chj::ScalarField f(g);
    for (int y = 0; y < g.ny; ++y) {
      for (int x = 0; x < g.nx; ++x) f.at(x, y) = std::cos(k * g.x_of(x));
    }
    const chj::ScalarField d = chj::dx_c(f);
    const double sym = std::sin(k * g.dx()) / g.dx();
    for (int y = 0; y < g.ny; ++y) {
      for (int x = 0; x < g.nx; ++x) {
        CHECK(d.at(x, y) ==
              doctest::Approx(-sym * std::sin(k * g.x_of(x))).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("compact second derivative has the 3-point symbol") {
  const chj::GridSpec g{32, 8};
  const double h = g.dx();
  chj::ScalarField f(g);
  for (int y = 0; y < g.ny; ++y) {
    for (int x = 0; x < g.nx; ++x) f.at(x, y) = std::cos(g.x_of(x));
  }
  const chj::ScalarField d = chj::dxx_c(f);
  const double sym = -(2.0 - 2.0 * std::cos(h)) / (h * h);
  CHECK(sym == doctest::Approx(-0.9967913640449618).epsilon(1e-9));
  for (int x = 0; x < g.nx; ++x) {
    CHECK(d.at(x, 2) == doctest::Approx(sym * std::cos(g.x_of(x))).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("composed second derivative has the wide symbol") {
  const chj::GridSpec g{32, 8};
  const double h = g.dx();
  chj::ScalarField f(g);
  for (int y = 0; y < g.ny; ++y) {
    for (int x = 0; x < g.nx; ++x) f.at(x, y) = std::cos(g.x_of(x));
  }
  const chj::ScalarField d = apply_op(chj::StencilOp::dxx, f);
  const double s1 = std::sin(h) / h;
  const double sym = -s1 * s1;
  CHECK(sym == doctest::Approx(-0.9872148307666581).epsilon(1e-9));
  for (int x = 0; x < g.nx; ++x) {
    CHECK(d.at(x, 5) == doctest::Approx(sym * std::cos(g.x_of(x))).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("second-order ops are exact first-difference compositions") {
  const chj::GridSpec g{12, 8};
  const chj::ScalarField f = random_field(g, 7);
  CHECK(max_abs_diff(apply_op(chj::StencilOp::dxx, f), chj::dx_c(chj::dx_c(f))) < 1e-13);
  CHECK(max_abs_diff(apply_op(chj::StencilOp::dyy, f), chj::dy_c(chj::dy_c(f))) < 1e-13);
  CHECK(max_abs_diff(apply_op(chj::StencilOp::dxy, f), chj::dx_c(chj::dy_c(f))) < 1e-13);
  CHECK(max_abs_diff(apply_op(chj::StencilOp::dxy, f), chj::dy_c(chj::dx_c(f))) < 1e-13);

  chj::ScalarField wide_lap(g);
  const chj::ScalarField dxx = apply_op(chj::StencilOp::dxx, f);
  const chj::ScalarField dyy = apply_op(chj::StencilOp::dyy, f);
  for (std::size_t i = 0; i < wide_lap.values.size(); ++i) {
    wide_lap.values[i] = dxx.values[i] + dyy.values[i];
  }
  CHECK(max_abs_diff(apply_op(chj::StencilOp::laplacian, f), wide_lap) < 1e-13);
}

TEST_CASE("analysis helpers use the compact kernels") {
  const chj::GridSpec g{12, 8};
  const chj::ScalarField f = random_field(g, 11);
  chj::ScalarField compact_lap(g);
  const chj::ScalarField dxx = chj::dxx_c(f);
  const chj::ScalarField dyy = chj::dyy_c(f);
  for (std::size_t i = 0; i < compact_lap.values.size(); ++i) {
    compact_lap.values[i] = dxx.values[i] + dyy.values[i];
  }
  CHECK(max_abs_diff(chj::laplacian(f), compact_lap) < 1e-14);
  // The compact and composed families are genuinely different operators.
  CHECK(max_abs_diff(chj::laplacian(f), apply_op(chj::StencilOp::laplacian, f)) > 1e-3);
  CHECK(max_abs_diff(chj::dxx_c(f), apply_op(chj::StencilOp::dxx, f)) > 1e-3);
}

TEST_CASE("linearity") {
  const chj::GridSpec g{8, 8};
  const chj::ScalarField f = random_field(g, 3);
  const chj::ScalarField h = random_field(g, 4);
  for (chj::StencilOp op : {chj::StencilOp::identity, chj::StencilOp::dx, chj::StencilOp::dy,
                            chj::StencilOp::dxx, chj::StencilOp::dyy, chj::StencilOp::dxy,
                            chj::StencilOp::laplacian}) {
    chj::ScalarField combo(g);
    for (std::size_t i = 0; i < combo.values.size(); ++i) {
      combo.values[i] = 2.5 * f.values[i] - 0.75 * h.values[i];
    }
    const chj::ScalarField lhs = apply_op(op, combo);
    const chj::ScalarField of = apply_op(op, f);
    const chj::ScalarField oh = apply_op(op, h);
    chj::ScalarField rhs(g);
    for (std::size_t i = 0; i < rhs.values.size(); ++i) {
      rhs.values[i] = 2.5 * of.values[i] - 0.75 * oh.values[i];
    }
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("shift equivariance on the periodic grid") {
  const chj::GridSpec g{8, 12};
  const chj::ScalarField f = random_field(g, 5);
  for (chj::StencilOp op : {chj::StencilOp::dx, chj::StencilOp::dy, chj::StencilOp::dxx,
                            chj::StencilOp::dxy, chj::StencilOp::laplacian}) {
    CHECK(max_abs_diff(apply_op(op, shifted(f, 3, 5)), shifted(apply_op(op, f), 3, 5)) <
          1e-13);
  }
}

TEST_CASE("centered first differences are antisymmetric (integration by parts)") {
  const chj::GridSpec g{8, 8};
  const chj::ScalarField f = random_field(g, 21);
  const chj::ScalarField h = random_field(g, 22);
  const chj::ScalarField dxh = chj::dx_c(h);
  const chj::ScalarField dxf = chj::dx_c(f);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    lhs += f.values[i] * dxh.values[i];
    rhs -= dxf.values[i] * h.values[i];
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
}

TEST_CASE("stencil_row matches apply_stencil on every node") {
  for (const chj::GridSpec g : {chj::GridSpec{8, 8}, chj::GridSpec{4, 4}, chj::GridSpec{4, 8}}) {
    const chj::ScalarField f = random_field(g, 13);
    for (chj::StencilOp op : {chj::StencilOp::identity, chj::StencilOp::dx, chj::StencilOp::dy,
                              chj::StencilOp::dxx, chj::StencilOp::dyy, chj::StencilOp::dxy,
                              chj::StencilOp::laplacian}) {
      const chj::ScalarField ref = apply_op(op, f);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const std::vector<chj::StencilEntry> row = chj::stencil_row(op, g, i);
        double acc = 0.0;
        for (const chj::StencilEntry& e : row) acc += e.value * f.values[e.col];
        CHECK(acc == doctest::Approx(ref.values[i]).epsilon(1e-12).scale(1.0));
        for (std::size_t a = 0; a < row.size(); ++a) {
          for (std::size_t b = a + 1; b < row.size(); ++b) {
            CHECK(row[a].col != row[b].col);
          }
        }
      }
    }
  }
}

TEST_CASE("identity op copies the field") {
  const chj::GridSpec g{8, 4};
  const chj::ScalarField f = random_field(g, 2);
  CHECK(max_abs_diff(apply_op(chj::StencilOp::identity, f), f) == 0.0);
}

}  // TEST_SUITE
