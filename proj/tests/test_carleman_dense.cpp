#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "chj/carleman_dense.hpp"
#include "doctest.h"

namespace {

chj::FluidState random_state(const chj::GridSpec& g, unsigned seed, double amp = 0.1) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-amp, amp);
  chj::FluidState s(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    s.rho.values[i] = 1.0 + dist(rng);
    s.chi.values[i] = dist(rng);
    s.ax.values[i] = dist(rng);
    s.ay.values[i] = dist(rng);
  }
  return s;
}

double rel_err(const std::vector<double>& got, const std::vector<double>& want) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    num += (got[i] - want[i]) * (got[i] - want[i]);
    den += want[i] * want[i];
  }
  return std::sqrt(num / den);
}

std::vector<double> csr_apply(const chj::Csr& m, const std::vector<double>& x) {
  std::vector<double> y(m.n, 0.0);
  for (std::size_t r = 0; r < m.n; ++r) {
    double acc = 0.0;
    for (std::size_t k = m.rowptr[r]; k < m.rowptr[r + 1]; ++k) acc += m.val[k] * x[m.col[k]];
    y[r] = acc;
  }
  return y;
}

}  // namespace

TEST_SUITE("carleman_dense") {

TEST_CASE("lift produces exact tensor powers") {
  const chj::GridSpec g{4, 4};
  const std::size_t dim = 4 * g.size();
  const chj::FluidState s = random_state(g, 5);
  const chj::DenseCarlemanState st = chj::lift(s, 3);
  CHECK(st.order == 3);
  REQUIRE(st.comp.size() == 3);
  CHECK(st.comp[0].size() == dim);
  CHECK(st.comp[1].size() == dim * dim);
  CHECK(st.comp[2].size() == dim * dim * dim);

  const std::vector<double> j = chj::flatten(s);
  for (std::size_t i = 0; i < dim; ++i) CHECK(st.comp[0][i] == j[i]);
  for (std::size_t p : {std::size_t(0), std::size_t(17), std::size_t(63)}) {
    for (std::size_t q : {std::size_t(3), std::size_t(40), std::size_t(63)}) {
      CHECK(st.comp[1][p * dim + q] == doctest::Approx(j[p] * j[q]).epsilon(1e-15));
      CHECK(st.comp[2][(p * dim + q) * dim + p] ==
            doctest::Approx(j[p] * j[q] * j[p]).epsilon(1e-15));
    }
  }
}

TEST_CASE("lift enforces the memory budget") {
  const chj::GridSpec small{4, 4};
  const chj::FluidState s_small = random_state(small, 6);
  CHECK_THROWS_AS(chj::lift(s_small, 2, 1000), std::runtime_error);

  const chj::GridSpec big{32, 32};
  const chj::FluidState s_big = random_state(big, 6);
  CHECK_THROWS_AS(chj::lift(s_big, 4), std::runtime_error);
}

TEST_CASE("the lifted rest state is a fixed point of every component") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  chj::FluidState rest(g);
  for (std::size_t i = 0; i < g.size(); ++i) rest.rho.values[i] = 1.0;
  chj::DenseCarlemanState st = chj::lift(rest, 3);
  const chj::DenseCarlemanState ref = chj::lift(rest, 3);
  for (int step = 0; step < 5; ++step) {
    chj::dense_step(st, ops);
    for (int m = 0; m < 3; ++m) {
      double drift = 0.0;
      for (std::size_t i = 0; i < st.comp[m].size(); ++i) {
        drift = std::max(drift, std::abs(st.comp[m][i] - ref.comp[m][i]));
      }
      CHECK(drift <= 1e-13);
    }
  }
}

TEST_CASE("first step matches the nonlinear update at every truncation order") {
  struct Case {
    int nx, ny, order;
  };
  for (const Case c : {Case{8, 8, 2}, Case{8, 8, 3}, Case{4, 4, 4}}) {
    const chj::GridSpec g{c.nx, c.ny};
    chj::SimParams p;
    const chj::CarlemanOps ops = chj::build_ops(g, p);
    const chj::FluidState s = random_state(g, 11);
    chj::DenseCarlemanState st = chj::lift(s, c.order);
    chj::dense_step(st, ops);
    CHECK(rel_err(st.j1(), chj::flatten(chj::nshj_step(s, p))) < 1e-13);
  }
}

TEST_CASE("csr form of A matches the blockwise application") {
  const chj::GridSpec g{8, 8};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  const std::size_t dim = 4 * g.size();
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(dim);
  for (double& v : x) v = dist(rng);

  std::vector<double> want(dim, 0.0);
  chj::apply_linear(ops.a, x.data(), want.data());
  const std::vector<double> got = csr_apply(ops.a_csr, x);
  for (std::size_t i = 0; i < dim; ++i) {
    CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("gauge vector carries dt*K on the chi block only") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps on = chj::build_ops(g, p);
  const std::size_t G = g.size();
  REQUIRE(on.k_vec.size() == 4 * G);
  for (std::size_t i = 0; i < 4 * G; ++i) {
    const bool chi_block = i >= G && i < 2 * G;
    CHECK(on.k_vec[i] == (chi_block ? p.dt * p.cs2 : 0.0));
  }
  p.gauge_shift = false;
  const chj::CarlemanOps off = chj::build_ops(g, p);
  for (std::size_t i = 0; i < 4 * G; ++i) CHECK(off.k_vec[i] == 0.0);
}

TEST_CASE("second component follows the binomial update law") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  const std::size_t dim = 4 * g.size();
  const chj::FluidState s = random_state(g, 23);
  chj::DenseCarlemanState st = chj::lift(s, 2);
  const std::vector<double> j1 = st.comp[0];
  const std::vector<double> j2 = st.comp[1];
  chj::dense_step(st, ops);

  std::vector<double> a_j1(dim, 0.0);
  chj::apply_linear(ops.a, j1.data(), a_j1.data());

  // (A (x) A) j2: contract the left index, then the right index.
  std::vector<double> tmp(dim * dim, 0.0), aa_j2(dim * dim, 0.0);
  std::vector<double> slice(dim), out(dim);
  for (std::size_t q = 0; q < dim; ++q) {
    for (std::size_t r = 0; r < dim; ++r) slice[r] = j2[r * dim + q];
    chj::apply_linear(ops.a, slice.data(), out.data());
    for (std::size_t pidx = 0; pidx < dim; ++pidx) tmp[pidx * dim + q] = out[pidx];
  }
  for (std::size_t pidx = 0; pidx < dim; ++pidx) {
    chj::apply_linear(ops.a, tmp.data() + pidx * dim, out.data());
    for (std::size_t q = 0; q < dim; ++q) aa_j2[pidx * dim + q] = out[q];
  }

  double max_diff = 0.0;
  for (std::size_t pidx = 0; pidx < dim; ++pidx) {
    for (std::size_t q = 0; q < dim; ++q) {
      const double want = aa_j2[pidx * dim + q] + a_j1[pidx] * ops.k_vec[q] +
                          ops.k_vec[pidx] * a_j1[q] + ops.k_vec[pidx] * ops.k_vec[q];
      max_diff = std::max(max_diff, std::abs(st.comp[1][pidx * dim + q] - want));
    }
  }
  CHECK(max_diff <= 1e-13);
}

}  // TEST_SUITE
