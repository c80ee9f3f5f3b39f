#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "chj/carleman_tn.hpp"
#include "chj/metrics.hpp"
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

}  // namespace

TEST_SUITE("carleman_tn") {

TEST_CASE("lift stores one pure power per component") {
  const chj::GridSpec g{4, 4};
  const chj::FluidState s = random_state(g, 3);
  for (int order : {2, 3, 4}) {
    const chj::TNState st = chj::tn_lift(s, order);
    CHECK(st.order == order);
    CHECK(st.j2.terms.size() == 1);
    if (order >= 3) CHECK(st.j3.terms.size() == 1);
    if (order >= 4) CHECK(st.j4.terms.size() == 1);
  }
  CHECK(chj::factor_vector_count(chj::tn_lift(s, 2)) == 3);
  CHECK(chj::factor_vector_count(chj::tn_lift(s, 3)) == 6);
  CHECK(chj::factor_vector_count(chj::tn_lift(s, 4)) == 10);
  CHECK_THROWS_AS(chj::tn_lift(s, 5), std::invalid_argument);
  CHECK_THROWS_AS(chj::tn_lift(s, 1), std::invalid_argument);
}

TEST_CASE("term counts grow by the spawn-counting law on a generic state") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  const chj::FluidState s = random_state(g, 9);

  chj::TNState n3 = chj::tn_lift(s, 3);
  for (int n = 1; n <= 4; ++n) {
    chj::tn_step(n3, ops);
    CHECK(n3.j2.terms.size() == static_cast<std::size_t>(1 + 2 * n));
    CHECK(n3.j3.terms.size() == 1);
  }

  chj::TNState n4 = chj::tn_lift(s, 4);
  for (int n = 1; n <= 3; ++n) {
    chj::tn_step(n4, ops);
    CHECK(n4.j3.terms.size() == static_cast<std::size_t>(1 + 3 * n));
    CHECK(n4.j2.terms.size() == static_cast<std::size_t>(1 + 3 * n * n));
    CHECK(n4.j4.terms.size() == 1);
  }
}

TEST_CASE("the rest state spawns nothing") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  chj::FluidState rest(g);
  for (std::size_t i = 0; i < g.size(); ++i) rest.rho.values[i] = 1.0;
  chj::TNState st = chj::tn_lift(rest, 3);
  const chj::PrimaryVector j0 = st.j1;
  for (int n = 0; n < 10; ++n) {
    chj::tn_step(st, ops);
    CHECK(st.j2.terms.size() == 1);
    CHECK(st.j3.terms.size() == 1);
    double drift = 0.0;
    for (std::size_t i = 0; i < j0.size(); ++i) {
      drift = std::max(drift, std::abs(st.j1[i] - j0[i]));
    }
    CHECK(drift <= 1e-15);
  }
}

TEST_CASE("factorized and dense backends produce the same trajectory") {
  // With the gauge shift on, the two backends park the constant forcing differently
  // inside the higher components; the bilinear table never sees an underived chi,
  // so the physical trajectory j1 must still agree to round-off.
  struct Case {
    int nx, ny, order, steps;
  };
  for (const bool gauge : {true, false}) {
    for (const Case c : {Case{8, 8, 2, 20}, Case{6, 6, 3, 10}, Case{4, 4, 4, 3}}) {
      const chj::GridSpec g{c.nx, c.ny};
      chj::SimParams p;
      p.gauge_shift = gauge;
      const chj::CarlemanOps ops = chj::build_ops(g, p);
      const chj::FluidState s = random_state(g, 13);
      chj::DenseCarlemanState dense = chj::lift(s, c.order);
      chj::TNState tn = chj::tn_lift(s, c.order);
      for (int n = 0; n < c.steps; ++n) {
        chj::dense_step(dense, ops);
        chj::tn_step(tn, ops);
        CHECK(rel_err(tn.j1, dense.j1()) < 1e-12);
      }
      if (!gauge) {
        // Without the forcing the component updates coincide term for term.
        const std::vector<double> j2_tn = chj::densify(tn.j2, g);
        CHECK(rel_err(j2_tn, dense.comp[1]) < 1e-12);
      }
    }
  }
}

TEST_CASE("gram norm matches the densified tensor") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  const chj::FluidState s = random_state(g, 17);
  chj::TNState st = chj::tn_lift(s, 3);
  for (int n = 0; n < 5; ++n) chj::tn_step(st, ops);
  for (const chj::FactorList* list : {&st.j2, &st.j3}) {
    CHECK(chj::factor_list_norm(*list, g) ==
          doctest::Approx(chj::l2_norm(chj::densify(*list, g))).epsilon(1e-12));
  }
}

TEST_CASE("psi norm agrees across backends") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  p.gauge_shift = false;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  const chj::FluidState s = random_state(g, 19);
  chj::DenseCarlemanState dense = chj::lift(s, 2);
  chj::TNState tn = chj::tn_lift(s, 2);
  for (int n = 0; n < 5; ++n) {
    chj::dense_step(dense, ops);
    chj::tn_step(tn, ops);
    CHECK(chj::psi_norm(tn) == doctest::Approx(chj::psi_norm(dense)).epsilon(1e-12));
  }
}

TEST_CASE("compress keeps the represented tensor and drops only negligible terms") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  const chj::FluidState s = random_state(g, 21);
  chj::TNState st = chj::tn_lift(s, 3);
  for (int n = 0; n < 3; ++n) chj::tn_step(st, ops);

  const chj::FactorList same = chj::compress(st.j2, 0.0);
  CHECK(same.terms.size() == st.j2.terms.size());

  chj::FactorList padded = st.j2;
  chj::RankOneTerm tiny;
  tiny.weight = 1e-300;
  tiny.order = 2;
  tiny.data.assign(2 * 4 * g.size(), 1.0);
  padded.terms.push_back(tiny);
  const chj::FactorList cleaned = chj::compress(padded, 1e-12);
  CHECK(cleaned.terms.size() == st.j2.terms.size());
  CHECK(chj::factor_list_norm(cleaned, g) ==
        doctest::Approx(chj::factor_list_norm(st.j2, g)).epsilon(1e-12));

  CHECK_THROWS_AS(chj::compress(st.j2, -1.0), std::invalid_argument);
}

TEST_CASE("factor cap aborts runaway growth") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  const chj::FluidState s = random_state(g, 25);
  chj::TNState st = chj::tn_lift(s, 3);
  chj::TnOptions opts;
  opts.factor_cap = 5;
  CHECK_THROWS_AS(
      [&] {
        for (int n = 0; n < 3; ++n) chj::tn_step(st, ops, opts);
      }(),
      std::runtime_error);
}

TEST_CASE("memory cost closed forms") {
  using chj::memory_cost;
  const std::size_t G = 16;
  CHECK(memory_cost(3, G, 0).entries_tn == 8.0 * G);
  CHECK(memory_cost(3, G, 1).entries_tn == 24.0 * G);
  CHECK(memory_cost(3, G, 2).entries_tn == 40.0 * G);
  CHECK(memory_cost(4, G, 1).entries_tn == 80.0 * G);
  CHECK(memory_cost(4, G, 2).entries_tn == 188.0 * G);

  const chj::CostReport r3 = memory_cost(3, 1024, 600);
  CHECK(r3.entries_tn == 9838592.0);
  CHECK(r3.entries_full == 68719476736.0);
  CHECK(r3.bytes_tn == 8.0 * r3.entries_tn);
  CHECK(r3.bytes_full == 8.0 * r3.entries_full);
  CHECK(r3.entries_tn_asymptotic == 600.0 * 4096.0);

  const chj::CostReport r4 = memory_cost(4, 1024, 150);
  CHECK(r4.entries_tn == 558510080.0);
  CHECK(r4.entries_full == 281474976710656.0);
  CHECK(r4.order == 4);
  CHECK(r4.gridpoints == 1024);
  CHECK(r4.steps == 150);
  CHECK(r4.entries_tn_asymptotic ==
        doctest::Approx(std::pow(150.0 * 4096.0, 2.0) * 2.0).epsilon(1e-12));

  CHECK_THROWS_AS(memory_cost(2, 16, 1), std::invalid_argument);
  CHECK_THROWS_AS(memory_cost(6, 16, 1), std::invalid_argument);
  CHECK_THROWS_AS(memory_cost(3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(memory_cost(3, 16, -1), std::invalid_argument);
}

TEST_CASE("term counts match the closed-form cost model") {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  const chj::FluidState s = random_state(g, 29);
  const std::size_t dim = 4 * g.size();
  for (int order : {3, 4}) {
    chj::TNState st = chj::tn_lift(s, order);
    for (int n = 1; n <= 3; ++n) {
      chj::tn_step(st, ops);
      double stored = static_cast<double>(st.j2.terms.size()) * 2.0 * dim;
      if (order >= 4) stored += static_cast<double>(st.j3.terms.size()) * 3.0 * dim;
      CHECK(stored == chj::memory_cost(order, g.size(), n).entries_tn);
    }
  }
}

}  // TEST_SUITE
