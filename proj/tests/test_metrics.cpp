#include <cmath>
#include <stdexcept>
#include <vector>

#include "chj/carleman_tn.hpp"
#include "chj/metrics.hpp"
#include "doctest.h"

TEST_SUITE("metrics") {

TEST_CASE("probes resolve to the nearest node with periodic wrap") {
  const chj::GridSpec g32{32, 32};
  const chj::ResolvedProbe a = chj::resolve({5.5, 2.0}, g32);
  CHECK(a.ix == 28);
  CHECK(a.iy == 10);
  CHECK(a.node == 348);

  const chj::ResolvedProbe origin = chj::resolve({0.0, 0.0}, g32);
  CHECK(origin.node == 0);

  const chj::GridSpec g128{128, 128};
  const chj::ResolvedProbe b = chj::resolve({5.5, 2.0}, g128);
  CHECK(b.ix == 112);
  CHECK(b.iy == 41);
  CHECK(b.node == 5360);

  const chj::GridSpec g8{8, 8};
  const chj::ResolvedProbe tie = chj::resolve({1.5 * g8.dx(), 0.0}, g8);
  CHECK(tie.ix == 1);  // exact midpoints stay at the lower node
  const chj::ResolvedProbe wrapped = chj::resolve({-g8.dx(), 2.0 * g8.box_length}, g8);
  CHECK(wrapped.ix == 7);
  CHECK(wrapped.iy == 0);
}

TEST_CASE("global relative error") {
  const chj::GridSpec g{4, 4};
  chj::ScalarField ref(g), approx(g);
  for (std::size_t i = 0; i < g.size(); ++i) ref.values[i] = 2.0;
  approx = ref;
  approx.values[0] = 2.0 + 8.0;  // diff norm 8, ref norm sqrt(16*4) = 8
  CHECK(chj::global_rel_error(approx, ref) == doctest::Approx(1.0).epsilon(1e-15));

  const chj::ScalarField zero(g);
  CHECK_THROWS_AS(chj::global_rel_error(approx, zero), std::domain_error);
  const chj::ScalarField other(chj::GridSpec{8, 4});
  CHECK_THROWS_AS(chj::global_rel_error(approx, other), std::invalid_argument);
}

TEST_CASE("local relative error") {
  const chj::GridSpec g{8, 8};
  chj::ScalarField ref(g), approx(g);
  ref.at(3, 2) = 4.0;
  approx.at(3, 2) = 5.0;
  const chj::Probe p{3.0 * g.dx(), 2.0 * g.dy()};
  const std::optional<double> e = chj::local_rel_error(approx, ref, p);
  REQUIRE(e.has_value());
  CHECK(*e == doctest::Approx(0.25).epsilon(1e-15));

  const chj::Probe elsewhere{0.0, 0.0};  // reference is exactly zero there
  CHECK_FALSE(chj::local_rel_error(approx, ref, elsewhere).has_value());
}

TEST_CASE("psi norm is the product of the first two component norms") {
  const chj::GridSpec g{4, 4};
  const std::size_t dim = 4 * g.size();

  chj::TNState st;
  st.spec = g;
  st.order = 2;
  st.j1.assign(dim, 0.0);
  st.j1[0] = 3.0;
  st.j1[1] = 4.0;  // ||j1|| = 5
  chj::RankOneTerm t;
  t.weight = 2.0;
  t.order = 2;
  t.data.assign(2 * dim, 0.0);
  t.factor(0, dim)[2] = 3.0;  // norm 3
  t.factor(1, dim)[5] = 4.0;  // norm 4
  st.j2.order = 2;
  st.j2.terms = {t};
  CHECK(chj::psi_norm(st) == doctest::Approx(5.0 * 2.0 * 3.0 * 4.0).epsilon(1e-14));

  chj::DenseCarlemanState ds;
  ds.spec = g;
  ds.order = 2;
  ds.comp.resize(2);
  ds.comp[0].assign(dim, 0.0);
  ds.comp[0][0] = 5.0;
  ds.comp[1].assign(dim * dim, 0.0);
  ds.comp[1][7] = 2.0;
  CHECK(chj::psi_norm(ds) == doctest::Approx(10.0).epsilon(1e-14));

  chj::DenseCarlemanState bad;
  bad.spec = g;
  bad.order = 1;
  bad.comp.resize(1);
  CHECK_THROWS_AS(chj::psi_norm(bad), std::invalid_argument);
}

TEST_CASE("error series validation") {
  chj::ErrorSeries s;
  s.label = "x";
  s.times = {0.0, 0.1, 0.2};
  s.values = {1.0, 2.0, 3.0};
  CHECK_NOTHROW(s.validate());
  s.values.pop_back();
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.values = {1.0, 2.0, 3.0};
  s.times = {0.0, 0.2, 0.2};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("decay reference") {
  const std::vector<double> times{0.0, 1.0, 6.0};
  const chj::ErrorSeries s = chj::decay_reference(1.0, 1.0 / 6.0, times);
  CHECK(s.label == "decay_reference");
  REQUIRE(s.values.size() == 3);
  CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.values[1] == doctest::Approx(std::exp(-1.0 / 6.0)).epsilon(1e-15));
  CHECK(s.values[2] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(chj::decay_reference(1.0, -0.5, times), std::invalid_argument);
}

TEST_CASE("l2 norm and the error threshold constant") {
  CHECK(chj::l2_norm({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(chj::kErrorThreshold == 1e-3);
}

}  // TEST_SUITE
