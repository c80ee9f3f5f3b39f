#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "chj/carleman_tn.hpp"
#include "chj/experiment.hpp"

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

void bm_apply_stencil(benchmark::State& state) {
  const chj::GridSpec g{32, 32};
  const chj::FluidState s = random_state(g, 1);
  std::vector<double> out(g.size());
  const auto op = static_cast<chj::StencilOp>(state.range(0));
  for (auto _ : state) {
    chj::apply_stencil(op, g, s.chi.values.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

void bm_nshj_step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const chj::GridSpec g{n, n};
  chj::SimParams p;
  chj::FluidState s = random_state(g, 2, 0.01);
  for (auto _ : state) {
    s = chj::nshj_step(s, p);
    benchmark::DoNotOptimize(s.rho.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}

void bm_apply_linear(benchmark::State& state) {
  const chj::GridSpec g{32, 32};
  chj::SimParams p;
  const chj::LinearOperator4G a = chj::build_linear(g, p);
  const chj::PrimaryVector in = chj::flatten(random_state(g, 3));
  std::vector<double> out(in.size());
  for (auto _ : state) {
    chj::apply_linear(a, in.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(in.size()));
}

void bm_apply_quad_pair(benchmark::State& state) {
  const chj::GridSpec g{32, 32};
  chj::SimParams p;
  const chj::QuadTermTable b = chj::build_quadratic(g, p);
  const chj::PrimaryVector u = chj::flatten(random_state(g, 4));
  const chj::PrimaryVector w = chj::flatten(random_state(g, 5));
  std::vector<double> out(u.size(), 0.0);
  chj::QuadWorkspace ws;
  for (auto _ : state) {
    chj::apply_quad_pair(b, g, p.dt, u.data(), w.data(), out.data(), 1.0, ws);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(u.size()));
}

void bm_tn_step(benchmark::State& state) {
  const chj::GridSpec g{16, 16};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  chj::TNState grown = chj::tn_lift(random_state(g, 6), 3);
  for (int n = 0; n < 10; ++n) chj::tn_step(grown, ops);  // 21 rank-1 terms in j2
  for (auto _ : state) {
    chj::TNState st = grown;
    chj::tn_step(st, ops);
    benchmark::DoNotOptimize(st.j1.data());
  }
}

void bm_dense_step(benchmark::State& state) {
  const chj::GridSpec g{4, 4};
  chj::SimParams p;
  const chj::CarlemanOps ops = chj::build_ops(g, p);
  chj::DenseCarlemanState st = chj::lift(random_state(g, 7), 3);
  for (auto _ : state) {
    chj::dense_step(st, ops);
    benchmark::DoNotOptimize(st.comp[0].data());
  }
}

}  // namespace

BENCHMARK(bm_apply_stencil)
    ->Arg(static_cast<int>(chj::StencilOp::dx))
    ->Arg(static_cast<int>(chj::StencilOp::laplacian));
BENCHMARK(bm_nshj_step)->Arg(32)->Arg(128);
BENCHMARK(bm_apply_linear);
BENCHMARK(bm_apply_quad_pair);
BENCHMARK(bm_tn_step);
BENCHMARK(bm_dense_step);

BENCHMARK_MAIN();
