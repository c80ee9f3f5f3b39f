#pragma once

#include <cstddef>
#include <vector>

#include "chj/carleman_ops.hpp"

namespace chj {

/// Compressed sparse rows of the full step matrix A = I + dt*Atilde over 4G unknowns.
struct Csr {
  std::size_t n = 0;
  std::vector<std::size_t> rowptr;
  std::vector<std::size_t> col;
  std::vector<double> val;
};

/// Everything needed to advance lifted states: A (block and sparse forms), B and the gauge vector.
struct CarlemanOps {
  GridSpec spec;
  SimParams params;
  LinearOperator4G a;
  QuadTermTable b;
  Csr a_csr;
  std::vector<double> k_vec;  ///< dt*K over 4G entries; all zero when the gauge shift is off.
};

/// Assembles the linear, bilinear and gauge operators for one parameter set.
CarlemanOps build_ops(const GridSpec& spec, const SimParams& params);

/// Explicit truncated Carleman state: comp[m-1] stores j^(m) of length (4G)^m, row-major.
struct DenseCarlemanState {
  GridSpec spec;
  int order = 0;
  std::vector<std::vector<double>> comp;

  /// Flattened first component j^(1).
  const std::vector<double>& j1() const { return comp.front(); }
};

/// Lifts `s` into tensor powers j^(m) = j^{(1) \otimes m}, m = 1..order.
/// Throws std::runtime_error if the components would exceed `memory_budget_bytes`.
DenseCarlemanState lift(const FluidState& s, int order,
                        std::size_t memory_budget_bytes = std::size_t(8) << 30);

/// One step of the truncated lifted system; every component updated from the old ones.
void dense_step(DenseCarlemanState& st, const CarlemanOps& ops);

}  // namespace chj
