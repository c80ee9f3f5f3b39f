#pragma once

#include <cstddef>
#include <vector>

#include "chj/carleman_dense.hpp"

namespace chj {

/// weight * (factor_0 x ... x factor_{order-1}); factors stored contiguously, never densified.
struct RankOneTerm {
  double weight = 1.0;
  int order = 0;
  std::vector<double> data;  ///< order blocks of length 4G

  double* factor(int k, std::size_t dim) { return data.data() + static_cast<std::size_t>(k) * dim; }
  const double* factor(int k, std::size_t dim) const {
    return data.data() + static_cast<std::size_t>(k) * dim;
  }
};

/// A Carleman component of order m kept as a weighted sum of rank-1 terms.
struct FactorList {
  int order = 0;
  std::vector<RankOneTerm> terms;
};

/// Lifted state for the factorized backend: dense j1, factor lists above.
struct TNState {
  GridSpec spec;
  int order = 0;
  PrimaryVector j1;
  FactorList j2;
  FactorList j3;  ///< used when order >= 3
  FactorList j4;  ///< used when order >= 4
};

/// Knobs for tn_step; compression is off by default and exists for exploratory runs only.
struct TnOptions {
  double compress_tol = 0.0;
  std::size_t factor_cap = 10'000'000;  ///< max total factor vectors across all lists
};

/// Lifts `s` into factor lists, each holding exactly one pure tensor-power term.
TNState tn_lift(const FluidState& s, int order);

/// One in-place step of the factorized truncated evolution.
///
/// Update order is fixed for reproducibility: j1 is contracted first from the old j2
/// (affine A on j1, then the j2 terms in list order), then each list evolves every factor
/// through the affine single-slot update and appends the rank-1 terms spawned by B acting
/// on adjacent factor pairs of the next-higher (still un-evolved) component. All QuadTerm
/// contributions of one B event are consolidated into a single dense factor, so each event
/// appends exactly one term; spawned terms containing an exactly zero factor are skipped
/// (they represent the zero tensor, and at the rest state this keeps term counts at 1).
void tn_step(TNState& st, const CarlemanOps& ops, const TnOptions& opts = {});

/// Materializes the represented tensor (tiny grids only; throws above ~5e8 entries).
std::vector<double> densify(const FactorList& list, const GridSpec& spec);

/// Frobenius norm of the represented tensor, via the Gram matrix of the rank-1 terms.
double factor_list_norm(const FactorList& list, const GridSpec& spec);

/// Drops terms whose weight*prod(factor norms) <= tol * (sum of those magnitudes).
/// tol = 0 returns the list unchanged.
FactorList compress(const FactorList& list, double tol);

/// Total number of stored factor vectors (terms times order, plus one for j1).
std::size_t factor_vector_count(const TNState& st);

/// Entry/byte counts for a full-tensor versus factorized representation of one run.
struct CostReport {
  int order = 0;
  std::size_t gridpoints = 0;
  int steps = 0;
  double entries_full = 0.0;
  double entries_tn = 0.0;
  double bytes_full = 0.0;
  double bytes_tn = 0.0;
  double entries_tn_asymptotic = 0.0;  ///< leading-order law (n_t*4G)^(n_c-2) * (n_c-2)!
};

/// Closed-form storage cost after n_t steps at truncation order n_c on G gridpoints.
///
/// Term counts follow the exact spawn-counting recurrence of the factorized update
/// (order m gains choose(m,h)*|terms of order m+h| terms per step for each h with
/// m+h <= n_c); the highest component always stays a single term and is excluded.
/// For n_c = 3 this reduces to the closed form (1+2*n_t)*2*(4G).
CostReport memory_cost(int n_c, std::size_t gridpoints, int n_t);

}  // namespace chj
