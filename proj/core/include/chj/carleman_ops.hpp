#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "chj/nshj.hpp"
#include "chj/state.hpp"

namespace chj {

/// One stencil contribution coeff * op inside a 4x4 block operator.
struct ScaledStencil {
  StencilOp op;
  double coeff;
};

/// Linear part of the lifted update: A = I + dt * Atilde, stored blockwise over fields.
struct LinearOperator4G {
  GridSpec spec;
  SimParams params;
  std::array<std::array<std::vector<ScaledStencil>, kNumFields>, kNumFields> blocks;
};

/// Builds A for the discrete NSHJ update linearised about the rest state.
LinearOperator4G build_linear(const GridSpec& spec, const SimParams& params);

/// Constant forcing level added to every chi node each step (dt*cs2 when the gauge shift is on).
double gauge_constant(const LinearOperator4G& op);

/// out = A * in; `in` and `out` are 4G vectors and must not alias.
void apply_linear(const LinearOperator4G& op, const double* in, double* out);

/// out = A * in + dt*K, the affine single-factor update including the gauge forcing.
void apply_affine(const LinearOperator4G& op, const double* in, double* out);

/// One entry of the sparse matrix A - I = dt * Atilde over 4G unknowns.
struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Merged, deterministic entries of A - I sorted by (row, col).
std::vector<Triplet> linear_triplets(const LinearOperator4G& op);

/// One bilinear term coeff * (op_left f_left) * (op_right f_right) feeding `target`.
struct QuadTerm {
  Field target;
  Field src_left;
  Field src_right;
  StencilOp op_left;
  StencilOp op_right;
  double coeff;
};

/// Bilinear update table B with a precomputed stencil-slot application plan.
struct QuadTermTable {
  std::vector<QuadTerm> terms;
  std::vector<std::pair<StencilOp, Field>> slots_left;   ///< distinct (op, field) on the left operand
  std::vector<std::pair<StencilOp, Field>> slots_right;  ///< distinct (op, field) on the right operand
  std::vector<int> slot_left_of;                         ///< term index -> slots_left index
  std::vector<int> slot_right_of;                        ///< term index -> slots_right index

  /// Rebuilds the slot plan from `terms`.
  void build_plan();
};

/// Ground-truth bilinear table read off the discrete NSHJ update (ordered, unsymmetrised).
QuadTermTable canonical_quad_table();

/// Symmetrised runtime table: B(u, w) = B(w, u) and B(j, j) matches the canonical table.
QuadTermTable build_quadratic(const GridSpec& spec, const SimParams& params);

/// Reusable scratch buffers for apply_quad_pair.
struct QuadWorkspace {
  std::vector<double> left;
  std::vector<double> right;
};

/// out += scale * dt * B(u, w); u, w, out are 4G vectors. Accumulation order is fixed.
void apply_quad_pair(const QuadTermTable& table, const GridSpec& spec, double dt,
                     const double* u, const double* w, double* out, double scale,
                     QuadWorkspace& ws);

/// One entry of the induced 4G x (4G)^2 matrix; col = (beta*G+p)*(4G) + (gamma*G+q).
struct QuadTriplet {
  std::size_t row;
  std::uint64_t col;
  double value;
};

/// Merged, deterministic entries of dt * B for `table`, sorted by (row, col).
std::vector<QuadTriplet> quad_triplets(const QuadTermTable& table, const GridSpec& spec,
                                       double dt);

/// One disagreement between the derived bilinear table and the transcribed appendix table.
struct Discrepancy {
  Field target;
  Field field_a;
  StencilOp op_a;
  Field field_b;
  StencilOp op_b;
  double coeff_derived;
  double coeff_appendix;
};

/// All coefficient-level differences between the derived and transcribed tables.
struct DiscrepancyReport {
  std::vector<Discrepancy> entries;

  bool empty() const { return entries.empty(); }
  /// Human-readable multi-line summary.
  std::string text() const;
};

/// Transcribed literal bilinear table of the published block matrices B1..B4.
QuadTermTable appendix_quad_table();

/// Compares the derived table against the transcribed appendix table after canonicalisation.
DiscrepancyReport verify_appendix_matrices();

/// Printable name of a stencil op ("I", "Dx", "Dy", "Dxx", "Dyy", "Dxy", "L").
std::string op_name(StencilOp op);

/// Printable name of a field block ("rho", "chi", "ax", "ay").
std::string field_name(Field f);

}  // namespace chj
