#pragma once

#include <string>
#include <utility>

#include "chj/carleman_ops.hpp"

namespace chj {

/// Sub-normalization factors of the two block encodings in one update.
struct Alphas {
  double m1 = 1.0;
  double m2 = 1.0;
};

/// Closed-form bounds on the largest matrix elements: (mu over A-I, mu over B).
std::pair<double, double> mu_bounds(const SimParams& p, const GridSpec& spec);

/// alpha_M1 = 1 + 35*max(mu_a, mu_b); alpha_M2 = (1 + 10*mu_a)^2.
Alphas alphas(double mu_a, double mu_b);

/// p_s = norm_next^2 / (alpha_M1^2 * alpha_M2^2), clamped to [0, 1].
/// `clamped`, when given, is set if the raw ratio exceeded 1. Negative norms throw.
double success_probability(double norm_next, const Alphas& a, bool* clamped = nullptr);

/// Scalar resource estimate plus measured operator statistics for transparency.
struct ResourceReport {
  double mu_a = 0.0;
  double mu_b = 0.0;
  double alpha_m1 = 1.0;
  double alpha_m2 = 1.0;
  double alpha_total_sq = 1.0;  ///< (alpha_M1 * alpha_M2)^2
  int ancillas = 9;
  double p_s = 0.0;
  bool p_s_clamped = false;
  double measured_max_a = 0.0;         ///< largest |entry| of the assembled A - I
  double measured_max_b = 0.0;         ///< largest |entry| of the assembled (ordered) B
  std::size_t row_sparsity_a = 0;      ///< max nonzeros in a row of A - I
  std::size_t col_sparsity_a = 0;
  std::size_t row_sparsity_b = 0;
  std::size_t col_sparsity_b = 0;
};

/// Assembles the operators for (spec, p), scans them, and combines the closed forms.
/// `psi_norm_next` is the post-step composite norm feeding the success probability.
ResourceReport resource_report(const GridSpec& spec, const SimParams& p,
                               double psi_norm_next);

/// Aligned human-readable rendering.
std::string resource_report_text(const ResourceReport& r);

/// Single-row CSV rendering (with header line).
std::string resource_report_csv(const ResourceReport& r);

}  // namespace chj
