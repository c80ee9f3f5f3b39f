#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chj/carleman_tn.hpp"

namespace chj {

/// Accuracy threshold line used by the harness (the grid-resolution target).
inline constexpr double kErrorThreshold = 1e-3;

/// A physical probe position inside the periodic box.
struct Probe {
  double x = 0.0;
  double y = 0.0;
};

/// Probe snapped to its nearest grid node (ties broken toward the lower index).
struct ResolvedProbe {
  int ix = 0;
  int iy = 0;
  std::size_t node = 0;
};

ResolvedProbe resolve(const Probe& p, const GridSpec& spec);

/// ||f_approx - f_ref||_2 / ||f_ref||_2; throws std::domain_error on zero reference norm.
double global_rel_error(const ScalarField& f_approx, const ScalarField& f_ref);

/// |difference| / |reference| at the probe node; nullopt when |reference| < 1e-14.
std::optional<double> local_rel_error(const ScalarField& f_approx, const ScalarField& f_ref,
                                      const Probe& p);

/// Norm of the composite state, ||J1|| * ||J2||.
double psi_norm(const TNState& st);
double psi_norm(const DenseCarlemanState& st);

/// One labelled time series, serialized to CSV as (time, value, label) rows.
struct ErrorSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string label;

  /// Throws std::invalid_argument unless times are strictly increasing and sizes match.
  void validate() const;
};

/// exp(-k^2 nu t) sampled at `times`.
ErrorSeries decay_reference(double k, double nu, const std::vector<double>& times);

/// Plain Euclidean norm of a vector.
double l2_norm(const std::vector<double>& v);

}  // namespace chj
