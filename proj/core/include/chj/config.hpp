#pragma once

#include <string>
#include <vector>

#include "chj/metrics.hpp"
#include "chj/nshj.hpp"

namespace chj {

/// Initial-condition parameters (shear flow: rho=1, chi=0, ax=ux*cos(kx*y), ay=uy*cos(ky*x)).
struct IcConfig {
  std::string kind = "kolmogorov";
  double ux = 0.1;
  double uy = 0.1;
  double kx = 1.0;
  double ky = 1.0;
};

/// Which lifted evolutions to run alongside the reference solver.
struct CarlemanConfig {
  std::vector<int> orders;  ///< subset of {2,3,4}
  std::string backend = "tn";
  double compress_tol = 0.0;
};

/// Full description of one experiment; see the repository docs for the file grammar.
struct RunConfig {
  GridSpec grid{32, 32};
  SimParams params;
  IcConfig ic;
  CarlemanConfig carleman;
  std::vector<Probe> probes;
  std::string output_dir = "out";
  double k_dominant = 0.0;  ///< wavenumber defining the decay time; 0 means use ic.ky

  double dominant_k() const { return k_dominant > 0.0 ? k_dominant : ic.ky; }

  /// Throws std::invalid_argument on any out-of-contract field.
  void validate() const;
};

/// Parses the key = value / [section] grammar; throws std::runtime_error with a line number.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file.
RunConfig load_config_file(const std::string& path);

/// Canonical textual rendering; parse_config(render_config(c)) reproduces c.
std::string render_config(const RunConfig& cfg);

}  // namespace chj
