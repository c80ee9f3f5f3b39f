#include "chj/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace chj {

namespace {

int nearest_index(double pos, double spacing, int n) {
  double q = std::fmod(pos / spacing, static_cast<double>(n));
  if (q < 0.0) q += n;
  int lo = static_cast<int>(std::floor(q));
  if (lo >= n) lo -= n;
  const double frac = q - lo;
  int idx = (frac > 0.5) ? lo + 1 : lo;
  if (idx >= n) idx -= n;
  return idx;
}

}  // namespace

ResolvedProbe resolve(const Probe& p, const GridSpec& spec) {
  spec.validate();
  ResolvedProbe r;
  r.ix = nearest_index(p.x, spec.dx(), spec.nx);
  r.iy = nearest_index(p.y, spec.dy(), spec.ny);
  r.node = spec.index(r.ix, r.iy);
  return r;
}

double global_rel_error(const ScalarField& f_approx, const ScalarField& f_ref) {
  if (!(f_approx.spec == f_ref.spec)) {
    throw std::invalid_argument("global_rel_error: fields on different grids");
  }
  double diff_sq = 0.0, ref_sq = 0.0;
  for (std::size_t i = 0; i < f_ref.values.size(); ++i) {
    const double d = f_approx.values[i] - f_ref.values[i];
    diff_sq += d * d;
    ref_sq += f_ref.values[i] * f_ref.values[i];
  }
  if (ref_sq == 0.0) {
    throw std::domain_error("global_rel_error: reference field has zero norm");
  }
  return std::sqrt(diff_sq) / std::sqrt(ref_sq);
}

std::optional<double> local_rel_error(const ScalarField& f_approx, const ScalarField& f_ref,
                                      const Probe& p) {
  if (!(f_approx.spec == f_ref.spec)) {
    throw std::invalid_argument("local_rel_error: fields on different grids");
  }
  const ResolvedProbe r = resolve(p, f_ref.spec);
  const double ref = f_ref.values[r.node];
  if (std::abs(ref) < 1e-14) return std::nullopt;
  return std::abs(f_approx.values[r.node] - ref) / std::abs(ref);
}

double psi_norm(const TNState& st) {
  return l2_norm(st.j1) * factor_list_norm(st.j2, st.spec);
}

double psi_norm(const DenseCarlemanState& st) {
  if (st.order < 2) throw std::invalid_argument("psi_norm: order must be at least 2");
  return l2_norm(st.comp[0]) * l2_norm(st.comp[1]);
}

void ErrorSeries::validate() const {
  if (times.size() != values.size()) {
    throw std::invalid_argument("ErrorSeries: times/values length mismatch");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("ErrorSeries: times must be strictly increasing");
    }
  }
}

ErrorSeries decay_reference(double k, double nu, const std::vector<double>& times) {
  if (nu < 0.0) throw std::invalid_argument("decay_reference: nu must be non-negative");
  ErrorSeries s;
  s.label = "decay_reference";
  s.times = times;
  s.values.reserve(times.size());
  for (double t : times) s.values.push_back(std::exp(-k * k * nu * t));
  return s;
}

double l2_norm(const std::vector<double>& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

}  // namespace chj
