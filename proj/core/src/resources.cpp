#include "chj/resources.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_map>

#include "chj/csv.hpp"

namespace chj {

std::pair<double, double> mu_bounds(const SimParams& p, const GridSpec& spec) {
  p.validate();
  spec.validate();
  const double dx = spec.dx();
  const double mu_a =
      p.dt * std::max({p.cs2, 4.0 * p.nu / (dx * dx), p.nu / (2.0 * dx)});
  const double mu_b = (p.dt / dx) * std::max(4.0 / dx, 0.5);
  return {mu_a, mu_b};
}

Alphas alphas(double mu_a, double mu_b) {
  if (mu_a < 0.0 || mu_b < 0.0) throw std::invalid_argument("alphas: mu must be >= 0");
  Alphas a;
  a.m1 = 1.0 + 35.0 * std::max(mu_a, mu_b);
  a.m2 = (1.0 + 10.0 * mu_a) * (1.0 + 10.0 * mu_a);
  return a;
}

double success_probability(double norm_next, const Alphas& a, bool* clamped) {
  if (norm_next < 0.0) {
    throw std::invalid_argument("success_probability: norm must be non-negative");
  }
  const double denom = (a.m1 * a.m2) * (a.m1 * a.m2);
  double p = norm_next * norm_next / denom;
  if (clamped) *clamped = false;
  if (p > 1.0) {
    if (clamped) *clamped = true;
    p = 1.0;
  }
  return p;
}

ResourceReport resource_report(const GridSpec& spec, const SimParams& p,
                               double psi_norm_next) {
  ResourceReport r;
  std::tie(r.mu_a, r.mu_b) = mu_bounds(p, spec);
  const Alphas a = alphas(r.mu_a, r.mu_b);
  r.alpha_m1 = a.m1;
  r.alpha_m2 = a.m2;
  r.alpha_total_sq = (a.m1 * a.m2) * (a.m1 * a.m2);
  r.ancillas = 9;
  r.p_s = success_probability(psi_norm_next, a, &r.p_s_clamped);

  const LinearOperator4G lin = build_linear(spec, p);
  std::unordered_map<std::size_t, std::size_t> col_count_a;
  {
    const std::vector<Triplet> tri = linear_triplets(lin);
    std::size_t row_count = 0;
    std::size_t row = static_cast<std::size_t>(-1);
    for (const Triplet& t : tri) {
      r.measured_max_a = std::max(r.measured_max_a, std::abs(t.value));
      if (t.row != row) {
        row = t.row;
        row_count = 0;
      }
      ++row_count;
      r.row_sparsity_a = std::max(r.row_sparsity_a, row_count);
      ++col_count_a[t.col];
    }
    for (const auto& [col, n] : col_count_a) r.col_sparsity_a = std::max(r.col_sparsity_a, n);
  }
  {
    const std::vector<QuadTriplet> tri = quad_triplets(canonical_quad_table(), spec, p.dt);
    std::unordered_map<std::uint64_t, std::size_t> col_count_b;
    std::size_t row_count = 0;
    std::size_t row = static_cast<std::size_t>(-1);
    for (const QuadTriplet& t : tri) {
      r.measured_max_b = std::max(r.measured_max_b, std::abs(t.value));
      if (t.row != row) {
        row = t.row;
        row_count = 0;
      }
      ++row_count;
      r.row_sparsity_b = std::max(r.row_sparsity_b, row_count);
      ++col_count_b[t.col];
    }
    for (const auto& [col, n] : col_count_b) r.col_sparsity_b = std::max(r.col_sparsity_b, n);
  }
  return r;
}

std::string resource_report_text(const ResourceReport& r) {
  char buf[256];
  std::string s;
  auto line = [&](const char* name, const std::string& value) {
    std::snprintf(buf, sizeof(buf), "%-22s %s\n", name, value.c_str());
    s += buf;
  };
  line("mu_a", format_double(r.mu_a));
  line("mu_b", format_double(r.mu_b));
  line("alpha_m1", format_double(r.alpha_m1));
  line("alpha_m2", format_double(r.alpha_m2));
  line("alpha_total_sq", format_double(r.alpha_total_sq));
  line("ancillas", std::to_string(r.ancillas));
  line("p_s", format_double(r.p_s) + (r.p_s_clamped ? "  (clamped)" : ""));
  line("measured_max_a", format_double(r.measured_max_a));
  line("measured_max_b", format_double(r.measured_max_b));
  line("row_sparsity_a", std::to_string(r.row_sparsity_a));
  line("col_sparsity_a", std::to_string(r.col_sparsity_a));
  line("row_sparsity_b", std::to_string(r.row_sparsity_b));
  line("col_sparsity_b", std::to_string(r.col_sparsity_b));
  return s;
}

std::string resource_report_csv(const ResourceReport& r) {
  std::string s =
      "mu_a,mu_b,alpha_m1,alpha_m2,alpha_total_sq,ancillas,p_s,p_s_clamped,"
      "measured_max_a,measured_max_b,row_sparsity_a,col_sparsity_a,row_sparsity_b,"
      "col_sparsity_b\n";
  s += format_double(r.mu_a) + "," + format_double(r.mu_b) + "," +
       format_double(r.alpha_m1) + "," + format_double(r.alpha_m2) + "," +
       format_double(r.alpha_total_sq) + "," + std::to_string(r.ancillas) + "," +
       format_double(r.p_s) + "," + (r.p_s_clamped ? "1" : "0") + "," +
       format_double(r.measured_max_a) + "," + format_double(r.measured_max_b) + "," +
       std::to_string(r.row_sparsity_a) + "," + std::to_string(r.col_sparsity_a) + "," +
       std::to_string(r.row_sparsity_b) + "," + std::to_string(r.col_sparsity_b) + "\n";
  return s;
}

}  // namespace chj
