#include "chj/carleman_tn.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace chj {

namespace {

bool is_zero_vector(const double* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] != 0.0) return false;
  }
  return true;
}

RankOneTerm pure_power(const PrimaryVector& j1, int order) {
  RankOneTerm t;
  t.weight = 1.0;
  t.order = order;
  t.data.resize(static_cast<std::size_t>(order) * j1.size());
  for (int k = 0; k < order; ++k) {
    std::memcpy(t.data.data() + static_cast<std::size_t>(k) * j1.size(), j1.data(),
                j1.size() * sizeof(double));
  }
  return t;
}

// Affine-evolves every factor of every term in place.
void evolve_factors(FactorList& list, const CarlemanOps& ops, std::vector<double>& buf) {
  const std::size_t dim = 4 * ops.spec.size();
  for (RankOneTerm& t : list.terms) {
    for (int k = 0; k < t.order; ++k) {
      double* f = t.factor(k, dim);
      apply_affine(ops.a, f, buf.data());
      std::memcpy(f, buf.data(), dim * sizeof(double));
    }
  }
}

// Appends `t` unless one of its factors is exactly the zero vector.
void push_spawn(FactorList& list, RankOneTerm&& t, std::size_t dim) {
  for (int k = 0; k < t.order; ++k) {
    if (is_zero_vector(t.factor(k, dim), dim)) return;
  }
  list.terms.push_back(std::move(t));
}

}  // namespace

TNState tn_lift(const FluidState& s, int order) {
  if (order < 2 || order > 4) {
    throw std::invalid_argument("tn_lift: order must be 2, 3, or 4");
  }
  s.validate();
  TNState st;
  st.spec = s.spec();
  st.order = order;
  st.j1 = flatten(s);
  st.j2.order = 2;
  st.j2.terms = {pure_power(st.j1, 2)};
  if (order >= 3) {
    st.j3.order = 3;
    st.j3.terms = {pure_power(st.j1, 3)};
  }
  if (order >= 4) {
    st.j4.order = 4;
    st.j4.terms = {pure_power(st.j1, 4)};
  }
  return st;
}

void tn_step(TNState& st, const CarlemanOps& ops, const TnOptions& opts) {
  if (st.order < 2 || st.order > 4) {
    throw std::invalid_argument("tn_step: order must be 2, 3, or 4");
  }
  const std::size_t dim = 4 * ops.spec.size();
  const double dt = ops.params.dt;
  const int n = st.order;
  QuadWorkspace ws;
  std::vector<double> buf(dim);

  // j1 first, from the old j1 and the old j2 list (term order fixed for reproducibility).
  {
    std::vector<double> j1_new(dim, 0.0);
    apply_affine(ops.a, st.j1.data(), j1_new.data());
    for (const RankOneTerm& t : st.j2.terms) {
      apply_quad_pair(ops.b, ops.spec, dt, t.factor(0, dim), t.factor(1, dim), j1_new.data(),
                      t.weight, ws);
    }
    st.j1 = std::move(j1_new);
  }

  // j2: evolve existing terms, then spawn from the still-unevolved j3/j4.
  evolve_factors(st.j2, ops, buf);
  if (n >= 3) {
    st.j2.terms.reserve(st.j2.terms.size() + 2 * st.j3.terms.size() +
                        (n >= 4 ? st.j4.terms.size() : 0));
    for (const RankOneTerm& t : st.j3.terms) {
      RankOneTerm a;
      a.weight = t.weight;
      a.order = 2;
      a.data.assign(2 * dim, 0.0);
      apply_quad_pair(ops.b, ops.spec, dt, t.factor(0, dim), t.factor(1, dim),
                      a.factor(0, dim), 1.0, ws);
      apply_affine(ops.a, t.factor(2, dim), a.factor(1, dim));
      push_spawn(st.j2, std::move(a), dim);

      RankOneTerm b;
      b.weight = t.weight;
      b.order = 2;
      b.data.assign(2 * dim, 0.0);
      apply_affine(ops.a, t.factor(0, dim), b.factor(0, dim));
      apply_quad_pair(ops.b, ops.spec, dt, t.factor(1, dim), t.factor(2, dim),
                      b.factor(1, dim), 1.0, ws);
      push_spawn(st.j2, std::move(b), dim);
    }
    if (n >= 4) {
      for (const RankOneTerm& q : st.j4.terms) {
        RankOneTerm a;
        a.weight = q.weight;
        a.order = 2;
        a.data.assign(2 * dim, 0.0);
        apply_quad_pair(ops.b, ops.spec, dt, q.factor(0, dim), q.factor(1, dim),
                        a.factor(0, dim), 1.0, ws);
        apply_quad_pair(ops.b, ops.spec, dt, q.factor(2, dim), q.factor(3, dim),
                        a.factor(1, dim), 1.0, ws);
        push_spawn(st.j2, std::move(a), dim);
      }
    }
  }

  // j3: evolve existing terms, then spawn from the still-unevolved j4.
  if (n >= 3) {
    evolve_factors(st.j3, ops, buf);
    if (n >= 4) {
      st.j3.terms.reserve(st.j3.terms.size() + 3 * st.j4.terms.size());
      for (const RankOneTerm& q : st.j4.terms) {
        for (int pos = 0; pos < 3; ++pos) {
          RankOneTerm t;
          t.weight = q.weight;
          t.order = 3;
          t.data.assign(3 * dim, 0.0);
          int in_mode = 0;
          for (int slot = 0; slot < 3; ++slot) {
            if (slot == pos) {
              apply_quad_pair(ops.b, ops.spec, dt, q.factor(in_mode, dim),
                              q.factor(in_mode + 1, dim), t.factor(slot, dim), 1.0, ws);
              in_mode += 2;
            } else {
              apply_affine(ops.a, q.factor(in_mode, dim), t.factor(slot, dim));
              in_mode += 1;
            }
          }
          push_spawn(st.j3, std::move(t), dim);
        }
      }
    }
  }

  // j4: highest component, evolves factorwise and never gains terms.
  if (n >= 4) evolve_factors(st.j4, ops, buf);

  if (opts.compress_tol > 0.0) {
    st.j2 = compress(st.j2, opts.compress_tol);
    if (n >= 3) st.j3 = compress(st.j3, opts.compress_tol);
    if (n >= 4) st.j4 = compress(st.j4, opts.compress_tol);
  }

  const std::size_t count = factor_vector_count(st);
  if (count > opts.factor_cap) {
    throw std::runtime_error("tn_step: factor-list size " + std::to_string(count) +
                             " exceeds the cap of " + std::to_string(opts.factor_cap) +
                             " vectors");
  }
}

std::vector<double> densify(const FactorList& list, const GridSpec& spec) {
  const std::size_t dim = 4 * spec.size();
  double logsize = list.order * std::log2(static_cast<double>(dim));
  if (logsize > std::log2(5e8)) {
    throw std::runtime_error("densify: tensor too large to materialize");
  }
  std::size_t total = 1;
  for (int k = 0; k < list.order; ++k) total *= dim;
  std::vector<double> out(total, 0.0);
  std::vector<double> acc, next;
  for (const RankOneTerm& t : list.terms) {
    acc.assign(1, t.weight);
    for (int k = 0; k < t.order; ++k) {
      const double* f = t.factor(k, dim);
      next.resize(acc.size() * dim);
      for (std::size_t i = 0; i < acc.size(); ++i) {
        const double a = acc[i];
        double* row = next.data() + i * dim;
        for (std::size_t j = 0; j < dim; ++j) row[j] = a * f[j];
      }
      acc.swap(next);
    }
    for (std::size_t i = 0; i < total; ++i) out[i] += acc[i];
  }
  return out;
}

double factor_list_norm(const FactorList& list, const GridSpec& spec) {
  const std::size_t dim = 4 * spec.size();
  const std::size_t nt = list.terms.size();
  double sq = 0.0;
  for (std::size_t a = 0; a < nt; ++a) {
    for (std::size_t b = a; b < nt; ++b) {
      double gram = list.terms[a].weight * list.terms[b].weight;
      for (int k = 0; k < list.order; ++k) {
        const double* fa = list.terms[a].factor(k, dim);
        const double* fb = list.terms[b].factor(k, dim);
        double dot = 0.0;
        for (std::size_t i = 0; i < dim; ++i) dot += fa[i] * fb[i];
        gram *= dot;
      }
      sq += (a == b) ? gram : 2.0 * gram;
    }
  }
  return std::sqrt(std::max(0.0, sq));
}

FactorList compress(const FactorList& list, double tol) {
  if (tol < 0.0) throw std::invalid_argument("compress: tol must be non-negative");
  if (tol == 0.0) return list;
  std::vector<double> mags(list.terms.size(), 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < list.terms.size(); ++t) {
    const RankOneTerm& term = list.terms[t];
    const std::size_t dim = term.data.size() / term.order;
    double mag = std::abs(term.weight);
    for (int k = 0; k < term.order; ++k) {
      const double* f = term.factor(k, dim);
      double nrm = 0.0;
      for (std::size_t i = 0; i < dim; ++i) nrm += f[i] * f[i];
      mag *= std::sqrt(nrm);
    }
    mags[t] = mag;
    total += mag;
  }
  FactorList out;
  out.order = list.order;
  for (std::size_t t = 0; t < list.terms.size(); ++t) {
    if (mags[t] > tol * total) out.terms.push_back(list.terms[t]);
  }
  return out;
}

std::size_t factor_vector_count(const TNState& st) {
  std::size_t count = 1;  // j1
  count += st.j2.terms.size() * 2;
  count += st.j3.terms.size() * 3;
  count += st.j4.terms.size() * 4;
  return count;
}

namespace {

double choose(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

CostReport memory_cost(int n_c, std::size_t gridpoints, int n_t) {
  if (n_c < 3 || n_c > 5) {
    throw std::invalid_argument("memory_cost: order must be 3, 4, or 5");
  }
  if (gridpoints < 1) throw std::invalid_argument("memory_cost: gridpoints must be >= 1");
  if (n_t < 0) throw std::invalid_argument("memory_cost: steps must be >= 0");
  const double four_g = 4.0 * static_cast<double>(gridpoints);

  // terms[m] = number of rank-1 terms in the order-m list; top list pinned at 1.
  double terms[6];
  for (int m = 2; m <= n_c; ++m) terms[m] = 1.0;
  for (int step = 0; step < n_t; ++step) {
    for (int m = 2; m < n_c; ++m) {
      for (int h = 1; h <= m && m + h <= n_c; ++h) {
        terms[m] += choose(m, h) * terms[m + h];
      }
    }
  }

  CostReport r;
  r.order = n_c;
  r.gridpoints = gridpoints;
  r.steps = n_t;
  r.entries_full = std::pow(four_g, n_c);
  r.entries_tn = 0.0;
  for (int m = 2; m < n_c; ++m) r.entries_tn += terms[m] * m * four_g;
  r.bytes_full = 8.0 * r.entries_full;
  r.bytes_tn = 8.0 * r.entries_tn;
  double fact = 1.0;
  for (int i = 2; i <= n_c - 2; ++i) fact *= i;
  r.entries_tn_asymptotic = std::pow(n_t * four_g, n_c - 2) * fact;
  return r;
}

}  // namespace chj
