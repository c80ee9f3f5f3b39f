#include "chj/carleman_dense.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace chj {

namespace {

Csr csr_from_linear(const LinearOperator4G& op) {
  const std::size_t n = 4 * op.spec.size();
  std::vector<Triplet> tri = linear_triplets(op);
  Csr a;
  a.n = n;
  a.rowptr.assign(n + 1, 0);
  // linear_triplets is sorted by (row, col); walk it once per row merging in the unit diagonal.
  std::size_t k = 0;
  for (std::size_t r = 0; r < n; ++r) {
    bool diag_done = false;
    while (k < tri.size() && tri[k].row == r) {
      if (!diag_done && tri[k].col >= r) {
        if (tri[k].col == r) {
          a.col.push_back(r);
          a.val.push_back(1.0 + tri[k].value);
          ++k;
        } else {
          a.col.push_back(r);
          a.val.push_back(1.0);
        }
        diag_done = true;
        continue;
      }
      a.col.push_back(tri[k].col);
      a.val.push_back(tri[k].value);
      ++k;
    }
    if (!diag_done) {
      a.col.push_back(r);
      a.val.push_back(1.0);
    }
    a.rowptr[r + 1] = a.col.size();
  }
  return a;
}

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// t <- (A along `mode`) t for an order-`order` tensor with all dims `dim`.
void mode_apply(const Csr& a, std::vector<double>& t, int order, int mode, std::size_t dim,
                std::vector<double>& scratch) {
  const std::size_t stride = ipow(dim, order - 1 - mode);
  const std::size_t outer = ipow(dim, mode);
  scratch.assign(t.size(), 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * dim * stride;
    for (std::size_t i = 0; i < dim; ++i) {
      double* orow = scratch.data() + base + i * stride;
      for (std::size_t k = a.rowptr[i]; k < a.rowptr[i + 1]; ++k) {
        const double v = a.val[k];
        const double* irow = t.data() + base + a.col[k] * stride;
        for (std::size_t s = 0; s < stride; ++s) orow[s] += v * irow[s];
      }
    }
  }
  t.swap(scratch);
}

// Contracts adjacent modes (k, k+1) of an order-`order` tensor through dt*B.
std::vector<double> contract_pair(const CarlemanOps& ops, const std::vector<double>& t,
                                  int order, int mode) {
  const std::size_t g = ops.spec.size();
  const std::size_t dim = 4 * g;
  const std::size_t prefix = ipow(dim, mode);
  const std::size_t suffix = ipow(dim, order - 2 - mode);
  std::vector<double> out(ipow(dim, order - 1), 0.0);
  const double dt = ops.params.dt;
  for (const QuadTerm& term : ops.b.terms) {
    for (std::size_t i = 0; i < g; ++i) {
      const std::size_t trg = static_cast<std::size_t>(term.target) * g + i;
      for (const StencilEntry& le : stencil_row(term.op_left, ops.spec, i)) {
        const std::size_t acol = static_cast<std::size_t>(term.src_left) * g + le.col;
        for (const StencilEntry& re : stencil_row(term.op_right, ops.spec, i)) {
          const std::size_t bcol = static_cast<std::size_t>(term.src_right) * g + re.col;
          const double c = dt * term.coeff * le.value * re.value;
          for (std::size_t p = 0; p < prefix; ++p) {
            const double* irow = t.data() + ((p * dim + acol) * dim + bcol) * suffix;
            double* orow = out.data() + (p * dim + trg) * suffix;
            for (std::size_t s = 0; s < suffix; ++s) orow[s] += c * irow[s];
          }
        }
      }
    }
  }
  return out;
}

// out += (tensor of kvec at `mask` slots) x (X spread over the remaining slots).
void add_k_pattern(std::vector<double>& out, int m, unsigned mask,
                   const std::vector<double>& x, const std::vector<double>& kvec,
                   std::size_t dim) {
  // Recursive walk over output slots carrying the partial kvec product and X offset.
  struct Walker {
    std::vector<double>& out;
    const std::vector<double>& x;
    const std::vector<double>& kvec;
    std::size_t dim;
    int m;
    unsigned mask;

    void walk(int slot, std::size_t out_base, std::size_t x_base, double coeff) {
      const bool is_k = (mask >> slot) & 1u;
      if (slot == m - 1) {
        double* orow = out.data() + out_base * dim;
        if (is_k) {
          const double c = coeff * x[x_base];
          for (std::size_t s = 0; s < dim; ++s) orow[s] += c * kvec[s];
        } else {
          const double* xrow = x.data() + x_base * dim;
          for (std::size_t s = 0; s < dim; ++s) orow[s] += coeff * xrow[s];
        }
        return;
      }
      for (std::size_t s = 0; s < dim; ++s) {
        if (is_k) {
          if (kvec[s] != 0.0) walk(slot + 1, out_base * dim + s, x_base, coeff * kvec[s]);
        } else {
          walk(slot + 1, out_base * dim + s, x_base * dim + s, coeff);
        }
      }
    }
  };
  Walker w{out, x, kvec, dim, m, mask};
  w.walk(0, 0, 0, 1.0);
}

bool all_zero(const std::vector<double>& v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

}  // namespace

CarlemanOps build_ops(const GridSpec& spec, const SimParams& params) {
  CarlemanOps ops;
  ops.spec = spec;
  ops.params = params;
  ops.a = build_linear(spec, params);
  ops.b = build_quadratic(spec, params);
  ops.a_csr = csr_from_linear(ops.a);
  ops.k_vec.assign(4 * spec.size(), 0.0);
  const double k = gauge_constant(ops.a);
  if (k != 0.0) {
    const std::size_t g = spec.size();
    for (std::size_t i = 0; i < g; ++i) ops.k_vec[field_chi * g + i] = k;
  }
  return ops;
}

DenseCarlemanState lift(const FluidState& s, int order, std::size_t memory_budget_bytes) {
  if (order < 1) throw std::invalid_argument("lift: order must be at least 1");
  s.validate();
  const std::size_t dim = 4 * s.spec().size();
  std::size_t total = 0;
  for (int m = 1; m <= order; ++m) {
    const std::size_t entries = ipow(dim, m);
    if (entries > (std::size_t(1) << 62) / sizeof(double) - total) {
      throw std::runtime_error("lift: component sizes overflow");
    }
    total += entries;
  }
  if (total * sizeof(double) > memory_budget_bytes) {
    throw std::runtime_error("lift: dense components need " + std::to_string(total) +
                             " doubles (" + std::to_string(total * sizeof(double)) +
                             " bytes), above the budget of " +
                             std::to_string(memory_budget_bytes) + " bytes");
  }
  DenseCarlemanState st;
  st.spec = s.spec();
  st.order = order;
  st.comp.resize(order);
  st.comp[0] = flatten(s);
  for (int m = 2; m <= order; ++m) {
    const std::vector<double>& prev = st.comp[m - 2];
    std::vector<double>& cur = st.comp[m - 1];
    cur.resize(prev.size() * dim);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      const double pv = prev[i];
      double* row = cur.data() + i * dim;
      for (std::size_t j = 0; j < dim; ++j) row[j] = pv * st.comp[0][j];
    }
  }
  return st;
}

void dense_step(DenseCarlemanState& st, const CarlemanOps& ops) {
  const int n = st.order;
  const std::size_t dim = 4 * ops.spec.size();
  const bool gauged = !all_zero(ops.k_vec);
  std::vector<double> scratch;

  // a_all[q] = A applied to every mode of the old component of order q+1.
  std::vector<std::vector<double>> a_all(n);
  for (int q = 0; q < n; ++q) {
    a_all[q] = st.comp[q];
    for (int mode = 0; mode <= q; ++mode) mode_apply(ops.a_csr, a_all[q], q + 1, mode, dim, scratch);
  }

  std::vector<std::vector<double>> fresh(n);
  for (int m = 1; m <= n; ++m) {
    std::vector<double>& out = fresh[m - 1];
    out = a_all[m - 1];
    // Mixed A/B placements drawing on the higher old components.
    for (int j = 1; m + j <= n; ++j) {
      if (j > m) break;
      const unsigned top = 1u << m;
      for (unsigned mask = 0; mask < top; ++mask) {
        if (__builtin_popcount(mask) != j) continue;
        std::vector<double> tmp = st.comp[m + j - 1];
        int before = 0;
        for (int s = 0; s < m; ++s) {
          const bool is_b = (mask >> s) & 1u;
          if (!is_b) mode_apply(ops.a_csr, tmp, m + j, s + before, dim, scratch);
          if (is_b) ++before;
        }
        int cur = m + j;
        for (int s = m - 1; s >= 0; --s) {
          if (!((mask >> s) & 1u)) continue;
          int b_before = 0;
          for (int q = 0; q < s; ++q) b_before += (mask >> q) & 1u;
          tmp = contract_pair(ops, tmp, cur, s + b_before);
          --cur;
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += tmp[i];
      }
    }
    // Gauge placements: kvec on a nonempty slot subset, A-evolved lower component elsewhere.
    if (gauged) {
      const unsigned top = 1u << m;
      for (unsigned mask = 1; mask < top; ++mask) {
        const int k = __builtin_popcount(mask);
        if (k == m) {
          static const std::vector<double> unit{1.0};
          add_k_pattern(out, m, mask, unit, ops.k_vec, dim);
        } else {
          add_k_pattern(out, m, mask, a_all[m - k - 1], ops.k_vec, dim);
        }
      }
    }
  }
  st.comp = std::move(fresh);
}

}  // namespace chj
