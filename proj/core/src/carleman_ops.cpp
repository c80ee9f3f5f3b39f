#include "chj/carleman_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <stdexcept>

namespace chj {

LinearOperator4G build_linear(const GridSpec& spec, const SimParams& params) {
  spec.validate();
  params.validate();
  LinearOperator4G op;
  op.spec = spec;
  op.params = params;
  const double nu = params.nu;
  // rho row: pure transport, no linear part about the rest state.
  op.blocks[field_chi][field_rho] = {{StencilOp::identity, -params.cs2}};
  op.blocks[field_chi][field_chi] = {{StencilOp::laplacian, nu}};
  op.blocks[field_chi][field_ax] = {{StencilOp::dx, nu}};
  op.blocks[field_chi][field_ay] = {{StencilOp::dy, nu}};
  op.blocks[field_ax][field_ax] = {{StencilOp::dyy, nu}};
  op.blocks[field_ax][field_ay] = {{StencilOp::dxy, -nu}};
  op.blocks[field_ay][field_ax] = {{StencilOp::dxy, -nu}};
  op.blocks[field_ay][field_ay] = {{StencilOp::dxx, nu}};
  return op;
}

double gauge_constant(const LinearOperator4G& op) {
  return op.params.gauge_shift ? op.params.dt * op.params.cs2 : 0.0;
}

void apply_linear(const LinearOperator4G& op, const double* in, double* out) {
  const std::size_t g = op.spec.size();
  std::memcpy(out, in, 4 * g * sizeof(double));
  std::vector<double> scratch(g);
  const double dt = op.params.dt;
  for (int r = 0; r < kNumFields; ++r) {
    double* orow = out + static_cast<std::size_t>(r) * g;
    for (int c = 0; c < kNumFields; ++c) {
      const double* icol = in + static_cast<std::size_t>(c) * g;
      for (const ScaledStencil& ss : op.blocks[r][c]) {
        const double w = dt * ss.coeff;
        if (ss.op == StencilOp::identity) {
          for (std::size_t i = 0; i < g; ++i) orow[i] += w * icol[i];
        } else {
          apply_stencil(ss.op, op.spec, icol, scratch.data());
          for (std::size_t i = 0; i < g; ++i) orow[i] += w * scratch[i];
        }
      }
    }
  }
}

void apply_affine(const LinearOperator4G& op, const double* in, double* out) {
  apply_linear(op, in, out);
  const double k = gauge_constant(op);
  if (k != 0.0) {
    const std::size_t g = op.spec.size();
    double* chi = out + static_cast<std::size_t>(field_chi) * g;
    for (std::size_t i = 0; i < g; ++i) chi[i] += k;
  }
}

std::vector<Triplet> linear_triplets(const LinearOperator4G& op) {
  const std::size_t g = op.spec.size();
  const double dt = op.params.dt;
  std::vector<Triplet> out;
  for (int r = 0; r < kNumFields; ++r) {
    for (int c = 0; c < kNumFields; ++c) {
      for (const ScaledStencil& ss : op.blocks[r][c]) {
        for (std::size_t i = 0; i < g; ++i) {
          for (const StencilEntry& e : stencil_row(ss.op, op.spec, i)) {
            const double v = dt * ss.coeff * e.value;
            if (v != 0.0) out.push_back({r * g + i, c * g + e.col, v});
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<Triplet> merged;
  for (const Triplet& t : out) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Triplet& t) { return t.value == 0.0; }),
               merged.end());
  return merged;
}

void QuadTermTable::build_plan() {
  slots_left.clear();
  slots_right.clear();
  slot_left_of.assign(terms.size(), -1);
  slot_right_of.assign(terms.size(), -1);
  auto slot_of = [](std::vector<std::pair<StencilOp, Field>>& slots, StencilOp op, Field f) {
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (slots[k].first == op && slots[k].second == f) return static_cast<int>(k);
    }
    slots.emplace_back(op, f);
    return static_cast<int>(slots.size() - 1);
  };
  for (std::size_t t = 0; t < terms.size(); ++t) {
    slot_left_of[t] = slot_of(slots_left, terms[t].op_left, terms[t].src_left);
    slot_right_of[t] = slot_of(slots_right, terms[t].op_right, terms[t].src_right);
  }
}

QuadTermTable canonical_quad_table() {
  QuadTermTable table;
  const StencilOp I = StencilOp::identity;
  const StencilOp Dx = StencilOp::dx;
  const StencilOp Dy = StencilOp::dy;
  const StencilOp L = StencilOp::laplacian;
  table.terms = {
      // rho update: -(Dx rho) vx - (Dy rho) vy - rho (Dx vx + Dy vy), with v = grad(chi) + A.
      {field_rho, field_rho, field_chi, Dx, Dx, -1.0},
      {field_rho, field_rho, field_ax, Dx, I, -1.0},
      {field_rho, field_rho, field_chi, Dy, Dy, -1.0},
      {field_rho, field_rho, field_ay, Dy, I, -1.0},
      {field_rho, field_rho, field_chi, I, L, -1.0},
      {field_rho, field_rho, field_ax, I, Dx, -1.0},
      {field_rho, field_rho, field_ay, I, Dy, -1.0},
      // chi update: -(vx^2 + vy^2)/2.
      {field_chi, field_chi, field_chi, Dx, Dx, -0.5},
      {field_chi, field_chi, field_ax, Dx, I, -1.0},
      {field_chi, field_ax, field_ax, I, I, -0.5},
      {field_chi, field_chi, field_chi, Dy, Dy, -0.5},
      {field_chi, field_chi, field_ay, Dy, I, -1.0},
      {field_chi, field_ay, field_ay, I, I, -0.5},
      // ax update: +omega*vy with omega = Dx ay - Dy ax, vy = Dy chi + ay.
      {field_ax, field_ay, field_chi, Dx, Dy, 1.0},
      {field_ax, field_ay, field_ay, Dx, I, 1.0},
      {field_ax, field_ax, field_chi, Dy, Dy, -1.0},
      {field_ax, field_ax, field_ay, Dy, I, -1.0},
      // ay update: -omega*vx with vx = Dx chi + ax.
      {field_ay, field_ay, field_chi, Dx, Dx, -1.0},
      {field_ay, field_ay, field_ax, Dx, I, -1.0},
      {field_ay, field_ax, field_chi, Dy, Dx, 1.0},
      {field_ay, field_ax, field_ax, Dy, I, 1.0},
  };
  table.build_plan();
  return table;
}

QuadTermTable build_quadratic(const GridSpec& spec, const SimParams& params) {
  spec.validate();
  params.validate();
  QuadTermTable canonical = canonical_quad_table();
  QuadTermTable table;
  for (const QuadTerm& t : canonical.terms) {
    if (t.src_left == t.src_right && t.op_left == t.op_right) {
      table.terms.push_back(t);
    } else {
      table.terms.push_back({t.target, t.src_left, t.src_right, t.op_left, t.op_right,
                             0.5 * t.coeff});
      table.terms.push_back({t.target, t.src_right, t.src_left, t.op_right, t.op_left,
                             0.5 * t.coeff});
    }
  }
  table.build_plan();
  return table;
}

void apply_quad_pair(const QuadTermTable& table, const GridSpec& spec, double dt,
                     const double* u, const double* w, double* out, double scale,
                     QuadWorkspace& ws) {
  const std::size_t g = spec.size();
  ws.left.resize(table.slots_left.size() * g);
  ws.right.resize(table.slots_right.size() * g);
  for (std::size_t k = 0; k < table.slots_left.size(); ++k) {
    const auto& [op, f] = table.slots_left[k];
    apply_stencil(op, spec, u + static_cast<std::size_t>(f) * g, ws.left.data() + k * g);
  }
  for (std::size_t k = 0; k < table.slots_right.size(); ++k) {
    const auto& [op, f] = table.slots_right[k];
    apply_stencil(op, spec, w + static_cast<std::size_t>(f) * g, ws.right.data() + k * g);
  }
  for (std::size_t t = 0; t < table.terms.size(); ++t) {
    const double c = scale * dt * table.terms[t].coeff;
    const double* lv = ws.left.data() + static_cast<std::size_t>(table.slot_left_of[t]) * g;
    const double* rv = ws.right.data() + static_cast<std::size_t>(table.slot_right_of[t]) * g;
    double* orow = out + static_cast<std::size_t>(table.terms[t].target) * g;
    for (std::size_t i = 0; i < g; ++i) orow[i] += c * lv[i] * rv[i];
  }
}

std::vector<QuadTriplet> quad_triplets(const QuadTermTable& table, const GridSpec& spec,
                                       double dt) {
  const std::uint64_t g = spec.size();
  const std::uint64_t four_g = 4 * g;
  std::vector<QuadTriplet> out;
  for (const QuadTerm& t : table.terms) {
    for (std::size_t i = 0; i < g; ++i) {
      const std::size_t row = static_cast<std::size_t>(t.target) * g + i;
      for (const StencilEntry& le : stencil_row(t.op_left, spec, i)) {
        for (const StencilEntry& re : stencil_row(t.op_right, spec, i)) {
          const std::uint64_t col =
              (static_cast<std::uint64_t>(t.src_left) * g + le.col) * four_g +
              (static_cast<std::uint64_t>(t.src_right) * g + re.col);
          const double v = dt * t.coeff * le.value * re.value;
          if (v != 0.0) out.push_back({row, col, v});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const QuadTriplet& a, const QuadTriplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<QuadTriplet> merged;
  for (const QuadTriplet& t : out) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const QuadTriplet& t) { return t.value == 0.0; }),
               merged.end());
  return merged;
}

namespace {

// Canonical key of one bilinear coefficient: (target, ordered (field, op) pair).
using CanonKey = std::array<int, 5>;

void add_canonical(std::map<CanonKey, double>& acc, Field target, Field fa, StencilOp oa,
                   Field fb, StencilOp ob, double coeff) {
  // Expand composite ops so comparison happens over atomic stencils only.
  if (oa == StencilOp::laplacian) {
    add_canonical(acc, target, fa, StencilOp::dxx, fb, ob, coeff);
    add_canonical(acc, target, fa, StencilOp::dyy, fb, ob, coeff);
    return;
  }
  if (ob == StencilOp::laplacian) {
    add_canonical(acc, target, fa, oa, fb, StencilOp::dxx, coeff);
    add_canonical(acc, target, fa, oa, fb, StencilOp::dyy, coeff);
    return;
  }
  int a_f = fa, a_o = static_cast<int>(oa), b_f = fb, b_o = static_cast<int>(ob);
  if (std::make_pair(a_f, a_o) > std::make_pair(b_f, b_o)) {
    std::swap(a_f, b_f);
    std::swap(a_o, b_o);
  }
  acc[{target, a_f, a_o, b_f, b_o}] += coeff;
}

std::map<CanonKey, double> canonicalize(const QuadTermTable& table) {
  std::map<CanonKey, double> acc;
  for (const QuadTerm& t : table.terms) {
    add_canonical(acc, t.target, t.src_left, t.op_left, t.src_right, t.op_right, t.coeff);
  }
  for (auto it = acc.begin(); it != acc.end();) {
    if (std::abs(it->second) < 1e-15) {
      it = acc.erase(it);
    } else {
      ++it;
    }
  }
  return acc;
}

// Composite symbol used only while transcribing the published tables: D = Dx + Dy.
struct OpSum {
  std::vector<std::pair<StencilOp, double>> parts;
};

OpSum atom(StencilOp op) { return {{{op, 1.0}}}; }

OpSum d_sum() { return {{{StencilOp::dx, 1.0}, {StencilOp::dy, 1.0}}}; }

void add_pair(QuadTermTable& t, Field target, Field fl, const OpSum& ol, Field fr,
              const OpSum& orr, double coeff) {
  for (const auto& [lop, lc] : ol.parts) {
    for (const auto& [rop, rc] : orr.parts) {
      t.terms.push_back({target, fl, fr, lop, rop, coeff * lc * rc});
    }
  }
}

}  // namespace

QuadTermTable appendix_quad_table() {
  QuadTermTable t;
  const OpSum I = atom(StencilOp::identity);
  const OpSum Dx = atom(StencilOp::dx);
  const OpSum Dy = atom(StencilOp::dy);
  const OpSum L = atom(StencilOp::laplacian);
  const OpSum D = d_sum();
  // Target rho.
  add_pair(t, field_rho, field_rho, D, field_chi, D, -1.0);
  add_pair(t, field_rho, field_rho, I, field_chi, L, -1.0);
  add_pair(t, field_rho, field_rho, I, field_ay, Dy, -1.0);
  add_pair(t, field_rho, field_rho, Dy, field_ay, I, -1.0);
  // Target chi.
  add_pair(t, field_chi, field_chi, D, field_chi, D, -0.5);
  add_pair(t, field_chi, field_chi, D, field_ax, I, -1.0);
  add_pair(t, field_chi, field_chi, Dy, field_ay, I, -1.0);
  add_pair(t, field_chi, field_ax, I, field_ax, I, -0.5);
  add_pair(t, field_chi, field_ay, I, field_ay, I, -0.5);
  // Target ax.
  add_pair(t, field_ax, field_chi, Dy, field_ax, Dy, -1.0);
  add_pair(t, field_ax, field_chi, Dy, field_ay, Dx, 1.0);
  add_pair(t, field_ax, field_ax, Dy, field_ay, I, -1.0);
  add_pair(t, field_ax, field_ay, I, field_ay, Dx, -1.0);
  // Target ay.
  add_pair(t, field_ay, field_chi, Dx, field_ax, Dy, 1.0);
  add_pair(t, field_ay, field_chi, Dx, field_ay, Dx, -1.0);
  add_pair(t, field_ay, field_ax, Dy, field_ax, I, -1.0);
  add_pair(t, field_ay, field_ax, I, field_ay, Dx, -1.0);
  t.build_plan();
  return t;
}

DiscrepancyReport verify_appendix_matrices() {
  const auto derived = canonicalize(canonical_quad_table());
  const auto appendix = canonicalize(appendix_quad_table());
  DiscrepancyReport report;
  auto emit = [&report](const CanonKey& k, double ours, double theirs) {
    report.entries.push_back({static_cast<Field>(k[0]), static_cast<Field>(k[1]),
                              static_cast<StencilOp>(k[2]), static_cast<Field>(k[3]),
                              static_cast<StencilOp>(k[4]), ours, theirs});
  };
  auto it_d = derived.begin();
  auto it_a = appendix.begin();
  while (it_d != derived.end() || it_a != appendix.end()) {
    if (it_a == appendix.end() || (it_d != derived.end() && it_d->first < it_a->first)) {
      emit(it_d->first, it_d->second, 0.0);
      ++it_d;
    } else if (it_d == derived.end() || it_a->first < it_d->first) {
      emit(it_a->first, 0.0, it_a->second);
      ++it_a;
    } else {
      if (std::abs(it_d->second - it_a->second) > 1e-12) {
        emit(it_d->first, it_d->second, it_a->second);
      }
      ++it_d;
      ++it_a;
    }
  }
  return report;
}

std::string op_name(StencilOp op) {
  switch (op) {
    case StencilOp::identity:
      return "I";
    case StencilOp::dx:
      return "Dx";
    case StencilOp::dy:
      return "Dy";
    case StencilOp::dxx:
      return "Dxx";
    case StencilOp::dyy:
      return "Dyy";
    case StencilOp::dxy:
      return "Dxy";
    case StencilOp::laplacian:
      return "L";
  }
  return "?";
}

std::string field_name(Field f) {
  switch (f) {
    case field_rho:
      return "rho";
    case field_chi:
      return "chi";
    case field_ax:
      return "ax";
    case field_ay:
      return "ay";
  }
  return "?";
}

std::string DiscrepancyReport::text() const {
  std::string s;
  if (entries.empty()) {
    return "derived and transcribed bilinear tables agree on every coefficient\n";
  }
  s += std::to_string(entries.size()) +
       " coefficient mismatches between the derived and transcribed bilinear tables\n";
  char line[160];
  for (const Discrepancy& d : entries) {
    std::snprintf(line, sizeof(line),
                  "  target %-3s  (%s, %s) x (%s, %s): derived %+g, transcribed %+g\n",
                  field_name(d.target).c_str(), field_name(d.field_a).c_str(),
                  op_name(d.op_a).c_str(), field_name(d.field_b).c_str(),
                  op_name(d.op_b).c_str(), d.coeff_derived, d.coeff_appendix);
    s += line;
  }
  return s;
}

}  // namespace chj
