#include "chj/state.hpp"

#include <cstring>
#include <stdexcept>

namespace chj {

void FluidState::validate() const {
  rho.spec.validate();
  if (!(chi.spec == rho.spec) || !(ax.spec == rho.spec) || !(ay.spec == rho.spec)) {
    throw std::invalid_argument("FluidState: fields live on different grids");
  }
  const std::size_t g = rho.spec.size();
  if (rho.values.size() != g || chi.values.size() != g || ax.values.size() != g ||
      ay.values.size() != g) {
    throw std::invalid_argument("FluidState: field storage does not match grid size");
  }
}

PrimaryVector flatten(const FluidState& s) {
  const std::size_t g = s.spec().size();
  PrimaryVector v(4 * g);
  std::memcpy(v.data() + field_rho * g, s.rho.values.data(), g * sizeof(double));
  std::memcpy(v.data() + field_chi * g, s.chi.values.data(), g * sizeof(double));
  std::memcpy(v.data() + field_ax * g, s.ax.values.data(), g * sizeof(double));
  std::memcpy(v.data() + field_ay * g, s.ay.values.data(), g * sizeof(double));
  return v;
}

FluidState unflatten(const PrimaryVector& v, const GridSpec& spec) {
  const std::size_t g = spec.size();
  if (v.size() != 4 * g) {
    throw std::invalid_argument("unflatten: vector length does not match 4*G");
  }
  FluidState s(spec);
  std::memcpy(s.rho.values.data(), v.data() + field_rho * g, g * sizeof(double));
  std::memcpy(s.chi.values.data(), v.data() + field_chi * g, g * sizeof(double));
  std::memcpy(s.ax.values.data(), v.data() + field_ax * g, g * sizeof(double));
  std::memcpy(s.ay.values.data(), v.data() + field_ay * g, g * sizeof(double));
  return s;
}

}  // namespace chj
