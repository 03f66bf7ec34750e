#include "qphase/moments.hpp"

#include <cmath>

#include "qphase/errors.hpp"
#include "qphase/special.hpp"

namespace qphase {

double normally_ordered_moment(const FockState& state, int j, int k) {
  if (j < 0 || k < 0) {
    throw DimensionError("operator orders must be non-negative");
  }
  const Eigen::ArrayXd& c = state.amplitudes();
  const Eigen::Index len = c.size() - std::max(j, k);
  if (len <= 0) return 0.0;  // no amplitude reaches photon number max(j,k)

  // Fixed ascending-n accumulation: results do not depend on the vector
  // length beyond the support, so padding a state with zero amplitudes
  // leaves every moment bit-identical.
  double acc = 0.0;
  for (Eigen::Index n = 0; n < len; ++n) {
    const double w = special::sqrt_factorial_ratio(n, j) *
                     special::sqrt_factorial_ratio(n, k);
    acc += c[n + j] * c[n + k] * w;
  }
  return acc;
}

double mean_photon(const FockState& state) {
  return normally_ordered_moment(state, 1, 1);
}

double photon_variance(const FockState& state) {
  const double n1 = normally_ordered_moment(state, 1, 1);
  return normally_ordered_moment(state, 2, 2) + n1 - n1 * n1;
}

double amplitude_moment(const FockState& state, int k) {
  if (k != 1 && k != 2) {
    throw DimensionError("amplitude_moment supports k = 1 or 2");
  }
  return normally_ordered_moment(state, 0, k);
}

double moment_tail_bound(const FockState& state, int j, int k) {
  if (state.residual_mass() == 0.0) return 0.0;
  const double nj = static_cast<double>(state.n_max() + j);
  const double nk = static_cast<double>(state.n_max() + k);
  return state.residual_mass() *
         std::sqrt(std::pow(nj, j) * std::pow(nk, k));
}

MomentSet compute_moments(const FockState& state,
                          std::span<const int> higher_orders) {
  MomentSet m;
  m.mean_a = normally_ordered_moment(state, 0, 1);
  m.mean_a2 = normally_ordered_moment(state, 0, 2);
  m.n_mean = normally_ordered_moment(state, 1, 1);
  m.n2_normord = normally_ordered_moment(state, 2, 2);
  for (int l : higher_orders) {
    m.higher[l] = normally_ordered_moment(state, l, l);
  }
  return m;
}

}  // namespace qphase
