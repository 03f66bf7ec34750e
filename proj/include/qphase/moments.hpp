#pragma once

#include <map>
#include <span>

#include "qphase/fock_state.hpp"

namespace qphase {

/// Normally ordered moments of one state.  `higher` maps the order l to
/// <a†^l a^l>.  For real amplitude vectors <a†> = <a>, so mean_a doubles
/// as the mean field in either order.
struct MomentSet {
  double mean_a = 0.0;      // <a>
  double mean_a2 = 0.0;     // <a^2>
  double n_mean = 0.0;      // <a†a>
  double n2_normord = 0.0;  // <a†²a²>
  std::map<int, double> higher;
};

/// <a†^j a^k> by direct summation over the retained basis,
///   sum_n c_{n+j} c_{n+k} sqrt((n+j)!/n!) sqrt((n+k)!/n!).
/// Exact to rounding for finite states.  When max(j,k) exceeds n_max the
/// sum is empty and the moment is exactly zero.
double normally_ordered_moment(const FockState& state, int j, int k);

/// <a†a>.
double mean_photon(const FockState& state);

/// ΔN² = <a†²a²> + <a†a> - <a†a>².
double photon_variance(const FockState& state);

/// <a^k> for k = 1 or 2 (the two orders the phase metrics need).
double amplitude_moment(const FockState& state, int k);

/// Worst-case additive error of <a†^j a^k> caused by truncation,
/// residual_mass * sqrt((n_max+j)^j (n_max+k)^k).  Zero for finite states.
double moment_tail_bound(const FockState& state, int j, int k);

/// All moments the metrics consume, plus <a†^l a^l> for each requested l.
MomentSet compute_moments(const FockState& state,
                          std::span<const int> higher_orders = {});

}  // namespace qphase
