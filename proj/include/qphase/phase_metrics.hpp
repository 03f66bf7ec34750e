#pragma once

#include <map>
#include <span>

#include "qphase/fock_state.hpp"

namespace qphase {

/// Mean fields below this are treated as vanishing: the denominator of
/// the phase-fluctuation measure is <a†><a>, so the Barnett-Pegg
/// quantities are reported undefined rather than astronomically large.
inline constexpr double kMeanFieldThreshold = 1e-12;

/// Barnett-Pegg phase quantities of one state.  The exponential-of-phase
/// operator is E = (N̄+1/2)^{-1/2} a with C = (E+E†)/2, S = -i(E-E†)/2.
///
/// u_value is computed from the C/S variance definition
///     U = ΔN² (ΔS²+ΔC²) / (<S>²+<C>²) = ΔN² T/(1-T)
/// and cross-checked against the reduced moment form
///     U = [<a†²a²>+<a†a>-<a†a>²] [(<a†a>-<a†><a>+1/2) / (<a†><a>)];
/// the two routes must agree or construction fails.
struct PhaseReport {
  double n_bar = 0.0;              // N̄ = <a†a>
  double cos_mean = 0.0;           // <C>
  double sin_mean = 0.0;           // <S> (zero: amplitudes are real)
  double var_c = 0.0;              // ΔC²
  double var_s = 0.0;              // ΔS²
  double total_phase_noise = 0.0;  // T = ΔS² + ΔC²
  double b_factor = 0.0;           // b = T/(1-T)
  double u_value = 0.0;            // U (definition route)
  double u_reduced = 0.0;          // U (reduced moment route, cross-check)
  double d_u = 0.0;                // U - 1/2
  double amplitude_noise = 0.0;    // (ΔX)² + (ΔẊ)² = 2<a†a>+1-2<a>²
};

/// Antibunching witnesses.  antibunch = ΔN² - <N> (negative means
/// sub-Poissonian); hoa[l] = <a†^l a^l> - <a†a>^l, negative means the
/// state is antibunched in order l-1.  hoa[2] equals antibunch
/// algebraically.
struct WitnessSet {
  double antibunch = 0.0;
  std::map<int, double> hoa;
};

/// Full Barnett-Pegg report.  Throws PhaseUndefined when <a> is below
/// kMeanFieldThreshold (number-like states).
PhaseReport bp_phase_report(const FockState& state);

/// Convenience projections of bp_phase_report.
double u_parameter(const FockState& state);
double d_u(const FockState& state);

/// ΔN² - <a†a>; defined for every state.
double antibunching_witness(const FockState& state);

/// <a†^l a^l> - <a†a>^l for l >= 2; defined for every state.
double hoa_witness(const FockState& state, int l);

/// Total amplitude noise (ΔX)² + (ΔẊ)² with X = (a+a†)/√2.
double total_amplitude_noise(const FockState& state);

/// antibunch plus the requested higher orders.
WitnessSet witness_set(const FockState& state, std::span<const int> orders);

}  // namespace qphase
