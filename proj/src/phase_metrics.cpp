#include "qphase/phase_metrics.hpp"

#include <cmath>
#include <sstream>

#include "qphase/errors.hpp"
#include "qphase/moments.hpp"

namespace qphase {

PhaseReport bp_phase_report(const FockState& state) {
  PhaseReport r;
  r.n_bar = mean_photon(state);
  const double a1 = normally_ordered_moment(state, 0, 1);
  if (!(a1 > kMeanFieldThreshold)) {
    std::ostringstream msg;
    msg << "mean field <a> = " << a1
        << " vanishes; Barnett-Pegg phase quantities are undefined";
    throw PhaseUndefined(msg.str());
  }
  const double a2 = normally_ordered_moment(state, 0, 2);
  const double scale = r.n_bar + 0.5;  // (N̄ + 1/2), the E-operator scaling

  // Real amplitudes: <a> is real, so <S> = Im<a>/sqrt(scale) = 0 and the
  // a² contributions enter <C²>, <S²> with opposite signs.
  r.cos_mean = a1 / std::sqrt(scale);
  r.sin_mean = 0.0;
  const double c2 = (2.0 * a2 + 2.0 * r.n_bar + 1.0) / (4.0 * scale);
  const double s2 = (-2.0 * a2 + 2.0 * r.n_bar + 1.0) / (4.0 * scale);
  r.var_c = c2 - r.cos_mean * r.cos_mean;
  r.var_s = s2 - r.sin_mean * r.sin_mean;
  r.total_phase_noise = r.var_c + r.var_s;
  r.b_factor = r.total_phase_noise / (1.0 - r.total_phase_noise);

  const double dn2 = photon_variance(state);
  r.u_value = dn2 * r.b_factor;
  // Reduced route: <a†><a> = <a>² for real amplitudes.
  r.u_reduced = dn2 * (r.n_bar - a1 * a1 + 0.5) / (a1 * a1);
  r.d_u = r.u_value - 0.5;
  r.amplitude_noise = 2.0 * r.n_bar + 1.0 - 2.0 * a1 * a1;

  // Internal consistency: the two U routes are algebraically identical,
  // and <C>²+<S>²+T = <C²>+<S²> = 1 holds for any state.  A violation
  // beyond rounding means a bug, not bad input.
  const double u_scale = std::max(1.0, std::abs(r.u_value));
  if (std::abs(r.u_value - r.u_reduced) > 1e-10 * u_scale) {
    throw Error("phase metric routes disagree beyond rounding");
  }
  const double closure = r.cos_mean * r.cos_mean + r.sin_mean * r.sin_mean +
                         r.total_phase_noise;
  if (std::abs(closure - 1.0) > 1e-10) {
    throw Error("<C>²+<S>²+T deviates from 1 beyond rounding");
  }
  if (r.u_value < 0.25 - 1e-10) {
    throw Error("U dropped below its universal 1/4 bound");
  }
  return r;
}

double u_parameter(const FockState& state) {
  return bp_phase_report(state).u_value;
}

double d_u(const FockState& state) { return bp_phase_report(state).d_u; }

double antibunching_witness(const FockState& state) {
  return photon_variance(state) - mean_photon(state);
}

double hoa_witness(const FockState& state, int l) {
  if (l < 2) {
    throw DimensionError("higher-order antibunching needs order l >= 2");
  }
  const double n1 = mean_photon(state);
  return normally_ordered_moment(state, l, l) - std::pow(n1, l);
}

double total_amplitude_noise(const FockState& state) {
  const double a1 = normally_ordered_moment(state, 0, 1);
  return 2.0 * mean_photon(state) + 1.0 - 2.0 * a1 * a1;
}

WitnessSet witness_set(const FockState& state, std::span<const int> orders) {
  WitnessSet w;
  w.antibunch = antibunching_witness(state);
  for (int l : orders) w.hoa[l] = hoa_witness(state, l);
  return w;
}

}  // namespace qphase
