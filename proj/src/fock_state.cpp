#include "qphase/fock_state.hpp"

#include <cmath>
#include <sstream>

#include "qphase/errors.hpp"

namespace qphase {

namespace {

// Absolute slack on the residual <= epsilon check: the stored residual
// is 1 - sum c_n^2 evaluated in floating point, so it can poke above the
// analytic tail bound by a few ulp of 1.
constexpr double kResidualSlack = 5e-15;

}  // namespace

FockState FockState::make(Eigen::ArrayXd amplitudes, double residual_mass,
                          double epsilon) {
  if (amplitudes.size() == 0) {
    throw InvalidAmplitude("empty amplitude vector");
  }
  if (!amplitudes.isFinite().all()) {
    throw InvalidAmplitude("non-finite amplitude entry");
  }
  if (!std::isfinite(residual_mass) || residual_mass < 0.0) {
    throw NormalizationError("residual mass must be finite and >= 0");
  }
  if (!(epsilon > 0.0) || epsilon >= 1.0) {
    throw NormalizationError("truncation tolerance must lie in (0,1)");
  }
  if (residual_mass > epsilon + kResidualSlack) {
    std::ostringstream msg;
    msg << "residual mass " << residual_mass
        << " exceeds truncation tolerance " << epsilon;
    throw NormalizationError(msg.str());
  }
  const double total = (amplitudes * amplitudes).sum() + residual_mass;
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "amplitudes + residual carry total probability " << total;
    throw NormalizationError(msg.str());
  }
  return FockState(std::move(amplitudes), residual_mass, epsilon);
}

FockState make_state(Eigen::ArrayXd amplitudes, double residual_mass,
                     double epsilon) {
  return FockState::make(std::move(amplitudes), residual_mass, epsilon);
}

}  // namespace qphase
