#pragma once

#include <Eigen/Core>

namespace qphase {

/// Default truncation tolerance for infinite state families.
inline constexpr double kDefaultEpsilon = 1e-12;

/// Hard cap on the number of retained basis states.
inline constexpr long kDefaultNmaxCap = 1'000'000;

/// A pure single-mode state as a real amplitude vector c_0..c_{n_max}
/// over the photon-number basis, together with the probability mass
/// truncated away when the expansion is infinite.
///
/// Invariants checked at construction:
///   * every amplitude is finite,
///   * sum c_n^2 + residual_mass = 1 (within 1e-9, hard error),
///   * 0 <= residual_mass <= epsilon (plus a small floating-point slack).
class FockState {
 public:
  /// Validating constructor.  `epsilon` is the truncation budget the
  /// residual is checked against; finite states pass residual 0.
  static FockState make(Eigen::ArrayXd amplitudes, double residual_mass = 0.0,
                        double epsilon = kDefaultEpsilon);

  const Eigen::ArrayXd& amplitudes() const noexcept { return c_; }
  Eigen::Index n_max() const noexcept { return c_.size() - 1; }
  double residual_mass() const noexcept { return residual_; }
  double epsilon() const noexcept { return epsilon_; }

 private:
  FockState(Eigen::ArrayXd c, double residual, double epsilon)
      : c_(std::move(c)), residual_(residual), epsilon_(epsilon) {}

  Eigen::ArrayXd c_;
  double residual_;
  double epsilon_;
};

/// Free-function spelling of FockState::make.
FockState make_state(Eigen::ArrayXd amplitudes, double residual_mass = 0.0,
                     double epsilon = kDefaultEpsilon);

}  // namespace qphase
