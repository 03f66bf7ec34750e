#include "qphase/state_families.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "qphase/errors.hpp"
#include "qphase/special.hpp"

namespace qphase {

namespace {

using special::ln_binomial;
using special::ln_factorial;
using special::ln_pochhammer;

void check_truncation_args(double epsilon, long cap) {
  if (!(epsilon > 0.0) || epsilon >= 1.0) {
    throw ParamError("truncation tolerance must lie in (0,1)");
  }
  if (cap < 1) throw ParamError("nmax cap must be positive");
}

struct TruncatedWeights {
  std::vector<double> weights;  // w_0.. relative to the support offset
  double residual = 0.0;
  std::string bound_text;
};

// Weights by the multiplicative recurrence w_{i+1} = w_i * ratio(i),
// summed in extended precision.  Stops once the ratio r has dropped
// below one and the geometric tail bound w*r/(1-r) is within half the
// budget (the half keeps the floating-point residual estimate under
// epsilon).  If the leading weight underflows double range the loop
// walks the log of the recurrence until weights become representable;
// the skipped prefix carries no representable mass.
template <class RatioFn>
TruncatedWeights truncate_by_mass(double ln_w0, RatioFn ratio, double eps,
                                  long cap) {
  TruncatedWeights out;
  long double sum = 0.0L;
  long i = 0;
  double lw = ln_w0;
  bool anchored = lw > -700.0;
  double w = anchored ? std::exp(lw) : 0.0;
  bool log_anchored_start = !anchored;
  for (;;) {
    const double r = ratio(i);
    if (anchored) {
      out.weights.push_back(w);
      sum += w;
      if (r < 1.0 && w * r / (1.0 - r) <= 0.5 * eps) {
        std::ostringstream text;
        text << "geometric tail bound w*r/(1-r) <= " << 0.5 * eps
             << " with r=" << r << " after " << out.weights.size()
             << " terms";
        if (log_anchored_start) text << " (log-anchored start)";
        out.bound_text = text.str();
        break;
      }
      w *= r;
    } else {
      out.weights.push_back(0.0);
      lw += std::log(r);
      if (lw > -700.0) {
        anchored = true;
        w = std::exp(lw);
      }
    }
    if (++i > cap) {
      throw TruncationError("basis size exceeds the configured cap");
    }
  }
  double residual = static_cast<double>(1.0L - sum);
  if (residual < 0.0) residual = 0.0;
  if (log_anchored_start && residual > eps) residual = eps;
  out.residual = residual;
  return out;
}

FockState state_from_weights(const std::vector<double>& weights, long offset,
                             double residual, double epsilon) {
  Eigen::ArrayXd c = Eigen::ArrayXd::Zero(offset +
                                          static_cast<long>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    c[offset + static_cast<long>(i)] = std::sqrt(weights[i]);
  }
  return FockState::make(std::move(c), residual, epsilon);
}

// Finite families: weights must already sum to one analytically; the
// vector is divided by the computed norm so the stored state meets the
// normalization invariant at machine precision.
FockState normalized_finite_state(Eigen::ArrayXd c, double sum_tolerance,
                                  const char* what, bool domain_error) {
  const double sum = (c * c).sum();
  if (std::abs(sum - 1.0) > sum_tolerance) {
    std::ostringstream msg;
    msg << what << ": weight sum " << sum << " deviates from 1 beyond "
        << sum_tolerance;
    if (domain_error) throw DomainError(msg.str());
    throw NormalizationError(msg.str());
  }
  c /= std::sqrt(sum);
  return FockState::make(std::move(c), 0.0);
}

}  // namespace

FockState binomial_state(double p, int M) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ParamError("binomial state requires 0 < p < 1");
  }
  if (M < 1) throw ParamError("binomial state requires M >= 1");
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  Eigen::ArrayXd c(M + 1);
  for (int n = 0; n <= M; ++n) {
    c[n] = std::exp(0.5 * (ln_binomial(M, n) + n * lp + (M - n) * lq));
  }
  return normalized_finite_state(std::move(c), 1e-9, "binomial weights",
                                 false);
}

FockState generalized_binomial_state(double alpha, double beta, int N) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw ParamError("generalized binomial state requires alpha, beta > -1");
  }
  if (N < 1) throw ParamError("generalized binomial state requires N >= 1");
  const double ln_norm = ln_factorial(N) - ln_pochhammer(alpha + beta + 2.0, N);
  Eigen::ArrayXd c(N + 1);
  for (int n = 0; n <= N; ++n) {
    const double lw = ln_norm + ln_pochhammer(alpha + 1.0, n) +
                      ln_pochhammer(beta + 1.0, N - n) - ln_factorial(n) -
                      ln_factorial(N - n);
    c[n] = std::exp(0.5 * lw);
  }
  return normalized_finite_state(std::move(c), 1e-10,
                                 "generalized binomial weights", false);
}

std::pair<FockState, TruncationReport> negative_binomial_state(double p, int M,
                                                               double epsilon,
                                                               long nmax_cap) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ParamError("negative binomial state requires 0 < p < 1");
  }
  if (M < 0) throw ParamError("negative binomial state requires M >= 0");
  check_truncation_args(epsilon, nmax_cap);
  // support n >= M, w_n = C(n,M) p^{M+1} (1-p)^{n-M}
  const double q = 1.0 - p;
  const double ln_w0 = (M + 1) * std::log(p);
  auto ratio = [M, q](long i) {
    const long n = M + i;
    return q * static_cast<double>(n + 1) / static_cast<double>(n + 1 - M);
  };
  auto tw = truncate_by_mass(ln_w0, ratio, epsilon, nmax_cap);
  FockState state = state_from_weights(tw.weights, M, tw.residual, epsilon);
  TruncationReport report{state.n_max(), tw.residual, tw.bound_text};
  return {std::move(state), std::move(report)};
}

FockState hypergeometric_state(double L, int M, double p) {
  if (!(L > 0.0)) throw ParamError("hypergeometric state requires L > 0");
  if (M < 1) throw ParamError("hypergeometric state requires M >= 1");
  if (!(p > 0.0 && p < 1.0)) {
    throw ParamError("hypergeometric state requires 0 < p < 1");
  }
  // Sufficient condition for every generalized binomial coefficient in
  // the weights to be defined and non-negative.  The slack keeps grid
  // points that sit on the boundary up to rounding (e.g. p stepped to
  // 0.7500000000000001) inside the domain.
  const double slack = 1e-9 * (1.0 + L);
  if (L * p < M - slack || L * (1.0 - p) < M - slack) {
    throw ParamError("hypergeometric state requires L*p >= M and L*(1-p) >= M");
  }
  const double ln_norm = ln_binomial(L, M);
  Eigen::ArrayXd c(M + 1);
  for (int n = 0; n <= M; ++n) {
    const double lw = ln_binomial(L * p, n) +
                      ln_binomial(L * (1.0 - p), M - n) - ln_norm;
    c[n] = std::exp(0.5 * lw);
    if (!std::isfinite(c[n])) {
      throw DomainError("hypergeometric weight not finite");
    }
  }
  return normalized_finite_state(std::move(c), 1e-9, "hypergeometric weights",
                                 true);
}

std::pair<FockState, TruncationReport> photon_added_coherent_state(
    double alpha, int m, double epsilon, long nmax_cap) {
  if (!(alpha >= 0.0)) {
    throw ParamError("photon-added coherent state requires alpha >= 0");
  }
  if (m < 0) throw ParamError("photon-added coherent state requires m >= 0");
  check_truncation_args(epsilon, nmax_cap);
  if (alpha == 0.0) {
    // a†^m on vacuum: the number state |m>
    Eigen::ArrayXd c = Eigen::ArrayXd::Zero(m + 1);
    c[m] = 1.0;
    FockState state = FockState::make(std::move(c), 0.0, epsilon);
    return {std::move(state), TruncationReport{m, 0.0, "finite support"}};
  }
  const double y = alpha * alpha;
  const double laguerre = special::laguerre_at_negative(m, y);
  // w_{m+i} = e^{-y} y^i (i+m)! / ((i!)^2 m! L_m(-y)); w_m = e^{-y}/L_m
  const double ln_w0 = -y - std::log(laguerre);
  auto ratio = [y, m](long i) {
    const double ip1 = static_cast<double>(i + 1);
    return y * static_cast<double>(i + m + 1) / (ip1 * ip1);
  };
  auto tw = truncate_by_mass(ln_w0, ratio, epsilon, nmax_cap);
  FockState state = state_from_weights(tw.weights, m, tw.residual, epsilon);
  TruncationReport report{state.n_max(), tw.residual, tw.bound_text};
  return {std::move(state), std::move(report)};
}

std::pair<FockState, TruncationReport> coherent_state(double alpha,
                                                      double epsilon,
                                                      long nmax_cap) {
  if (!(alpha >= 0.0)) throw ParamError("coherent state requires alpha >= 0");
  check_truncation_args(epsilon, nmax_cap);
  if (alpha == 0.0) {
    Eigen::ArrayXd c(1);
    c[0] = 1.0;
    FockState state = FockState::make(std::move(c), 0.0, epsilon);
    return {std::move(state), TruncationReport{0, 0.0, "finite support"}};
  }
  const double y = alpha * alpha;
  auto ratio = [y](long i) { return y / static_cast<double>(i + 1); };
  auto tw = truncate_by_mass(-y, ratio, epsilon, nmax_cap);
  FockState state = state_from_weights(tw.weights, 0, tw.residual, epsilon);
  TruncationReport report{state.n_max(), tw.residual, tw.bound_text};
  return {std::move(state), std::move(report)};
}

std::pair<FockState, TruncationReport> build_state(const StateSpec& spec) {
  return std::visit(
      [&](const auto& p) -> std::pair<FockState, TruncationReport> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BinomialParams>) {
          FockState s = binomial_state(p.p, p.M);
          return {std::move(s), TruncationReport{p.M, 0.0, "finite support"}};
        } else if constexpr (std::is_same_v<T, GeneralizedBinomialParams>) {
          FockState s = generalized_binomial_state(p.alpha, p.beta, p.N);
          return {std::move(s), TruncationReport{p.N, 0.0, "finite support"}};
        } else if constexpr (std::is_same_v<T, NegativeBinomialParams>) {
          return negative_binomial_state(p.p, p.M, spec.epsilon,
                                         spec.nmax_cap);
        } else if constexpr (std::is_same_v<T, HypergeometricParams>) {
          FockState s = hypergeometric_state(p.L, p.M, p.p);
          return {std::move(s), TruncationReport{p.M, 0.0, "finite support"}};
        } else if constexpr (std::is_same_v<T, PhotonAddedCoherentParams>) {
          return photon_added_coherent_state(p.alpha, p.m, spec.epsilon,
                                             spec.nmax_cap);
        } else {
          return coherent_state(p.alpha, spec.epsilon, spec.nmax_cap);
        }
      },
      spec.params);
}

std::string_view family_name(const FamilyParams& params) {
  return std::visit(
      [](const auto& p) -> std::string_view {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BinomialParams>) return "binomial";
        else if constexpr (std::is_same_v<T, GeneralizedBinomialParams>)
          return "generalized_binomial";
        else if constexpr (std::is_same_v<T, NegativeBinomialParams>)
          return "negative_binomial";
        else if constexpr (std::is_same_v<T, HypergeometricParams>)
          return "hypergeometric";
        else if constexpr (std::is_same_v<T, PhotonAddedCoherentParams>)
          return "photon_added_coherent";
        else
          return "coherent";
      },
      params);
}

std::vector<std::string> family_param_names(const FamilyParams& params) {
  return std::visit(
      [](const auto& p) -> std::vector<std::string> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BinomialParams>) return {"p", "M"};
        else if constexpr (std::is_same_v<T, GeneralizedBinomialParams>)
          return {"alpha", "beta", "N"};
        else if constexpr (std::is_same_v<T, NegativeBinomialParams>)
          return {"p", "M"};
        else if constexpr (std::is_same_v<T, HypergeometricParams>)
          return {"L", "M", "p"};
        else if constexpr (std::is_same_v<T, PhotonAddedCoherentParams>)
          return {"alpha", "m"};
        else
          return {"alpha"};
      },
      params);
}

std::vector<double> family_param_values(const FamilyParams& params) {
  return std::visit(
      [](const auto& p) -> std::vector<double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BinomialParams>)
          return {p.p, static_cast<double>(p.M)};
        else if constexpr (std::is_same_v<T, GeneralizedBinomialParams>)
          return {p.alpha, p.beta, static_cast<double>(p.N)};
        else if constexpr (std::is_same_v<T, NegativeBinomialParams>)
          return {p.p, static_cast<double>(p.M)};
        else if constexpr (std::is_same_v<T, HypergeometricParams>)
          return {p.L, static_cast<double>(p.M), p.p};
        else if constexpr (std::is_same_v<T, PhotonAddedCoherentParams>)
          return {p.alpha, static_cast<double>(p.m)};
        else
          return {p.alpha};
      },
      params);
}

namespace {

int to_int_param(std::string_view name, double value) {
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 1e-9) {
    std::ostringstream msg;
    msg << "parameter " << name << " must be an integer, got " << value;
    throw ConfigError(msg.str());
  }
  return static_cast<int>(rounded);
}

[[noreturn]] void unknown_param(const FamilyParams& params,
                                std::string_view name) {
  std::ostringstream msg;
  msg << "family " << family_name(params) << " has no parameter '" << name
      << "'";
  throw ConfigError(msg.str());
}

}  // namespace

FamilyParams with_param(const FamilyParams& params, std::string_view name,
                        double value) {
  FamilyParams out = params;
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BinomialParams>) {
          if (name == "p") p.p = value;
          else if (name == "M") p.M = to_int_param(name, value);
          else unknown_param(params, name);
        } else if constexpr (std::is_same_v<T, GeneralizedBinomialParams>) {
          if (name == "alpha") p.alpha = value;
          else if (name == "beta") p.beta = value;
          else if (name == "N") p.N = to_int_param(name, value);
          else unknown_param(params, name);
        } else if constexpr (std::is_same_v<T, NegativeBinomialParams>) {
          if (name == "p") p.p = value;
          else if (name == "M") p.M = to_int_param(name, value);
          else unknown_param(params, name);
        } else if constexpr (std::is_same_v<T, HypergeometricParams>) {
          if (name == "L") p.L = value;
          else if (name == "M") p.M = to_int_param(name, value);
          else if (name == "p") p.p = value;
          else unknown_param(params, name);
        } else if constexpr (std::is_same_v<T, PhotonAddedCoherentParams>) {
          if (name == "alpha") p.alpha = value;
          else if (name == "m") p.m = to_int_param(name, value);
          else unknown_param(params, name);
        } else {
          if (name == "alpha") p.alpha = value;
          else unknown_param(params, name);
        }
      },
      out);
  return out;
}

}  // namespace qphase
