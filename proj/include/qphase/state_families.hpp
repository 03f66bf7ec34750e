#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qphase/fock_state.hpp"

namespace qphase {

// Parameter records for the five intermediate families plus the
// coherent baseline.  Ranges are enforced by the constructors below.

struct BinomialParams {
  double p;  // (0,1), boundaries rejected
  int M;     // >= 1
};

struct GeneralizedBinomialParams {
  double alpha;  // > -1
  double beta;   // > -1
  int N;         // >= 1
};

struct NegativeBinomialParams {
  double p;  // (0,1)
  int M;     // >= 0
};

struct HypergeometricParams {
  double L;  // real > 0, with L*p >= M and L*(1-p) >= M
  int M;     // >= 1
  double p;  // (0,1)
};

struct PhotonAddedCoherentParams {
  double alpha;  // >= 0
  int m;         // >= 0 added photons
};

struct CoherentParams {
  double alpha;  // >= 0
};

using FamilyParams =
    std::variant<BinomialParams, GeneralizedBinomialParams,
                 NegativeBinomialParams, HypergeometricParams,
                 PhotonAddedCoherentParams, CoherentParams>;

/// One state request: a family, its parameters, and the truncation
/// budget used when the expansion is infinite.
struct StateSpec {
  FamilyParams params;
  double epsilon = kDefaultEpsilon;
  long nmax_cap = kDefaultNmaxCap;
};

/// Where an infinite expansion was cut and how much mass was dropped.
struct TruncationReport {
  Eigen::Index n_max = 0;
  double residual_mass = 0.0;
  std::string tail_bound_used;
};

/// Binomial state |p,M>: c_n = sqrt(C(M,n) p^n (1-p)^(M-n)), n <= M.
FockState binomial_state(double p, int M);

/// Roy-Roy generalized binomial state with beta-binomial weights
/// built from Pochhammer symbols, evaluated in log space.
FockState generalized_binomial_state(double alpha, double beta, int N);

/// Negative binomial state, support n >= M, truncated once a geometric
/// tail bound drops below epsilon.
std::pair<FockState, TruncationReport> negative_binomial_state(
    double p, int M, double epsilon = kDefaultEpsilon,
    long nmax_cap = kDefaultNmaxCap);

/// Hypergeometric state H_n^M(p,L) with generalized (Gamma-function)
/// binomial coefficients; finite support n <= M.
FockState hypergeometric_state(double L, int M, double p);

/// Photon-added coherent state a†^m|alpha>, normalized through
/// L_m(-alpha^2); support starts at n = m.
std::pair<FockState, TruncationReport> photon_added_coherent_state(
    double alpha, int m, double epsilon = kDefaultEpsilon,
    long nmax_cap = kDefaultNmaxCap);

/// Coherent baseline with Poisson weights.
std::pair<FockState, TruncationReport> coherent_state(
    double alpha, double epsilon = kDefaultEpsilon,
    long nmax_cap = kDefaultNmaxCap);

/// Dispatch on the family tag.
std::pair<FockState, TruncationReport> build_state(const StateSpec& spec);

/// Lower-case tag used in CSV output and the CLI ("binomial", ...).
std::string_view family_name(const FamilyParams& params);

/// Parameter names of a family in CSV column order.
std::vector<std::string> family_param_names(const FamilyParams& params);

/// Parameter values matching family_param_names.
std::vector<double> family_param_values(const FamilyParams& params);

/// Replace the named parameter (used by the sweep harness).  Integer
/// parameters require `value` to sit within 1e-9 of an integer.
FamilyParams with_param(const FamilyParams& params, std::string_view name,
                        double value);

}  // namespace qphase
