#pragma once

#include <string>
#include <vector>

#include "qphase/moments.hpp"
#include "qphase/state_families.hpp"

namespace qphase {

enum class Verdict { Match, Mismatch, ClosedFormUndefined };

std::string_view verdict_name(Verdict v);

/// One closed-form-vs-oracle comparison.  The oracle value is always
/// the direct Fock-space summation; when the two disagree the oracle is
/// authoritative and the discrepancy is reported, never patched.
struct CrossCheckReport {
  std::string family;
  std::string params;    // rendered, e.g. "p=0.5 M=2"
  std::string quantity;  // "d_u", "<a†a>", ...
  double closed_value = 0.0;
  double oracle_value = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::ClosedFormUndefined;
};

/// Closed-form d_U of the binomial state,
///   d_U = Mp(1-p)/K² · (1/(2Mp) + 1 - K²) - 1/2,
/// with the overlap K = Σ_{n<M} B_n^{M-1} B_n^M evaluated in log space.
/// Algebraically exact; matches the oracle to rounding.
double du_binomial_closed(double p, int M);

/// Closed-form d_U of the negative binomial state in its reference
/// form, kept verbatim: the (M+1)(1-p)^{2M+1}/p^{2(M+2)} prefactor and
/// the overlap sum Σ sqrt(C(n+1,M)C(n,M)(1-p)^{n+1}(n+1)) truncated at
/// tail weight epsilon.  Known to disagree with the oracle; cross_check
/// reports the discrepancy.
double du_nbs_closed(double p, int M, double epsilon = kDefaultEpsilon);

/// Closed-form d_U of the hypergeometric state.  The overlap sum
/// Σ sqrt(C(Lp,n)C(L(1-p),M-n)C(Lp-1,n)C(L(1-p),M-n-1)) is taken
/// verbatim; the scalar factor multiplying it enters as Lp (the power
/// forced by the lowering identity a|L,M,p> ∝ sqrt(Lp)|...>, under
/// which the expression reproduces the oracle to rounding).
double du_hs_closed(double L, int M, double p);

/// Closed-form d_U of the generalized binomial state (experimental).
/// The reference expression leaves one summation index free; this
/// evaluator reads it as summed over 0..N-1 and otherwise keeps the
/// expression verbatim.  Expect Mismatch verdicts against the oracle.
double du_gbs_closed(double alpha, double beta, int N);

/// Reference series for the photon-added coherent moments <a†a>,
/// <a†²a²> and <a> (experimental).  mean_a2 has no reference series and
/// is returned as NaN.  The <a†²a²> series (and <a†a> for m >= 1) are
/// internally inconsistent; cross_check records the mismatch against
/// the oracle.
MomentSet pacs_moments_closed(double alpha, int m,
                              double epsilon = kDefaultEpsilon);

/// Compare the family's closed form against the Fock-space oracle.
/// For the photon-added family the report carries the worst of the
/// three moment comparisons; use cross_check_all for the full set.
/// Evaluation failures become ClosedFormUndefined verdicts, never
/// exceptions.
CrossCheckReport cross_check(const StateSpec& spec, double tol);

/// Per-quantity reports (one row for most families, three for the
/// photon-added coherent moments).
std::vector<CrossCheckReport> cross_check_all(const StateSpec& spec,
                                              double tol);

}  // namespace qphase
