#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qphase/errors.hpp"
#include "qphase/moments.hpp"
#include "qphase/state_families.hpp"

using namespace qphase;

namespace {

double max_abs_diff(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  for (Eigen::Index i = n; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i]));
  for (Eigen::Index i = n; i < b.size(); ++i) worst = std::max(worst, std::abs(b[i]));
  return worst;
}

void check_normalized(const FockState& s) {
  CHECK(std::abs((s.amplitudes() * s.amplitudes()).sum() + s.residual_mass() -
                 1.0) < 1e-12);
}

}  // namespace

TEST_CASE("binomial state amplitudes and moments") {
  const FockState bs = binomial_state(0.5, 2);
  CHECK(std::abs(bs.amplitudes()[0] - 0.5) < 1e-12);
  CHECK(std::abs(bs.amplitudes()[1] - 0.7071067811865476) < 1e-12);
  CHECK(std::abs(bs.amplitudes()[2] - 0.5) < 1e-12);
  check_normalized(bs);

  for (double p : {0.1, 0.37, 0.9}) {
    const FockState two = binomial_state(p, 1);
    CHECK(std::abs(two.amplitudes()[0] - std::sqrt(1.0 - p)) < 1e-12);
    CHECK(std::abs(two.amplitudes()[1] - std::sqrt(p)) < 1e-12);
  }

  for (double p : {0.05, 0.5, 0.95}) {
    for (int M : {1, 7, 30}) {
      const FockState s = binomial_state(p, M);
      check_normalized(s);
      CHECK(std::abs(mean_photon(s) - M * p) < 1e-10);
      CHECK(std::abs(normally_ordered_moment(s, 2, 2) -
                     M * (M - 1.0) * p * p) < 1e-10);
    }
  }
}

TEST_CASE("binomial state rejects boundary and bad parameters") {
  CHECK_THROWS_AS(binomial_state(0.0, 3), ParamError);
  CHECK_THROWS_AS(binomial_state(1.0, 3), ParamError);
  CHECK_THROWS_AS(binomial_state(-0.1, 3), ParamError);
  CHECK_THROWS_AS(binomial_state(0.5, 0), ParamError);
  CHECK_THROWS_AS(binomial_state(std::nan(""), 3), ParamError);
}

TEST_CASE("generalized binomial weights") {
  // alpha = beta = 0 gives the flat distribution
  const FockState flat = generalized_binomial_state(0.0, 0.0, 4);
  for (int n = 0; n <= 4; ++n) {
    CHECK(std::abs(flat.amplitudes()[n] * flat.amplitudes()[n] - 0.2) < 1e-12);
  }

  for (double alpha : {-0.5, 0.0, 2.0}) {
    for (double beta : {-0.5, 1.0, 5.0}) {
      for (int N : {1, 4, 12}) {
        const FockState s = generalized_binomial_state(alpha, beta, N);
        check_normalized(s);
        const double mean = N * (alpha + 1.0) / (alpha + beta + 2.0);
        CHECK(std::abs(mean_photon(s) - mean) < 1e-10);
        const double f2 = N * (N - 1.0) * (alpha + 1.0) * (alpha + 2.0) /
                          ((alpha + beta + 2.0) * (alpha + beta + 3.0));
        CHECK(std::abs(normally_ordered_moment(s, 2, 2) - f2) < 1e-10);
      }
    }
  }

  CHECK_THROWS_AS(generalized_binomial_state(-1.0, 0.0, 4), ParamError);
  CHECK_THROWS_AS(generalized_binomial_state(0.0, -1.5, 4), ParamError);
  CHECK_THROWS_AS(generalized_binomial_state(0.0, 0.0, 0), ParamError);
}

TEST_CASE("generalized binomial approaches the binomial limit") {
  const FockState gbs = generalized_binomial_state(1e4, 1e4, 4);
  const FockState bs = binomial_state(0.5, 4);
  CHECK(max_abs_diff(gbs.amplitudes(), bs.amplitudes()) < 1e-3);
}

TEST_CASE("negative binomial state") {
  const auto [geom, report] = negative_binomial_state(0.5, 0, 1e-12);
  for (int n = 0; n <= 5; ++n) {
    CHECK(std::abs(geom.amplitudes()[n] * geom.amplitudes()[n] -
                   std::pow(0.5, n + 1)) < 1e-12);
  }
  CHECK(report.residual_mass < 1e-12);
  CHECK(!report.tail_bound_used.empty());

  const auto [nbs, rep] = negative_binomial_state(0.9, 2, 1e-12);
  check_normalized(nbs);
  CHECK(rep.residual_mass < 1e-12);
  CHECK(rep.n_max < 40);  // small basis at high p
  CHECK(rep.n_max == nbs.n_max());

  for (double p : {0.3, 0.6, 0.9}) {
    for (int M : {0, 2, 5}) {
      const auto [s, r] = negative_binomial_state(p, M, 1e-12);
      const double mean = (M + 1.0 - p) / p;
      const double tol =
          std::max(1e-9, 10.0 * moment_tail_bound(s, 1, 1));
      CHECK(std::abs(mean_photon(s) - mean) < tol);
    }
  }

  CHECK_THROWS_AS(negative_binomial_state(0.0, 2), ParamError);
  CHECK_THROWS_AS(negative_binomial_state(1.0, 2), ParamError);
  CHECK_THROWS_AS(negative_binomial_state(0.5, -1), ParamError);
  CHECK_THROWS_AS(negative_binomial_state(0.02, 5, 1e-12, 50),
                  TruncationError);
}

TEST_CASE("hypergeometric state") {
  const FockState hs = hypergeometric_state(20.0, 5, 0.4);
  check_normalized(hs);
  CHECK(std::abs(mean_photon(hs) - 5 * 0.4) < 1e-9);
  const double f2 = 5 * 4 * (20 * 0.4) * (20 * 0.4 - 1.0) / (20.0 * 19.0);
  CHECK(std::abs(normally_ordered_moment(hs, 2, 2) - f2) < 1e-9);

  // real-valued L is allowed
  const FockState real_L = hypergeometric_state(25.5, 5, 0.4);
  check_normalized(real_L);

  CHECK_THROWS_AS(hypergeometric_state(20.0, 5, 0.2), ParamError);   // Lp < M
  CHECK_THROWS_AS(hypergeometric_state(20.0, 5, 0.8), ParamError);   // L(1-p) < M
  CHECK_THROWS_AS(hypergeometric_state(-1.0, 5, 0.5), ParamError);
  CHECK_THROWS_AS(hypergeometric_state(20.0, 0, 0.5), ParamError);
  CHECK_THROWS_AS(hypergeometric_state(20.0, 5, 0.0), ParamError);
}

TEST_CASE("hypergeometric approaches the binomial limit") {
  const FockState hs = hypergeometric_state(1e5, 4, 0.3);
  const FockState bs = binomial_state(0.3, 4);
  CHECK(max_abs_diff(hs.amplitudes(), bs.amplitudes()) < 1e-3);
}

TEST_CASE("photon-added coherent state") {
  // m = 0 reduces to the coherent state exactly
  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto [pacs, r1] = photon_added_coherent_state(alpha, 0, 1e-12);
    const auto [coh, r2] = coherent_state(alpha, 1e-12);
    CHECK(max_abs_diff(pacs.amplitudes(), coh.amplitudes()) < 1e-12);
  }

  // alpha = 0 reduces to the number state
  const auto [fock, rep] = photon_added_coherent_state(0.0, 3, 1e-12);
  CHECK(fock.n_max() == 3);
  CHECK(fock.amplitudes()[3] == 1.0);
  CHECK(fock.residual_mass() == 0.0);

  // alpha = 1, m = 1: L_1(-1) = 2, c_1 = e^{-1/2}/sqrt(2), c_2 = e^{-1/2}
  const auto [p11, r11] = photon_added_coherent_state(1.0, 1, 1e-12);
  CHECK(p11.amplitudes()[0] == 0.0);
  CHECK(std::abs(p11.amplitudes()[1] - std::exp(-0.5) / std::sqrt(2.0)) <
        1e-12);
  CHECK(std::abs(p11.amplitudes()[2] - std::exp(-0.5)) < 1e-12);
  check_normalized(p11);

  CHECK_THROWS_AS(photon_added_coherent_state(-0.1, 1), ParamError);
  CHECK_THROWS_AS(photon_added_coherent_state(1.0, -1), ParamError);
}

TEST_CASE("coherent state") {
  const auto [vac, r0] = coherent_state(0.0);
  CHECK(vac.n_max() == 0);
  CHECK(vac.amplitudes()[0] == 1.0);

  for (double a2 : {0.5, 2.0, 10.0}) {
    const auto [s, r] = coherent_state(std::sqrt(a2), 1e-12);
    check_normalized(s);
    const double tol = std::max(1e-9, 10.0 * moment_tail_bound(s, 1, 1));
    CHECK(std::abs(mean_photon(s) - a2) < tol);
    const double vtol = std::max(1e-9, 10.0 * moment_tail_bound(s, 2, 2));
    CHECK(std::abs(photon_variance(s) - a2) < vtol);  // Poisson
  }

  CHECK_THROWS_AS(coherent_state(-1.0), ParamError);
  CHECK_THROWS_AS(coherent_state(1.0, 0.0), ParamError);
  CHECK_THROWS_AS(coherent_state(1.0, 1e-12, 0), ParamError);
}

TEST_CASE("build_state dispatches every family") {
  const StateSpec specs[] = {
      {BinomialParams{0.5, 2}},
      {GeneralizedBinomialParams{1.0, 2.0, 5}},
      {NegativeBinomialParams{0.7, 2}},
      {HypergeometricParams{20.0, 5, 0.4}},
      {PhotonAddedCoherentParams{1.0, 1}},
      {CoherentParams{1.5}},
  };
  for (const auto& spec : specs) {
    const auto [state, report] = build_state(spec);
    check_normalized(state);
    CHECK(report.n_max == state.n_max());
    CHECK(report.residual_mass == state.residual_mass());
  }
  CHECK(family_name(specs[0].params) == "binomial");
  CHECK(family_name(specs[4].params) == "photon_added_coherent");
  CHECK(family_param_names(specs[3].params) ==
        std::vector<std::string>{"L", "M", "p"});
}

TEST_CASE("with_param substitutes by name") {
  FamilyParams base = BinomialParams{0.5, 2};
  const FamilyParams changed = with_param(base, "p", 0.25);
  CHECK(std::get<BinomialParams>(changed).p == 0.25);
  const FamilyParams m = with_param(base, "M", 7.0);
  CHECK(std::get<BinomialParams>(m).M == 7);
  CHECK_THROWS_AS(with_param(base, "alpha", 1.0), ConfigError);
  CHECK_THROWS_AS(with_param(base, "M", 2.5), ConfigError);
}
