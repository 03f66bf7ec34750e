#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qphase/closed_forms.hpp"
#include "qphase/errors.hpp"
#include "qphase/phase_metrics.hpp"

using namespace qphase;

TEST_CASE("binomial closed form is algebraically exact") {
  for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CHECK(std::abs(du_binomial_closed(p, 1) - p * p) < 1e-12);
  }
  CHECK(std::abs(du_binomial_closed(0.5, 2) -
                 (17.0 - 12.0 * std::sqrt(2.0))) < 1e-12);

  for (double p : {0.05, 0.35, 0.65, 0.95}) {
    for (int M : {1, 5, 14, 30}) {
      CHECK(std::abs(du_binomial_closed(p, M) - d_u(binomial_state(p, M))) <
            1e-8);
    }
  }

  // reduction region: low p at larger M
  CHECK(du_binomial_closed(0.1, 10) < 0.0);
  CHECK(du_binomial_closed(0.1, 10) ==
        doctest::Approx(d_u(binomial_state(0.1, 10))).epsilon(1e-10));

  CHECK_THROWS_AS(du_binomial_closed(0.0, 2), ParamError);
  CHECK_THROWS_AS(du_binomial_closed(0.5, 0), ParamError);
}

TEST_CASE("negative binomial closed form: deterministic, disagrees with oracle") {
  const double first = du_nbs_closed(0.5, 2, 1e-12);
  const double second = du_nbs_closed(0.5, 2, 1e-12);
  CHECK(first == second);
  // the reference expression evaluates far from the Fock-space value
  CHECK(first == doctest::Approx(-6.4473166126).epsilon(1e-6));
  const double oracle = d_u(negative_binomial_state(0.5, 2, 1e-12).first);
  CHECK(oracle == doctest::Approx(0.4997858887).epsilon(1e-6));

  // M = 0 is the smallest valid order and evaluates without error
  CHECK(std::isfinite(du_nbs_closed(0.5, 0, 1e-12)));

  CHECK_THROWS_AS(du_nbs_closed(1.0, 2), ParamError);
  CHECK_THROWS_AS(du_nbs_closed(0.5, -1), ParamError);
}

TEST_CASE("oracle ordering for the negative binomial family") {
  // The Fock-space values rise as p falls: low p means a strongly
  // super-Poissonian state, so its phase fluctuation cannot be reduced.
  const double at_04 = d_u(negative_binomial_state(0.4, 2, 1e-12).first);
  const double at_08 = d_u(negative_binomial_state(0.8, 2, 1e-12).first);
  CHECK(at_04 > at_08);
  CHECK(at_04 > 0.0);
  CHECK(at_08 > 0.0);
}

TEST_CASE("hypergeometric closed form matches the oracle") {
  for (const auto& [L, M, p] :
       {std::tuple{20.0, 5, 0.4}, {50.0, 5, 0.5}, {100.0, 10, 0.3}}) {
    const double closed = du_hs_closed(L, M, p);
    const double oracle = d_u(hypergeometric_state(L, M, p));
    CHECK(std::abs(closed - oracle) < 1e-10);
  }

  // L -> infinity limit approaches the binomial closed form
  CHECK(std::abs(du_hs_closed(1e5, 4, 0.3) - du_binomial_closed(0.3, 4)) <
        1e-3);

  CHECK_THROWS_AS(du_hs_closed(20.0, 5, 0.1), ParamError);
  CHECK_THROWS_AS(du_hs_closed(0.0, 5, 0.5), ParamError);
}

TEST_CASE("hypergeometric at high p: antibunched without reduction of U") {
  const FockState hs = hypergeometric_state(50.0, 5, 0.8);
  CHECK(d_u(hs) > 0.0);
  CHECK(antibunching_witness(hs) < 0.0);
}

TEST_CASE("generalized binomial closed form: deterministic best-effort") {
  const double first = du_gbs_closed(1.0, 2.0, 5);
  CHECK(first == du_gbs_closed(1.0, 2.0, 5));
  CHECK(first == doctest::Approx(-2.4953619632).epsilon(1e-6));
  const double oracle = d_u(generalized_binomial_state(1.0, 2.0, 5));
  CHECK(oracle == doctest::Approx(0.1473001455).epsilon(1e-6));

  CHECK_THROWS_AS(du_gbs_closed(-1.0, 0.0, 5), ParamError);
  CHECK_THROWS_AS(du_gbs_closed(0.0, 0.0, 0), ParamError);
}

TEST_CASE("oracle shows a reduction region for the generalized binomial") {
  CHECK(d_u(generalized_binomial_state(5.0, 5.0, 10)) < 0.0);
  CHECK(d_u(generalized_binomial_state(0.0, 0.0, 10)) > 0.0);
}

TEST_CASE("photon-added moment series") {
  // m = 0: the <a†a> and <a> series collapse to the coherent values
  const MomentSet m0 = pacs_moments_closed(2.0, 0, 1e-14);
  CHECK(std::abs(m0.n_mean - 4.0) < 1e-10);
  CHECK(std::abs(m0.mean_a - 2.0) < 1e-10);
  CHECK(std::isnan(m0.mean_a2));
  // ... but the <a†²a²> series does not reproduce alpha^4
  CHECK(m0.n2_normord == doctest::Approx(0.5413411329).epsilon(1e-6));

  // the <a> series agrees with the oracle at every order
  for (const auto& [alpha, m] : {std::pair{1.0, 1}, {0.5, 2}, {1.0, 2}}) {
    const MomentSet closed = pacs_moments_closed(alpha, m, 1e-14);
    const auto [state, r] = photon_added_coherent_state(alpha, m, 1e-14);
    CHECK(std::abs(closed.mean_a - amplitude_moment(state, 1)) < 1e-9);
  }

  // the <a†a> series misses the m added quanta
  const MomentSet m1 = pacs_moments_closed(1.0, 1, 1e-14);
  const auto [s1, r1] = photon_added_coherent_state(1.0, 1, 1e-14);
  CHECK(std::abs(mean_photon(s1) - 2.5) < 1e-10);
  CHECK(m1.n_mean < 2.4);

  // every series term carries a power of alpha, so alpha = 0 gives zero
  const MomentSet z = pacs_moments_closed(0.0, 2, 1e-14);
  CHECK(z.n_mean == 0.0);
  CHECK(z.mean_a == 0.0);

  CHECK_THROWS_AS(pacs_moments_closed(-1.0, 0), ParamError);
  CHECK_THROWS_AS(pacs_moments_closed(1.0, -1), ParamError);
}

TEST_CASE("cross_check classifies each family") {
  const CrossCheckReport bs =
      cross_check(StateSpec{BinomialParams{0.3, 10}}, 1e-8);
  CHECK(bs.verdict == Verdict::Match);
  CHECK(bs.family == "binomial");
  CHECK(bs.quantity == "d_u");
  CHECK(bs.abs_diff <= 1e-8);

  const CrossCheckReport hs =
      cross_check(StateSpec{HypergeometricParams{50.0, 5, 0.5}}, 1e-8);
  CHECK(hs.verdict == Verdict::Match);

  const CrossCheckReport gbs =
      cross_check(StateSpec{GeneralizedBinomialParams{1.0, 2.0, 5}}, 1e-8);
  CHECK(gbs.verdict == Verdict::Mismatch);
  CHECK(gbs.abs_diff == doctest::Approx(2.6426621087).epsilon(1e-6));

  const CrossCheckReport nbs =
      cross_check(StateSpec{NegativeBinomialParams{0.5, 2}}, 1e-8);
  CHECK(nbs.verdict == Verdict::Mismatch);
  CHECK(std::isfinite(nbs.abs_diff));

  const CrossCheckReport coh = cross_check(StateSpec{CoherentParams{2.0}}, 1e-8);
  CHECK(coh.verdict == Verdict::Match);
  CHECK(coh.quantity == "U");
  CHECK(coh.oracle_value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("cross_check_all reports the photon-added moment trio") {
  StateSpec spec{PhotonAddedCoherentParams{1.0, 1}};
  const auto reports = cross_check_all(spec, 1e-8);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].quantity == "<a†a>");
  CHECK(reports[0].verdict == Verdict::Mismatch);
  CHECK(reports[1].quantity == "<a†²a²>");
  CHECK(reports[1].verdict == Verdict::Mismatch);
  CHECK(reports[2].quantity == "<a>");
  CHECK(reports[2].verdict == Verdict::Match);

  // the single-report view carries the worst row
  const CrossCheckReport worst = cross_check(spec, 1e-8);
  CHECK(worst.abs_diff ==
        std::max(reports[0].abs_diff, reports[1].abs_diff));

  // m = 0 moment check against the coherent limit: <a†a> and <a> match
  const auto m0 = cross_check_all(StateSpec{PhotonAddedCoherentParams{2.0, 0}},
                                  1e-8);
  CHECK(m0[0].verdict == Verdict::Match);
  CHECK(m0[1].verdict == Verdict::Mismatch);
  CHECK(m0[2].verdict == Verdict::Match);

  // the <a†²a²> series row at (0.5, 2)
  const auto half = cross_check_all(
      StateSpec{PhotonAddedCoherentParams{0.5, 2}}, 1e-8);
  CHECK(half[1].quantity == "<a†²a²>");
  CHECK(half[1].verdict == Verdict::Mismatch);
  CHECK(half[1].oracle_value == doctest::Approx(4.7563775510).epsilon(1e-6));
}

TEST_CASE("cross_check is reproducible") {
  StateSpec spec{GeneralizedBinomialParams{1.0, 2.0, 5}};
  const CrossCheckReport a = cross_check(spec, 1e-8);
  const CrossCheckReport b = cross_check(spec, 1e-8);
  CHECK(a.closed_value == b.closed_value);
  CHECK(a.oracle_value == b.oracle_value);
  CHECK(a.abs_diff == b.abs_diff);
  CHECK(a.verdict == b.verdict);
}

TEST_CASE("evaluation overflow becomes ClosedFormUndefined") {
  // the best-effort expression overflows double range at large N while
  // the state itself stays perfectly well defined
  const CrossCheckReport r =
      cross_check(StateSpec{GeneralizedBinomialParams{0.0, 0.0, 300}}, 1e-8);
  CHECK(r.verdict == Verdict::ClosedFormUndefined);
  CHECK(verdict_name(r.verdict) == "ClosedFormUndefined");
}
