#include "doctest.h"

#include <cmath>
#include <iterator>
#include <random>
#include <stdexcept>
#include <string>

#include "frozen_tables.hpp"
#include "kolmo/randomness.hpp"

using namespace kolmo;

namespace {

ComplexityTable two_state_complexity() { return to_complexity(frozen::two_state_table()); }

int ulp_distance(double a, double b, int limit = 16) {
  if (a == b) return 0;
  int n = 0;
  double x = a;
  while (x != b && n <= limit) {
    x = std::nextafter(x, b);
    ++n;
  }
  return n;
}

}  // namespace

TEST_SUITE("randomness") {

TEST_CASE("coin-flip strings normalize onto bits") {
  CHECK(normalize_coin_string("HTHT") == "1010");
  CHECK(normalize_coin_string("hT01") == "1001");
  CHECK(normalize_coin_string("0011") == "0011");
  CHECK(normalize_coin_string("").empty());
  CHECK_THROWS_AS(normalize_coin_string("H2T"), std::runtime_error);
  CHECK_THROWS_AS(normalize_coin_string("heads"), std::runtime_error);
}

TEST_CASE("the uniform-source likelihood halves per symbol") {
  CHECK(likelihood_random("0") == 0.5);
  CHECK(likelihood_random("10011010") == 1.0 / 256.0);
  CHECK_THROWS_AS(likelihood_random(""), std::runtime_error);
  CHECK_THROWS_AS(likelihood_random("HT"), std::runtime_error);  // callers normalize first
}

TEST_CASE("the deterministic likelihood renormalizes within the length class") {
  const ComplexityTable table = two_state_complexity();

  SUBCASE("equal-K classes split evenly") {
    CHECK(likelihood_deterministic("0", table) == 0.5);
    CHECK(likelihood_deterministic("1", table) == 0.5);
  }

  SUBCASE("unequal counts shift the mass") {
    // Counts 728 : 704 : 704 : 680 over the length-2 class.
    CHECK(likelihood_deterministic("00", table) ==
          doctest::Approx(728.0 / 2816.0).epsilon(1e-12));
    CHECK(likelihood_deterministic("11", table) ==
          doctest::Approx(680.0 / 2816.0).epsilon(1e-12));
  }

  SUBCASE("each length class sums to one over the table's strings") {
    for (const std::size_t len : {1u, 2u, 3u, 4u}) {
      double sum = 0.0;
      for (const auto& [s, k] : table.entries)
        if (s.size() == len) sum += likelihood_deterministic(s, table);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  SUBCASE("a missing string draws the extrapolated K against its class") {
    // The four length-4 entries share one K, so the absent string gets
    // 2^-(K+1) / (4 * 2^-K) = 1/8.
    bool extrapolated = false;
    CHECK(likelihood_deterministic("0000", table, &extrapolated) == 0.125);
    CHECK(extrapolated);
    extrapolated = true;
    CHECK(likelihood_deterministic("1111", table, &extrapolated) == 0.25);
    CHECK_FALSE(extrapolated);
  }

  SUBCASE("a length the table never produced cannot be judged") {
    CHECK_THROWS_AS(likelihood_deterministic("00000", table), std::runtime_error);
  }
}

TEST_CASE("posterior_random applies Bayes' rule") {
  const ComplexityTable table = two_state_complexity();

  SUBCASE("a single coin flip is uninformative at even prior") {
    const RandomnessJudgment judgment = posterior_random("0", table, 0.5);
    CHECK(judgment.posterior_random == 0.5);
    CHECK(judgment.p_s_given_R == 0.5);
    CHECK(judgment.p_s_given_D == 0.5);
    CHECK_FALSE(judgment.extrapolated);
    CHECK(judgment.string == "0");
    CHECK(judgment.prior_random == 0.5);
  }

  SUBCASE("the frozen two-symbol example") {
    // P("0000"|R) = 1/16, P("0000"|D) = 1/8, prior 1/2 -> posterior 1/3.
    const RandomnessJudgment judgment = posterior_random("0000", table, 0.5);
    CHECK(judgment.posterior_random == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(judgment.extrapolated);
  }

  SUBCASE("degenerate priors pin the posterior") {
    CHECK(posterior_random("01", table, 0.0).posterior_random == 0.0);
    CHECK(posterior_random("01", table, 1.0).posterior_random == 1.0);
  }

  SUBCASE("priors outside [0,1] are rejected") {
    CHECK_THROWS_AS(posterior_random("01", table, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(posterior_random("01", table, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(posterior_random("01", table, std::nan("")), std::invalid_argument);
  }

  SUBCASE("the posterior increases with the prior") {
    double previous = -1.0;
    for (double prior = 0.0; prior <= 1.0; prior += 0.1) {
      const double posterior = posterior_random("11", table, prior).posterior_random;
      CHECK(posterior > previous);
      previous = posterior;
    }
  }

  SUBCASE("higher K means more plausibly random") {
    // K("11") > K("00") in the frozen table (680 vs 728 halters).
    const double rare = posterior_random("11", table, 0.5).posterior_random;
    const double common = posterior_random("00", table, 0.5).posterior_random;
    CHECK(rare > common);
  }

  SUBCASE("the reported fields satisfy Bayes' identity to a few ulp") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pick_prior(0.01, 0.99);
    const std::string strings[] = {"0", "1", "00", "01", "11", "010", "111", "1001", "0000"};
    for (int trial = 0; trial < 200; ++trial) {
      const std::string& s = strings[trial % std::size(strings)];
      const double prior = pick_prior(rng);
      const RandomnessJudgment j = posterior_random(s, table, prior);
      const double expected = j.p_s_given_R * prior /
                              (j.p_s_given_R * prior + j.p_s_given_D * (1.0 - prior));
      CHECK(ulp_distance(j.posterior_random, expected) <= 4);
    }
  }
}

TEST_CASE("judgments respect the table's mirror symmetry but not complement") {
  const ComplexityTable table = two_state_complexity();
  // Reversal never changes K in a table built with mirror-closed counts.
  CHECK(posterior_random("01", table, 0.5).posterior_random ==
        posterior_random("10", table, 0.5).posterior_random);
  CHECK(posterior_random("011", table, 0.5).posterior_random ==
        posterior_random("110", table, 0.5).posterior_random);
  // Swapping 0s and 1s does: the blank tape biases the machines' outputs.
  CHECK(posterior_random("00", table, 0.5).posterior_random !=
        posterior_random("11", table, 0.5).posterior_random);
}

TEST_CASE("compare_randomness orders by posterior") {
  const ComplexityTable table = two_state_complexity();

  const RandomnessComparison comparison = compare_randomness("11", "00", table, 0.5);
  CHECK(comparison.order == RandomnessOrder::FirstMoreRandom);
  CHECK(comparison.first.string == "11");
  CHECK(comparison.second.string == "00");
  CHECK(comparison.first.posterior_random > comparison.second.posterior_random);

  SUBCASE("the comparison is antisymmetric") {
    CHECK(compare_randomness("00", "11", table, 0.5).order ==
          RandomnessOrder::SecondMoreRandom);
  }

  SUBCASE("a string ties with itself and with its mirror image") {
    CHECK(compare_randomness("01", "01", table, 0.5).order == RandomnessOrder::Equal);
    CHECK(compare_randomness("01", "10", table, 0.5).order == RandomnessOrder::Equal);
  }

  SUBCASE("lengths must match") {
    CHECK_THROWS_AS(compare_randomness("0", "00", table, 0.5), std::runtime_error);
  }
}

}  // TEST_SUITE
