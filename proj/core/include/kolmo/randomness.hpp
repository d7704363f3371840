#pragma once

#include <cstdint>
#include <string>

#include "kolmo/distribution.hpp"

namespace kolmo {

// Full record of one "random vs. deterministic source" Bayes update.
struct RandomnessJudgment {
  std::string string;            // normalized to 0/1
  double prior_random = 0.0;     // P(R)
  double p_s_given_R = 0.0;      // uniform-source likelihood
  double p_s_given_D = 0.0;      // algorithmic-probability likelihood
  double posterior_random = 0.0; // P(R|s)
  bool extrapolated = false;     // K(s) came from the missing-string policy

  friend bool operator==(const RandomnessJudgment&, const RandomnessJudgment&) = default;
};

// Maps a coin-flip alphabet onto bits: H/h -> 1, T/t -> 0, 0/1 kept.
// Anything else raises std::runtime_error.
std::string normalize_coin_string(const std::string& s);

// P(s|R) = 2^(-|s|): every equal-length string is equally likely under a
// uniform random source.
double likelihood_random(const std::string& s);

// P(s|D): algorithmic probability renormalized over the table's strings of
// the same length, 2^(-K(s)) / sum over |t| = |s| of 2^(-K(t)). Sets
// *extrapolated when K(s) came from the missing-string policy. Throws when
// the table holds no string of length |s|.
double likelihood_deterministic(const std::string& s, const ComplexityTable& table,
                                bool* extrapolated = nullptr);

// P(R|s) = P(s|R)P(R) / (P(s|R)P(R) + P(s|D)(1 - P(R))).
RandomnessJudgment posterior_random(const std::string& s, const ComplexityTable& table,
                                    double prior);

enum class RandomnessOrder : std::uint8_t { FirstMoreRandom, SecondMoreRandom, Equal };

struct RandomnessComparison {
  RandomnessOrder order = RandomnessOrder::Equal;
  RandomnessJudgment first;
  RandomnessJudgment second;
};

// Which of two equal-length strings has the higher posterior_random.
RandomnessComparison compare_randomness(const std::string& a, const std::string& b,
                                        const ComplexityTable& table, double prior);

}  // namespace kolmo
