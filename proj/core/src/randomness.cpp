#include "kolmo/randomness.hpp"

#include <cmath>
#include <stdexcept>

namespace kolmo {

namespace {

void require_binary(const std::string& s) {
  if (s.empty()) throw std::runtime_error("randomness judgments need a non-empty string");
  for (const char c : s)
    if (c != '0' && c != '1')
      throw std::runtime_error(std::string("non-binary symbol '") + c +
                               "' (expected 0/1 or H/T)");
}

// Sum of 2^(-K(t)) over the table's strings of length `len`. Keys are
// ordered by length first, so the class is one contiguous map range; '-'
// sorts before any digit, making a run of '-' the least key of its length.
double length_class_mass(const ComplexityTable& table, std::size_t len) {
  double mass = 0.0;
  for (auto it = table.entries.lower_bound(std::string(len, '-'));
       it != table.entries.end() && it->first.size() == len; ++it)
    mass += std::exp2(-it->second);
  return mass;
}

}  // namespace

std::string normalize_coin_string(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '0': case 'T': case 't': out.push_back('0'); break;
      case '1': case 'H': case 'h': out.push_back('1'); break;
      default:
        throw std::runtime_error(std::string("non-binary symbol '") + c +
                                 "' (expected 0/1 or H/T)");
    }
  }
  return out;
}

double likelihood_random(const std::string& s) {
  require_binary(s);
  return std::exp2(-static_cast<double>(s.size()));
}

double likelihood_deterministic(const std::string& s, const ComplexityTable& table,
                                bool* extrapolated) {
  require_binary(s);
  const KLookup k = lookup_K(table, s);
  if (extrapolated != nullptr) *extrapolated = k.extrapolated;
  const double mass = length_class_mass(table, s.size());
  if (mass <= 0.0)
    throw std::runtime_error("table has no strings of length " +
                             std::to_string(s.size()));
  return std::exp2(-k.k) / mass;
}

RandomnessJudgment posterior_random(const std::string& s, const ComplexityTable& table,
                                    double prior) {
  if (!(prior >= 0.0 && prior <= 1.0))
    throw std::invalid_argument("prior must lie in [0,1]");
  RandomnessJudgment judgment;
  judgment.string = s;
  judgment.prior_random = prior;
  judgment.p_s_given_R = likelihood_random(s);
  judgment.p_s_given_D = likelihood_deterministic(s, table, &judgment.extrapolated);
  const double numerator = judgment.p_s_given_R * prior;
  const double denominator = numerator + judgment.p_s_given_D * (1.0 - prior);
  judgment.posterior_random = denominator == 0.0 ? 0.0 : numerator / denominator;
  return judgment;
}

RandomnessComparison compare_randomness(const std::string& a, const std::string& b,
                                        const ComplexityTable& table, double prior) {
  if (a.size() != b.size())
    throw std::runtime_error("cannot compare strings of different lengths (" +
                             std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
  RandomnessComparison comparison;
  comparison.first = posterior_random(a, table, prior);
  comparison.second = posterior_random(b, table, prior);
  if (comparison.first.posterior_random > comparison.second.posterior_random)
    comparison.order = RandomnessOrder::FirstMoreRandom;
  else if (comparison.first.posterior_random < comparison.second.posterior_random)
    comparison.order = RandomnessOrder::SecondMoreRandom;
  else
    comparison.order = RandomnessOrder::Equal;
  return comparison;
}

}  // namespace kolmo
