#include "doctest.h"

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "frozen_tables.hpp"
#include "kolmo/enumerate.hpp"
#include "kolmo/machine.hpp"
#include "oracle_tm.hpp"

using namespace kolmo;
using frozen::kTwoStateHalters;
using frozen::kTwoStateMaxSteps;

namespace {

const CountMap& kTwoStateCounts = frozen::two_state_counts();

bool entry_matches(const Transition& ours, const oracle::Entry& theirs) {
  if (ours.write != theirs.write) return false;
  if ((ours.move == Move::Right ? +1 : -1) != theirs.move) return false;
  const int next = ours.next_state == kHaltState ? 0 : ours.next_state;
  return next == theirs.next;
}

}  // namespace

TEST_SUITE("enumeration") {

TEST_CASE("machine_count matches the closed form and rejects bad specs") {
  CHECK(machine_count({1, 2}) == 64);
  CHECK(machine_count({2, 2}) == 20736);
  CHECK(machine_count({3, 2}) == 16777216);
  CHECK(machine_count({4, 2}) == 25600000000ull);
  CHECK(machine_count({2, 3}) == 34012224ull);  // 18^6

  CHECK_THROWS_AS(machine_count({7, 2}), std::overflow_error);  // 32^14 > 2^64
  CHECK_THROWS_AS(machine_count({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(machine_count({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(machine_count({2, 11}), std::invalid_argument);
}

TEST_CASE("decode_index lays digits out in the documented order") {
  const MachineSpec spec{2, 2};

  SUBCASE("index 0 is the all-(write 0, Left, state 1) machine") {
    const Machine machine = decode_index(spec, 0);
    for (const Transition& t : machine.table) {
      CHECK(t.write == 0);
      CHECK(t.move == Move::Left);
      CHECK(t.next_state == 1);
    }
  }

  SUBCASE("the last index is the all-(write m-1, Right, Halt) machine") {
    const Machine machine = decode_index(spec, machine_count(spec) - 1);
    for (const Transition& t : machine.table) {
      CHECK(t.write == 1);
      CHECK(t.move == Move::Right);
      CHECK(t.next_state == kHaltState);
    }
  }

  SUBCASE("within one digit the sub-order is write, then move, then next state") {
    // Digit base is 2*m*(n+1) = 12; only the (state 1, read 0) entry varies
    // for indices below 12.
    CHECK(decode_index(spec, 1).at(1, 0) == Transition{0, Move::Left, 2});
    CHECK(decode_index(spec, 2).at(1, 0) == Transition{0, Move::Left, kHaltState});
    CHECK(decode_index(spec, 3).at(1, 0) == Transition{0, Move::Right, 1});
    CHECK(decode_index(spec, 6).at(1, 0) == Transition{1, Move::Left, 1});
    CHECK(decode_index(spec, 11).at(1, 0) == Transition{1, Move::Right, kHaltState});
    // Index 12 rolls over into the (state 1, read 1) entry.
    const Machine rolled = decode_index(spec, 12);
    CHECK(rolled.at(1, 0) == Transition{0, Move::Left, 1});
    CHECK(rolled.at(1, 1) == Transition{0, Move::Left, 2});
  }
}

TEST_CASE("encode_index inverts decode_index") {
  const MachineSpec spec{3, 2};
  const std::uint64_t total = machine_count(spec);
  CHECK(encode_index(decode_index(spec, 0)) == 0);
  CHECK(encode_index(decode_index(spec, total - 1)) == total - 1);

  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t index = pick(rng);
    CHECK(encode_index(decode_index(spec, index)) == index);
  }
}

TEST_CASE("decode_index agrees with the reference decoder") {
  std::mt19937_64 rng(103);
  for (const MachineSpec spec : {MachineSpec{1, 2}, MachineSpec{2, 2}, MachineSpec{3, 2},
                                 MachineSpec{2, 3}}) {
    std::uniform_int_distribution<std::uint64_t> pick(0, machine_count(spec) - 1);
    for (int trial = 0; trial < 200; ++trial) {
      const std::uint64_t index = pick(rng);
      const Machine ours = decode_index(spec, index);
      const oracle::Table theirs = oracle::decode(spec.states, spec.symbols, index);
      REQUIRE(is_valid(ours));
      for (int state = 1; state <= spec.states; ++state)
        for (int read = 0; read < spec.symbols; ++read)
          CHECK(entry_matches(ours.at(state, read), theirs.at({state, read})));
    }
  }
}

TEST_CASE("mirror representatives are exactly half the space") {
  const MachineSpec spec{2, 2};
  const std::uint64_t reduced = reduced_machine_count(spec);
  CHECK(reduced == machine_count(spec) / 2);

  std::set<std::uint64_t> seen;
  for (std::uint64_t r = 0; r < reduced; ++r) {
    const std::uint64_t full = reduced_to_full_index(spec, r);
    REQUIRE(full < machine_count(spec));
    CHECK(decode_index(spec, full).at(1, 0).move == Move::Right);
    seen.insert(full);
  }
  CHECK(seen.size() == reduced);  // injective, so it covers every representative
}

TEST_CASE("IndexPermutation is a seeded bijection on [0, size)") {
  for (const std::uint64_t size : {1ull, 2ull, 3ull, 64ull, 1000ull, 20736ull}) {
    const IndexPermutation perm(size, 42);
    std::set<std::uint64_t> image;
    for (std::uint64_t pos = 0; pos < size; ++pos) {
      const std::uint64_t value = perm(pos);
      REQUIRE(value < size);
      image.insert(value);
    }
    CHECK(image.size() == size);
  }

  SUBCASE("same seed, same permutation; different seed, different one") {
    const IndexPermutation a(20736, 7);
    const IndexPermutation b(20736, 7);
    const IndexPermutation c(20736, 8);
    bool all_equal_ab = true;
    bool all_equal_ac = true;
    for (std::uint64_t pos = 0; pos < 20736; ++pos) {
      all_equal_ab = all_equal_ab && a(pos) == b(pos);
      all_equal_ac = all_equal_ac && a(pos) == c(pos);
    }
    CHECK(all_equal_ab);
    CHECK_FALSE(all_equal_ac);
  }

  SUBCASE("positions outside the domain are rejected") {
    const IndexPermutation perm(64, 1);
    CHECK_THROWS_AS(perm(64), std::out_of_range);
  }
}

TEST_CASE("default_cutoff depends on the state count") {
  CHECK(default_cutoff({1, 2}) == 1000);
  CHECK(default_cutoff({2, 2}) == 1000);
  CHECK(default_cutoff({3, 2}) == 1000);
  CHECK(default_cutoff({4, 2}) == 107);
  CHECK(default_cutoff({5, 2}) == 500);
}

TEST_CASE("the (1,2) space splits evenly between outputs 0 and 1") {
  const FrequencyTable table = enumerate_outputs({.space = {1, 2}});
  CHECK(table.entries == CountMap{{"0", 16}, {"1", 16}});
  CHECK(table.meta.machines_run == 64);
  CHECK(table.meta.halters == 32);
  CHECK(table.meta.max_halt_steps == 1);
  CHECK(table.meta.cutoff == 1000);
  CHECK(table.meta.mode == EnumMode::Exhaustive);
  CHECK(table.meta.provenance == Provenance::Built);

  const oracle::SpaceCensus census = oracle::enumerate_space(1, 2, 1000);
  CHECK(census.halters == 32);
  CHECK(std::map<std::string, std::uint64_t>(table.entries.begin(), table.entries.end()) ==
        census.counts);
}

TEST_CASE("the (2,2) census matches the frozen reference table") {
  const FrequencyTable table = enumerate_outputs({.space = {2, 2}});
  CHECK(table.entries == kTwoStateCounts);
  CHECK(table.meta.machines_run == 20736);
  CHECK(table.meta.halters == kTwoStateHalters);
  CHECK(table.meta.max_halt_steps == kTwoStateMaxSteps);

  SUBCASE("and the live reference implementation") {
    const oracle::SpaceCensus census = oracle::enumerate_space(2, 2, 1000);
    CHECK(census.halters == kTwoStateHalters);
    CHECK(census.max_halt_steps == kTwoStateMaxSteps);
    CHECK(std::map<std::string, std::uint64_t>(table.entries.begin(), table.entries.end()) ==
          census.counts);
  }

  SUBCASE("re-running at the observed maximum halting time changes nothing") {
    const FrequencyTable tight = enumerate_outputs({.space = {2, 2}, .cutoff = kTwoStateMaxSteps});
    CHECK(tight.entries == table.entries);
    CHECK(tight.meta.halters == table.meta.halters);
    CHECK(tight.meta.max_halt_steps == table.meta.max_halt_steps);
  }
}

TEST_CASE("worker count never changes the result") {
  const EnumerationPlan plan{.space = {2, 2}};
  const FrequencyTable one = enumerate_outputs(plan, {.workers = 1});
  const FrequencyTable two = enumerate_outputs(plan, {.workers = 2});
  const FrequencyTable eight = enumerate_outputs(plan, {.workers = 8});
  CHECK(one == two);
  CHECK(one == eight);
}

TEST_CASE("chunked index ranges merge into the single-pass table") {
  const MachineSpec spec{2, 2};
  const FrequencyTable whole = enumerate_index_range(spec, 0, 20736, 1000);

  FrequencyTable merged;  // identity
  for (const auto [first, last] :
       std::vector<std::pair<std::uint64_t, std::uint64_t>>{{0, 7000}, {7000, 13000}, {13000, 20736}}) {
    merged = merge(merged, enumerate_index_range(spec, first, last, 1000));
  }
  CHECK(merged.entries == whole.entries);
  CHECK(merged.meta.machines_run == whole.meta.machines_run);
  CHECK(merged.meta.halters == whole.meta.halters);
  CHECK(merged.meta.max_halt_steps == whole.meta.max_halt_steps);
  CHECK(whole.entries == kTwoStateCounts);
}

TEST_CASE("sampling the whole space reproduces the exhaustive census") {
  const std::uint64_t total = machine_count({2, 2});
  const FrequencyTable sampled = enumerate_outputs(
      {.space = {2, 2}, .mode = EnumMode::Sampled, .sample_count = total, .seed = 99});
  CHECK(sampled.entries == kTwoStateCounts);
  CHECK(sampled.meta.halters == kTwoStateHalters);
  CHECK(sampled.meta.machines_run == total);
  CHECK(sampled.meta.mode == EnumMode::Sampled);
  CHECK(sampled.meta.seed == 99);
}

TEST_CASE("sampled runs are seed-deterministic") {
  const EnumerationPlan seeded{
      .space = {2, 2}, .mode = EnumMode::Sampled, .sample_count = 5000, .seed = 42};
  const FrequencyTable first = enumerate_outputs(seeded);
  const FrequencyTable again = enumerate_outputs(seeded);
  CHECK(first == again);
  CHECK(first.meta.machines_run == 5000);

  EnumerationPlan other = seeded;
  other.seed = 43;
  const FrequencyTable different = enumerate_outputs(other);
  CHECK(different.entries != first.entries);

  SUBCASE("worker count does not matter for samples either") {
    CHECK(enumerate_outputs(seeded, {.workers = 8}) == first);
  }
}

TEST_CASE("sample plans validate their parameters") {
  CHECK_THROWS_AS(enumerate_outputs({.space = {2, 2},
                                     .mode = EnumMode::Sampled,
                                     .sample_count = 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_outputs({.space = {2, 2},
                                     .mode = EnumMode::Sampled,
                                     .sample_count = 20737}),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_outputs({.space = {2, 2},
                                     .mode = EnumMode::Sampled,
                                     .sample_count = 100,
                                     .symmetry_reduction = true}),
                  std::invalid_argument);
}

TEST_CASE("the budget caps simulated machines before any work starts") {
  CHECK_THROWS_AS(enumerate_outputs({.space = {2, 2}}, {.budget = 20735}),
                  BudgetExceededError);
  CHECK_NOTHROW(enumerate_outputs({.space = {2, 2}}, {.budget = 20736}));

  // A symmetry-reduced run simulates only half the space.
  CHECK_NOTHROW(enumerate_outputs({.space = {2, 2}, .symmetry_reduction = true},
                                  {.budget = 10368}));
  CHECK_THROWS_AS(enumerate_outputs({.space = {2, 2}, .symmetry_reduction = true},
                                    {.budget = 10367}),
                  BudgetExceededError);

  CHECK_THROWS_AS(enumerate_outputs({.space = {2, 2},
                                     .mode = EnumMode::Sampled,
                                     .sample_count = 2000,
                                     .seed = 1},
                                    {.budget = 1999}),
                  BudgetExceededError);
}

TEST_CASE("symmetry-reduced enumeration completes to the full census") {
  const FrequencyTable full = enumerate_outputs({.space = {2, 2}});
  const FrequencyTable completed =
      enumerate_outputs({.space = {2, 2}, .symmetry_reduction = true});
  CHECK(completed.entries == full.entries);
  CHECK(completed.meta.machines_run == full.meta.machines_run);
  CHECK(completed.meta.halters == full.meta.halters);
  CHECK(completed.meta.max_halt_steps == full.meta.max_halt_steps);
  CHECK(completed.meta.reduction_orbit == 0);  // already expanded
}

TEST_CASE("symmetry_complete requires a recorded orbit") {
  FrequencyTable table;
  table.meta.space = {2, 2};
  table.entries["0"] = 1;
  CHECK_THROWS_AS(symmetry_complete(table), MissingOrbitError);

  table.meta.reduction_orbit = 2;
  table.meta.machines_run = 10368;
  table.entries = CountMap{{"01", 3}, {"10", 1}};
  table.meta.halters = 4;
  const FrequencyTable completed = symmetry_complete(table);
  CHECK(completed.entries == CountMap{{"01", 4}, {"10", 4}});
  CHECK(completed.meta.machines_run == 20736);
  CHECK(completed.meta.halters == 8);
  CHECK(completed.meta.reduction_orbit == 0);
}

}  // TEST_SUITE
