#pragma once

// Frozen census of the (2,2) machine space at cutoff 1000, computed by the
// reference implementation in oracle_tm.hpp and pinned as data. Several
// suites assert against it; test_enumerate.cpp re-derives it live.

#include <cstdint>

#include "kolmo/distribution.hpp"

namespace frozen {

inline const kolmo::CountMap& two_state_counts() {
  static const kolmo::CountMap counts = {
      {"0", 3456}, {"1", 3456}, {"00", 728}, {"01", 704}, {"10", 704},
      {"11", 680}, {"001", 4},  {"010", 4},  {"011", 8},  {"100", 4},
      {"101", 4},  {"110", 8},  {"111", 8},  {"1001", 4}, {"1011", 4},
      {"1101", 4}, {"1111", 4}};
  return counts;
}

inline constexpr std::uint64_t kTwoStateHalters = 9784;
inline constexpr std::uint64_t kTwoStateMachines = 20736;
inline constexpr std::uint32_t kTwoStateMaxSteps = 6;

// The census as a fully described in-memory table, exactly as a fresh
// exhaustive enumeration at the default cutoff produces it.
inline kolmo::FrequencyTable two_state_table() {
  kolmo::FrequencyTable table;
  table.entries = two_state_counts();
  table.meta.space = {2, 2};
  table.meta.mode = kolmo::EnumMode::Exhaustive;
  table.meta.cutoff = 1000;
  table.meta.machines_run = kTwoStateMachines;
  table.meta.halters = kTwoStateHalters;
  table.meta.max_halt_steps = kTwoStateMaxSteps;
  return table;
}

}  // namespace frozen
