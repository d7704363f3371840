#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

#include "kolmo/distribution.hpp"
#include "kolmo/machine.hpp"

namespace kolmo {

// Thrown when a run would simulate more machines than the caller's budget.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by symmetry_complete when the input does not record an orbit size.
class MissingOrbitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Size of the (n,m) machine space: (2*m*(n+1))^(n*m) — one mixed-radix
// digit per table entry, each choosing among write (m) x move (2) x
// next-state (n+1) alternatives. Throws std::overflow_error when the count
// does not fit in 64 bits and std::invalid_argument for a malformed spec.
std::uint64_t machine_count(const MachineSpec& spec);

// Mixed-radix decoding of an index into a transition table. Table entries
// are ordered by (state, read symbol) with entry (1,0) least significant;
// within one digit the sub-order is write symbol, then move (Left before
// Right), then next state (1..n, then Halt). Index 0 is therefore the
// machine whose every entry is (write 0, Left, state 1); the last index is
// all (write m-1, Right, Halt). encode_index inverts decode_index.
Machine decode_index(const MachineSpec& spec, std::uint64_t index);
std::uint64_t encode_index(const Machine& machine);

// Mirror representatives are the machines whose (state 1, read 0) entry
// moves Right; mirroring pairs each with a distinct non-representative, so
// they are exactly half the space.
std::uint64_t reduced_machine_count(const MachineSpec& spec);

// Full-space index of the reduced_index-th mirror representative.
std::uint64_t reduced_to_full_index(const MachineSpec& spec, std::uint64_t reduced_index);

// Seeded bijection on [0, size): a 4-round Feistel network over the
// smallest even-width power-of-two domain, cycle-walking values back into
// range. Gives uniform sampling without replacement in O(1) memory.
class IndexPermutation {
 public:
  IndexPermutation(std::uint64_t size, std::uint64_t seed);

  // position < size; distinct positions map to distinct indices < size.
  std::uint64_t operator()(std::uint64_t position) const;

  std::uint64_t size() const { return size_; }

 private:
  std::uint64_t permute_once(std::uint64_t value) const;

  std::uint64_t size_;
  unsigned half_bits_;
  std::uint64_t half_mask_;
  std::array<std::uint64_t, 4> round_keys_;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// What to run: the whole space, or `sample_count` seeded draws without
// replacement. cutoff 0 means default_cutoff(space).
struct EnumerationPlan {
  MachineSpec space;
  EnumMode mode = EnumMode::Exhaustive;
  std::uint64_t sample_count = 0;  // Sampled mode only
  std::uint64_t seed = 0;          // Sampled mode only
  std::uint32_t cutoff = 0;
  bool symmetry_reduction = false;  // run mirror representatives, complete at the end
};

// Execution envelope, independent of what is enumerated. The budget caps
// machines actually simulated; exceeding it throws before any work starts.
struct ExecutionOptions {
  int workers = 1;
  std::uint64_t budget = kDefaultBudget;
};

// Step cutoff used when a plan leaves it at 0: 107 for four-state spaces,
// 500 for five-state ones, 1000 otherwise.
std::uint32_t default_cutoff(const MachineSpec& spec);

// Runs every planned machine from the blank tape and tallies halting
// outputs. The result is identical for any worker count, and for
// symmetry-reduced vs. full exhaustive enumeration.
FrequencyTable enumerate_outputs(const EnumerationPlan& plan,
                                 const ExecutionOptions& options = {});

// Tallies the contiguous index sub-range [first, last) of an exhaustive
// enumeration; chunk tables merge() into exactly the single-pass table.
FrequencyTable enumerate_index_range(const MachineSpec& spec, std::uint64_t first,
                                     std::uint64_t last, std::uint32_t cutoff,
                                     const ExecutionOptions& options = {});

// Expands a table built over mirror representatives (meta.reduction_orbit
// == 2) to the full space: every output also contributes its reversal, and
// machine/halter totals double. The observed halting-time maximum is
// already exact, since mirroring preserves step counts.
FrequencyTable symmetry_complete(const FrequencyTable& partial);

}  // namespace kolmo
