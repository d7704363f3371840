#include "kolmo/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

namespace kolmo {

namespace {

void validate_spec(const MachineSpec& spec) {
  if (spec.states < 1) throw std::invalid_argument("machine spec needs at least 1 state");
  if (spec.symbols < 2) throw std::invalid_argument("machine spec needs at least 2 symbols");
  if (spec.symbols > 10)
    throw std::invalid_argument("machine spec supports at most 10 symbols (digit outputs)");
}

std::uint64_t digit_base(const MachineSpec& spec) {
  return 2ull * static_cast<std::uint64_t>(spec.symbols) *
         static_cast<std::uint64_t>(spec.states + 1);
}

// Decodes into a preallocated table; the hot path behind decode_index.
void decode_into(const MachineSpec& spec, std::uint64_t index, Machine& machine) {
  const int n = spec.states;
  const std::uint64_t base = digit_base(spec);
  const std::uint64_t next_states = static_cast<std::uint64_t>(n) + 1;
  for (Transition& t : machine.table) {
    const std::uint64_t digit = index % base;
    index /= base;
    const std::uint64_t next_code = digit % next_states;
    const std::uint64_t write_move = digit / next_states;
    t.next_state = static_cast<std::uint8_t>(
        next_code == static_cast<std::uint64_t>(n) ? kHaltState : next_code + 1);
    t.move = (write_move & 1) ? Move::Right : Move::Left;
    t.write = static_cast<std::uint8_t>(write_move >> 1);
  }
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Per-worker tally, merged deterministically after all workers join.
struct WorkerTally {
  CountMap counts;
  std::uint64_t halters = 0;
  std::uint32_t max_halt_steps = 0;
};

// Maps a worker-local position in [0, total) to the machine index to run.
enum class IndexSource : std::uint8_t { Direct, Reduced, Permuted };

struct EnumerationJob {
  MachineSpec spec;
  std::uint32_t cutoff = 0;
  IndexSource source = IndexSource::Direct;
  std::uint64_t offset = 0;  // added for Direct (sub-range enumeration)
  const IndexPermutation* permutation = nullptr;
};

void run_positions(const EnumerationJob& job, std::uint64_t first, std::uint64_t last,
                   WorkerTally& tally) {
  Machine machine{job.spec,
                  std::vector<Transition>(static_cast<std::size_t>(job.spec.states) *
                                          job.spec.symbols)};
  BlankTapeRunner runner;
  std::string output;
  std::uint32_t steps = 0;
  for (std::uint64_t position = first; position < last; ++position) {
    std::uint64_t index = position;
    switch (job.source) {
      case IndexSource::Direct: index += job.offset; break;
      case IndexSource::Reduced: index = reduced_to_full_index(job.spec, position); break;
      case IndexSource::Permuted: index = (*job.permutation)(position); break;
    }
    decode_into(job.spec, index, machine);
    if (runner.run_into(machine, job.cutoff, output, steps) == RunStatus::Halted) {
      ++tally.halters;
      tally.max_halt_steps = std::max(tally.max_halt_steps, steps);
      auto [it, inserted] = tally.counts.try_emplace(output, 1);
      if (!inserted) ++it->second;
    }
  }
}

// Splits [0, total) into contiguous per-worker chunks and tallies them in
// parallel. The combined result does not depend on the split because the
// per-output sums are the same for any partition of the index set.
WorkerTally run_parallel(const EnumerationJob& job, std::uint64_t total, int workers) {
  if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
  const std::uint64_t worker_count =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), std::max<std::uint64_t>(total, 1));

  WorkerTally combined;
  if (worker_count <= 1) {
    run_positions(job, 0, total, combined);
    return combined;
  }

  std::vector<WorkerTally> tallies(worker_count);
  std::vector<std::exception_ptr> failures(worker_count);
  std::vector<std::thread> threads;
  threads.reserve(worker_count);
  for (std::uint64_t w = 0; w < worker_count; ++w) {
    const std::uint64_t first = total / worker_count * w + std::min(w, total % worker_count);
    const std::uint64_t chunk = total / worker_count + (w < total % worker_count ? 1 : 0);
    threads.emplace_back([&, w, first, chunk] {
      try {
        run_positions(job, first, first + chunk, tallies[w]);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& failure : failures)
    if (failure) std::rethrow_exception(failure);

  for (WorkerTally& tally : tallies) {
    combined.halters += tally.halters;
    combined.max_halt_steps = std::max(combined.max_halt_steps, tally.max_halt_steps);
    for (auto& [output, count] : tally.counts) {
      auto [it, inserted] = combined.counts.try_emplace(output, count);
      if (!inserted) it->second += count;
    }
  }
  return combined;
}

void check_budget(std::uint64_t to_simulate, std::uint64_t budget) {
  if (to_simulate > budget)
    throw BudgetExceededError("run would simulate " + std::to_string(to_simulate) +
                              " machines, over the budget of " + std::to_string(budget));
}

}  // namespace

std::uint64_t machine_count(const MachineSpec& spec) {
  validate_spec(spec);
  const std::uint64_t base = digit_base(spec);
  const int digits = spec.states * spec.symbols;
  std::uint64_t count = 1;
  for (int i = 0; i < digits; ++i) {
    if (__builtin_mul_overflow(count, base, &count))
      throw std::overflow_error("machine count for (" + std::to_string(spec.states) +
                                "," + std::to_string(spec.symbols) +
                                ") exceeds 64 bits");
  }
  return count;
}

Machine decode_index(const MachineSpec& spec, std::uint64_t index) {
  const std::uint64_t total = machine_count(spec);
  if (index >= total)
    throw std::out_of_range("machine index " + std::to_string(index) +
                            " out of range (space has " + std::to_string(total) +
                            " machines)");
  Machine machine{spec, std::vector<Transition>(
                            static_cast<std::size_t>(spec.states) * spec.symbols)};
  decode_into(spec, index, machine);
  return machine;
}

std::uint64_t encode_index(const Machine& machine) {
  if (!is_valid(machine)) throw std::invalid_argument("cannot encode an invalid machine");
  const int n = machine.spec.states;
  const std::uint64_t base = digit_base(machine.spec);
  const std::uint64_t next_states = static_cast<std::uint64_t>(n) + 1;
  std::uint64_t index = 0;
  for (auto it = machine.table.rbegin(); it != machine.table.rend(); ++it) {
    const std::uint64_t next_code =
        it->next_state == kHaltState ? static_cast<std::uint64_t>(n) : it->next_state - 1;
    const std::uint64_t write_move =
        (static_cast<std::uint64_t>(it->write) << 1) | (it->move == Move::Right ? 1u : 0u);
    index = index * base + write_move * next_states + next_code;
  }
  return index;
}

std::uint64_t reduced_machine_count(const MachineSpec& spec) {
  return machine_count(spec) / 2;
}

std::uint64_t reduced_to_full_index(const MachineSpec& spec, std::uint64_t reduced_index) {
  // Digit 0 encodes the (state 1, read 0) entry; its move bit selects the
  // mirror representative. Spread the reduced index over the Right-moving
  // half of digit 0 and pass the rest through unchanged.
  const std::uint64_t base = digit_base(spec);
  const std::uint64_t next_states = static_cast<std::uint64_t>(spec.states) + 1;
  const std::uint64_t half = base / 2;
  const std::uint64_t slot = reduced_index % half;
  const std::uint64_t rest = reduced_index / half;
  const std::uint64_t write_move = 2 * (slot / next_states) + 1;  // move bit forced to Right
  const std::uint64_t digit0 = write_move * next_states + slot % next_states;
  return digit0 + base * rest;
}

IndexPermutation::IndexPermutation(std::uint64_t size, std::uint64_t seed) : size_(size) {
  // Smallest even bit width whose power-of-two domain covers [0, size).
  const unsigned needed = size <= 1 ? 0 : std::bit_width(size - 1);
  const unsigned domain_bits = (needed + 1) & ~1u;
  half_bits_ = domain_bits / 2;
  half_mask_ = half_bits_ == 0 ? 0 : ((std::uint64_t{1} << half_bits_) - 1);
  std::uint64_t state = seed;
  for (std::uint64_t& key : round_keys_) key = splitmix64_next(state);
}

std::uint64_t IndexPermutation::permute_once(std::uint64_t value) const {
  if (half_bits_ == 0) return value;
  std::uint64_t left = value & half_mask_;
  std::uint64_t right = value >> half_bits_;
  for (const std::uint64_t key : round_keys_) {
    std::uint64_t mix = right;
    mix ^= key;
    mix = (mix ^ (mix >> 30)) * 0xbf58476d1ce4e5b9ull;
    mix = (mix ^ (mix >> 27)) * 0x94d049bb133111ebull;
    mix ^= mix >> 31;
    const std::uint64_t next_right = left ^ (mix & half_mask_);
    left = right;
    right = next_right;
  }
  return (right << half_bits_) | left;
}

std::uint64_t IndexPermutation::operator()(std::uint64_t position) const {
  if (position >= size_)
    throw std::out_of_range("permutation position out of range");
  std::uint64_t value = permute_once(position);
  while (value >= size_) value = permute_once(value);
  return value;
}

std::uint32_t default_cutoff(const MachineSpec& spec) {
  if (spec.states == 4) return 107;
  if (spec.states == 5) return 500;
  return 1000;
}

FrequencyTable enumerate_outputs(const EnumerationPlan& plan, const ExecutionOptions& options) {
  validate_spec(plan.space);
  const std::uint64_t total = machine_count(plan.space);
  const std::uint32_t cutoff = plan.cutoff == 0 ? default_cutoff(plan.space) : plan.cutoff;

  EnumerationJob job{plan.space, cutoff, IndexSource::Direct, 0, nullptr};
  std::uint64_t positions = 0;
  IndexPermutation permutation(0, 0);

  switch (plan.mode) {
    case EnumMode::Exhaustive:
      if (plan.symmetry_reduction) {
        job.source = IndexSource::Reduced;
        positions = total / 2;
      } else {
        positions = total;
      }
      break;
    case EnumMode::Sampled:
      if (plan.symmetry_reduction)
        throw std::invalid_argument("symmetry reduction requires exhaustive mode");
      if (plan.sample_count == 0)
        throw std::invalid_argument("sample count must be positive");
      if (plan.sample_count > total)
        throw std::invalid_argument("sample count exceeds the machine space (" +
                                    std::to_string(total) + ")");
      permutation = IndexPermutation(total, plan.seed);
      job.source = IndexSource::Permuted;
      job.permutation = &permutation;
      positions = plan.sample_count;
      break;
    case EnumMode::Unknown:
      throw std::invalid_argument("enumeration plan needs Exhaustive or Sampled mode");
  }

  check_budget(positions, options.budget);
  WorkerTally tally = run_parallel(job, positions, options.workers);

  FrequencyTable table;
  table.entries = std::move(tally.counts);
  table.meta.space = plan.space;
  table.meta.mode = plan.mode;
  table.meta.cutoff = cutoff;
  table.meta.seed = plan.mode == EnumMode::Sampled ? plan.seed : 0;
  table.meta.machines_run = positions;
  table.meta.halters = tally.halters;
  table.meta.max_halt_steps = tally.max_halt_steps;
  table.meta.reduction_orbit = plan.symmetry_reduction ? 2 : 0;
  table.meta.provenance = Provenance::Built;
  if (plan.symmetry_reduction) return symmetry_complete(table);
  return table;
}

FrequencyTable enumerate_index_range(const MachineSpec& spec, std::uint64_t first,
                                     std::uint64_t last, std::uint32_t cutoff,
                                     const ExecutionOptions& options) {
  validate_spec(spec);
  const std::uint64_t total = machine_count(spec);
  if (first > last || last > total)
    throw std::out_of_range("index range [" + std::to_string(first) + "," +
                            std::to_string(last) + ") outside the space of " +
                            std::to_string(total) + " machines");
  const std::uint32_t effective_cutoff = cutoff == 0 ? default_cutoff(spec) : cutoff;
  check_budget(last - first, options.budget);

  EnumerationJob job{spec, effective_cutoff, IndexSource::Direct, first, nullptr};
  WorkerTally tally = run_parallel(job, last - first, options.workers);

  FrequencyTable table;
  table.entries = std::move(tally.counts);
  table.meta.space = spec;
  table.meta.mode = EnumMode::Exhaustive;
  table.meta.cutoff = effective_cutoff;
  table.meta.machines_run = last - first;
  table.meta.halters = tally.halters;
  table.meta.max_halt_steps = tally.max_halt_steps;
  table.meta.provenance = Provenance::Built;
  return table;
}

FrequencyTable symmetry_complete(const FrequencyTable& partial) {
  if (partial.meta.reduction_orbit == 0)
    throw MissingOrbitError("table does not record a symmetry-reduction orbit size");
  if (partial.meta.reduction_orbit != 2)
    throw MissingOrbitError("unsupported symmetry-reduction orbit size " +
                            std::to_string(partial.meta.reduction_orbit));
  if (partial.meta.machines_run > std::numeric_limits<std::uint64_t>::max() / 2)
    throw std::overflow_error("completed machine count overflows 64 bits");

  FrequencyTable full;
  full.meta = partial.meta;
  full.meta.reduction_orbit = 0;
  full.meta.machines_run = partial.meta.machines_run * 2;
  full.meta.halters = partial.meta.halters * 2;
  for (const auto& [output, count] : partial.entries) {
    std::string reversed(output.rbegin(), output.rend());
    auto [it, inserted] = full.entries.try_emplace(output, count);
    if (!inserted) it->second += count;
    auto [rit, rinserted] = full.entries.try_emplace(std::move(reversed), count);
    if (!rinserted) rit->second += count;
  }
  return full;
}

}  // namespace kolmo
