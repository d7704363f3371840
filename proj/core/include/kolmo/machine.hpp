#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kolmo {

// Head movement; every transition moves exactly one cell.
enum class Move : std::uint8_t { Left = 0, Right = 1 };

// Next-state value marking a halting transition. Working states are 1..n.
inline constexpr std::uint8_t kHaltState = 0;

// Shape of a machine space: n working states over an alphabet {0..m-1}
// whose blank symbol is 0.
struct MachineSpec {
  int states = 0;
  int symbols = 0;

  friend bool operator==(const MachineSpec&, const MachineSpec&) = default;
};

// One table entry: what to write, where to move, which state to enter.
// The write and move apply even when next_state is kHaltState.
struct Transition {
  std::uint8_t write = 0;
  Move move = Move::Left;
  std::uint8_t next_state = kHaltState;

  friend bool operator==(const Transition&, const Transition&) = default;
};

// Total transition table over `spec`: one entry per (state, read symbol)
// pair, stored row-major with the entry for (state q, read r) at index
// (q - 1) * symbols + r.
struct Machine {
  MachineSpec spec;
  std::vector<Transition> table;

  const Transition& at(int state, int read) const {
    return table[static_cast<std::size_t>(state - 1) * spec.symbols + read];
  }
  Transition& at(int state, int read) {
    return table[static_cast<std::size_t>(state - 1) * spec.symbols + read];
  }

  friend bool operator==(const Machine&, const Machine&) = default;
};

// Structural consistency: spec bounds, table totality, entry ranges.
bool is_valid(const Machine& machine);

// A full machine configuration for the single-step interface. Cells at
// position p >= 0 live in `right[p]`, cells at p < 0 in `left[-1-p]`;
// unstored cells are blank (0).
struct Configuration {
  std::vector<std::uint8_t> right;
  std::vector<std::uint8_t> left;
  std::int64_t head = 0;
  int state = 1;

  std::uint8_t read() const;
  void write(std::uint8_t symbol);
};

enum class StepResult : std::uint8_t { Continue, Halted };

// Applies exactly one transition of `machine` to `config`: writes the
// symbol, moves the head one cell, changes state. Returns Halted when the
// transition's next state is kHaltState (its write and move still apply).
StepResult step(const Machine& machine, Configuration& config);

enum class RunStatus : std::uint8_t { Halted, CutoffExceeded };

// Result of a bounded run from the blank tape. `output` holds one digit
// character per tape symbol over the span of visited head positions and is
// empty unless the run halted. A halting run always visits at least the
// start cell, so its output is non-empty.
struct RunOutcome {
  RunStatus status = RunStatus::CutoffExceeded;
  std::string output;
  std::uint32_t steps = 0;

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

// Runs `machine` from the all-blank tape (state 1, head at cell 0) for at
// most `cutoff` steps. On halt the output is the tape between the minimum
// and maximum head positions occupied at the start of any step, inclusive,
// read left to right.
RunOutcome run_from_blank(const Machine& machine, std::uint32_t cutoff);

// Blank-tape simulator that reuses its tape buffer between runs, so
// enumerating millions of machines does not allocate per machine.
class BlankTapeRunner {
 public:
  BlankTapeRunner();

  RunOutcome run(const Machine& machine, std::uint32_t cutoff);

  // As run(), but writes the output into `out` (cleared first) so callers
  // can reuse string capacity across calls.
  RunStatus run_into(const Machine& machine, std::uint32_t cutoff,
                     std::string& out, std::uint32_t& steps);

 private:
  void grow_left(std::size_t& pos, std::size_t& lo, std::size_t& hi);

  std::vector<std::uint8_t> tape_;
};

// Swaps Left and Right in every transition. Running the mirrored machine
// from blank yields the reversed output in the same number of steps, since
// the blank tape is symmetric under reflection.
Machine mirror(const Machine& machine);

// Relabels symbols k <-> (m-1-k) in every read and write position. This is
// a table-level involution only: because the blank symbol stays 0, the
// relabeled machine starts on what the original would see as an all-(m-1)
// tape, so blank-tape outputs are NOT complemented in general (see tests).
Machine complement(const Machine& machine);

}  // namespace kolmo
