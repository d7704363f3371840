#include "kolmo/machine.hpp"

#include <algorithm>

namespace kolmo {

namespace {
constexpr std::size_t kInitialTapeCells = 4096;
}  // namespace

bool is_valid(const Machine& machine) {
  const auto& [spec, table] = machine;
  if (spec.states < 1 || spec.symbols < 2) return false;
  if (table.size() !=
      static_cast<std::size_t>(spec.states) * static_cast<std::size_t>(spec.symbols))
    return false;
  for (const Transition& t : table) {
    if (t.write >= spec.symbols) return false;
    if (t.next_state > spec.states) return false;
  }
  return true;
}

std::uint8_t Configuration::read() const {
  if (head >= 0) {
    const auto i = static_cast<std::size_t>(head);
    return i < right.size() ? right[i] : 0;
  }
  const auto i = static_cast<std::size_t>(-head - 1);
  return i < left.size() ? left[i] : 0;
}

void Configuration::write(std::uint8_t symbol) {
  if (head >= 0) {
    const auto i = static_cast<std::size_t>(head);
    if (i >= right.size()) right.resize(i + 1, 0);
    right[i] = symbol;
  } else {
    const auto i = static_cast<std::size_t>(-head - 1);
    if (i >= left.size()) left.resize(i + 1, 0);
    left[i] = symbol;
  }
}

StepResult step(const Machine& machine, Configuration& config) {
  const Transition& t = machine.at(config.state, config.read());
  config.write(t.write);
  config.head += (t.move == Move::Right) ? 1 : -1;
  config.state = t.next_state;
  return config.state == kHaltState ? StepResult::Halted : StepResult::Continue;
}

RunOutcome run_from_blank(const Machine& machine, std::uint32_t cutoff) {
  BlankTapeRunner runner;
  return runner.run(machine, cutoff);
}

BlankTapeRunner::BlankTapeRunner() : tape_(kInitialTapeCells, 0) {}

void BlankTapeRunner::grow_left(std::size_t& pos, std::size_t& lo, std::size_t& hi) {
  const std::size_t old_size = tape_.size();
  std::vector<std::uint8_t> bigger(old_size * 2, 0);
  std::copy(tape_.begin(), tape_.end(), bigger.begin() + old_size);
  tape_ = std::move(bigger);
  pos += old_size;
  lo += old_size;
  hi += old_size;
}

RunStatus BlankTapeRunner::run_into(const Machine& machine, std::uint32_t cutoff,
                                    std::string& out, std::uint32_t& steps) {
  const int symbols = machine.spec.symbols;
  const Transition* table = machine.table.data();

  std::size_t pos = tape_.size() / 2;
  std::size_t lo = pos;
  std::size_t hi = pos;
  int state = 1;
  std::uint32_t executed = 0;
  RunStatus status = RunStatus::CutoffExceeded;

  while (executed < cutoff) {
    if (pos < lo) lo = pos;
    if (pos > hi) hi = pos;
    const Transition& t =
        table[static_cast<std::size_t>(state - 1) * symbols + tape_[pos]];
    tape_[pos] = t.write;
    ++executed;
    if (t.move == Move::Right) {
      ++pos;
      if (pos + 1 >= tape_.size()) tape_.resize(tape_.size() * 2, 0);
    } else {
      if (pos == 0) grow_left(pos, lo, hi);
      --pos;
    }
    state = t.next_state;
    if (state == kHaltState) {
      status = RunStatus::Halted;
      break;
    }
  }

  out.clear();
  if (status == RunStatus::Halted) {
    out.reserve(hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i)
      out.push_back(static_cast<char>('0' + tape_[i]));
  }
  steps = executed;
  // Only visited cells were ever written; reset them for the next run.
  std::fill(tape_.begin() + lo, tape_.begin() + hi + 1, 0);
  return status;
}

RunOutcome BlankTapeRunner::run(const Machine& machine, std::uint32_t cutoff) {
  RunOutcome outcome;
  outcome.status = run_into(machine, cutoff, outcome.output, outcome.steps);
  return outcome;
}

Machine mirror(const Machine& machine) {
  Machine out = machine;
  for (Transition& t : out.table)
    t.move = (t.move == Move::Left) ? Move::Right : Move::Left;
  return out;
}

Machine complement(const Machine& machine) {
  const int m = machine.spec.symbols;
  Machine out = machine;
  for (int q = 1; q <= machine.spec.states; ++q) {
    for (int r = 0; r < m; ++r) {
      Transition t = machine.at(q, m - 1 - r);
      t.write = static_cast<std::uint8_t>(m - 1 - t.write);
      out.at(q, r) = t;
    }
  }
  return out;
}

}  // namespace kolmo
