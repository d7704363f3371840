#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kolmo/distribution.hpp"

namespace kolmo {

// What to do with the shorter block a decomposition can leave at the end.
enum class RemainderPolicy : std::uint8_t { UseShorterBlock, Drop };

// How to cut a string into blocks: starts at 0, step, 2*step, ... where
// step = block_size - overlap.
struct DecompositionSpec {
  int block_size = 12;
  int overlap = 0;
  RemainderPolicy remainder_policy = RemainderPolicy::UseShorterBlock;
};

// Blocks of `s` in order of their start positions. Every block has length
// block_size except possibly one final shorter block, which appears only
// when the full blocks do not already reach the end of the string and the
// policy keeps it. Overlapping blocks duplicate symbols by design.
std::vector<std::string> decompose_1d(const std::string& s, const DecompositionSpec& spec);

// Aggregate of one block-decomposition complexity estimate.
struct BdmResult {
  double value = 0.0;                   // bits
  std::size_t blocks = 0;               // blocks the decomposition produced
  std::size_t distinct_blocks = 0;      // distinct block types among them
  std::size_t extrapolated_blocks = 0;  // types whose K was extrapolated

  friend bool operator==(const BdmResult&, const BdmResult&) = default;
};

// Block-decomposition complexity: group blocks into distinct types p with
// multiplicities n_p and sum log2(n_p) + K(p) over the types.
BdmResult bdm_1d(const std::string& s, const ComplexityTable& table,
                 const DecompositionSpec& spec);

// Rectangular binary pattern, cells row-major over {0,1}.
struct GridPattern {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> cells;

  std::uint8_t at(std::size_t row, std::size_t col) const {
    return cells[row * cols + col];
  }

  friend bool operator==(const GridPattern&, const GridPattern&) = default;
};

// Reads lines of '0'/'1' characters of equal length; malformed input
// raises TableParseError naming the offending line.
GridPattern parse_grid(std::istream& in, const std::string& source = "<stream>");
GridPattern parse_grid(const std::filesystem::path& path);

// Rows joined with '-' (e.g. "0101-1010-0101-1010"), the key format used
// by 2D complexity tables.
std::string serialize_grid(const GridPattern& grid);

// Non-overlapping block x block tiles in row-major order of their origins;
// edge remainders become smaller rectangles kept or dropped per policy.
std::vector<GridPattern> decompose_2d(const GridPattern& grid, int block,
                                      RemainderPolicy policy = RemainderPolicy::UseShorterBlock);

// Same aggregation as bdm_1d over serialized sub-grid types.
BdmResult bdm_2d(const GridPattern& grid, const ComplexityTable& table2d, int block,
                 RemainderPolicy policy = RemainderPolicy::UseShorterBlock);

// Shannon entropy of the symbol distribution of `s`, in bits per symbol.
double shannon_entropy(const std::string& s);

// Shannon entropy of the distribution of all length-`block_size` sliding
// windows of `s` (step 1), in bits per block.
double block_entropy(const std::string& s, int block_size);

}  // namespace kolmo
