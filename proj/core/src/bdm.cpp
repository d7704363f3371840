#include "kolmo/bdm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <stdexcept>

namespace kolmo {

namespace {

void validate_decomposition(const DecompositionSpec& spec) {
  if (spec.block_size < 1) throw std::invalid_argument("block size must be positive");
  if (spec.overlap < 0) throw std::invalid_argument("overlap cannot be negative");
  if (spec.overlap >= spec.block_size)
    throw std::invalid_argument("overlap must be smaller than the block size");
}

// Shared multiset aggregation behind bdm_1d and bdm_2d.
BdmResult aggregate_blocks(const std::vector<std::string>& blocks,
                           const ComplexityTable& table) {
  std::map<std::string, std::size_t, OutputOrder> multiplicity;
  for (const std::string& block : blocks) ++multiplicity[block];

  BdmResult result;
  result.blocks = blocks.size();
  result.distinct_blocks = multiplicity.size();
  for (const auto& [block, count] : multiplicity) {
    const KLookup k = lookup_K(table, block);
    if (k.extrapolated) ++result.extrapolated_blocks;
    result.value += std::log2(static_cast<double>(count)) + k.k;
  }
  return result;
}

}  // namespace

std::vector<std::string> decompose_1d(const std::string& s, const DecompositionSpec& spec) {
  validate_decomposition(spec);
  if (s.empty()) throw std::runtime_error("cannot decompose an empty string");

  const std::size_t block = static_cast<std::size_t>(spec.block_size);
  const std::size_t step = static_cast<std::size_t>(spec.block_size - spec.overlap);
  std::vector<std::string> blocks;
  for (std::size_t start = 0; start < s.size(); start += step) {
    if (start + block <= s.size()) {
      blocks.push_back(s.substr(start, block));
      if (start + block == s.size()) break;  // the string ends on a block boundary
    } else {
      // The tail is not covered by any full block; at most one shorter
      // block represents it.
      if (spec.remainder_policy == RemainderPolicy::UseShorterBlock)
        blocks.push_back(s.substr(start));
      break;
    }
  }
  return blocks;
}

BdmResult bdm_1d(const std::string& s, const ComplexityTable& table,
                 const DecompositionSpec& spec) {
  return aggregate_blocks(decompose_1d(s, spec), table);
}

GridPattern parse_grid(std::istream& in, const std::string& source) {
  GridPattern grid;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty())
      throw TableParseError("empty line in grid", source, line_no);
    if (grid.rows == 0) {
      grid.cols = line.size();
    } else if (line.size() != grid.cols) {
      throw TableParseError("row has " + std::to_string(line.size()) +
                                " cells, expected " + std::to_string(grid.cols),
                            source, line_no);
    }
    for (const char c : line) {
      if (c != '0' && c != '1')
        throw TableParseError(std::string("invalid cell '") + c + "'", source, line_no);
      grid.cells.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    ++grid.rows;
  }
  if (grid.rows == 0) throw TableParseError("grid file is empty", source, 1);
  return grid;
}

GridPattern parse_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return parse_grid(in, path.string());
}

std::string serialize_grid(const GridPattern& grid) {
  std::string out;
  out.reserve(grid.cells.size() + (grid.rows == 0 ? 0 : grid.rows - 1));
  for (std::size_t r = 0; r < grid.rows; ++r) {
    if (r != 0) out.push_back('-');
    for (std::size_t c = 0; c < grid.cols; ++c)
      out.push_back(static_cast<char>('0' + grid.at(r, c)));
  }
  return out;
}

std::vector<GridPattern> decompose_2d(const GridPattern& grid, int block,
                                      RemainderPolicy policy) {
  if (block < 1) throw std::invalid_argument("block size must be positive");
  if (grid.rows == 0 || grid.cols == 0 || grid.cells.size() != grid.rows * grid.cols)
    throw std::runtime_error("malformed grid pattern");

  const std::size_t size = static_cast<std::size_t>(block);
  std::vector<GridPattern> tiles;
  for (std::size_t row0 = 0; row0 < grid.rows; row0 += size) {
    for (std::size_t col0 = 0; col0 < grid.cols; col0 += size) {
      GridPattern tile;
      tile.rows = std::min(size, grid.rows - row0);
      tile.cols = std::min(size, grid.cols - col0);
      if (policy == RemainderPolicy::Drop && (tile.rows < size || tile.cols < size))
        continue;
      tile.cells.reserve(tile.rows * tile.cols);
      for (std::size_t r = 0; r < tile.rows; ++r)
        for (std::size_t c = 0; c < tile.cols; ++c)
          tile.cells.push_back(grid.at(row0 + r, col0 + c));
      tiles.push_back(std::move(tile));
    }
  }
  return tiles;
}

BdmResult bdm_2d(const GridPattern& grid, const ComplexityTable& table2d, int block,
                 RemainderPolicy policy) {
  std::vector<std::string> keys;
  for (const GridPattern& tile : decompose_2d(grid, block, policy))
    keys.push_back(serialize_grid(tile));
  return aggregate_blocks(keys, table2d);
}

double shannon_entropy(const std::string& s) {
  if (s.empty()) throw std::runtime_error("cannot take the entropy of an empty string");
  std::array<std::size_t, 256> histogram{};
  for (const unsigned char c : s) ++histogram[c];
  const double total = static_cast<double>(s.size());
  double entropy = 0.0;
  for (const std::size_t count : histogram) {
    if (count == 0) continue;
    const double f = static_cast<double>(count) / total;
    entropy -= f * std::log2(f);
  }
  return entropy;
}

double block_entropy(const std::string& s, int block_size) {
  if (block_size < 1) throw std::invalid_argument("block size must be positive");
  if (s.size() < static_cast<std::size_t>(block_size))
    throw std::runtime_error("string of length " + std::to_string(s.size()) +
                             " is shorter than the block size " +
                             std::to_string(block_size));
  const std::size_t block = static_cast<std::size_t>(block_size);
  const std::size_t windows = s.size() - block + 1;
  std::map<std::string, std::size_t> histogram;
  for (std::size_t start = 0; start < windows; ++start)
    ++histogram[s.substr(start, block)];
  double entropy = 0.0;
  for (const auto& [window, count] : histogram) {
    const double f = static_cast<double>(count) / static_cast<double>(windows);
    entropy -= f * std::log2(f);
  }
  return entropy;
}

}  // namespace kolmo
