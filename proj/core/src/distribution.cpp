#include "kolmo/distribution.hpp"

#include <algorithm>
#include <cfloat>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace kolmo {

namespace {

std::string mode_name(EnumMode mode) {
  switch (mode) {
    case EnumMode::Exhaustive: return "exhaustive";
    case EnumMode::Sampled: return "sampled";
    case EnumMode::Unknown: break;
  }
  return "unknown";
}

void write_meta_lines(const TableMeta& meta, std::ostream& out) {
  if (meta.mode != EnumMode::Unknown) {
    out << "# space=(" << meta.space.states << ',' << meta.space.symbols
        << ") mode=" << mode_name(meta.mode) << " cutoff=" << meta.cutoff
        << " seed=" << meta.seed << " machines_run=" << meta.machines_run
        << " halters=" << meta.halters << "\n";
    out << "# max_halt_steps=" << meta.max_halt_steps << "\n";
    if (meta.reduction_orbit != 0)
      out << "# reduction_orbit=" << meta.reduction_orbit << "\n";
  } else if (meta.provenance == Provenance::Pooled) {
    out << "# pooled machines_run=" << meta.machines_run
        << " halters=" << meta.halters << "\n";
  }
}

std::string format_k(double k) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", k);
  return buffer;
}

bool valid_key(const std::string& key) {
  if (key.empty()) return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '-';
  });
}

[[noreturn]] void fail(const std::string& message, const std::string& source, int line) {
  throw TableParseError(message, source, line);
}

// Shared line-oriented reader for both table kinds: comment lines first,
// then the expected header, then `key,value` rows in any order.
struct RawRow {
  std::string key;
  std::string value;
  int line = 0;
};

struct RawTable {
  TableMeta meta;
  std::vector<RawRow> rows;
};

RawTable read_raw(std::istream& in, const std::string& source, const char* header) {
  RawTable raw;
  raw.meta.provenance = Provenance::Imported;
  raw.meta.source = source;

  bool meta_seen = false;
  int meta_line = 0;
  bool header_seen = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen && !line.empty() && line[0] == '#') {
      int states = 0, symbols = 0;
      char mode_buf[32] = {0};
      unsigned long long cutoff = 0, seed = 0, run = 0, halt = 0;
      unsigned value32 = 0;
      if (std::sscanf(line.c_str(),
                      "# space=(%d,%d) mode=%31s cutoff=%llu seed=%llu"
                      " machines_run=%llu halters=%llu",
                      &states, &symbols, mode_buf, &cutoff, &seed, &run,
                      &halt) == 7) {
        std::string mode = mode_buf;
        if (mode != "exhaustive" && mode != "sampled")
          fail("unrecognized mode '" + mode + "'", source, line_no);
        raw.meta.space = {states, symbols};
        raw.meta.mode = mode == "exhaustive" ? EnumMode::Exhaustive : EnumMode::Sampled;
        raw.meta.cutoff = static_cast<std::uint32_t>(cutoff);
        raw.meta.seed = seed;
        raw.meta.machines_run = run;
        raw.meta.halters = halt;
        meta_seen = true;
        meta_line = line_no;
      } else if (std::sscanf(line.c_str(), "# max_halt_steps=%u", &value32) == 1) {
        raw.meta.max_halt_steps = value32;
      } else if (std::sscanf(line.c_str(), "# reduction_orbit=%u", &value32) == 1) {
        raw.meta.reduction_orbit = value32;
      } else if (std::sscanf(line.c_str(), "# pooled machines_run=%llu halters=%llu",
                             &run, &halt) == 2) {
        raw.meta.provenance = Provenance::Pooled;
        raw.meta.machines_run = run;
        raw.meta.halters = halt;
        meta_seen = true;
        meta_line = line_no;
      }
      // Other comment lines pass through silently; canonical export drops them.
      continue;
    }
    if (!header_seen) {
      if (line != header)
        fail(std::string("expected header '") + header + "', got '" + line + "'",
             source, line_no);
      header_seen = true;
      continue;
    }
    if (line.empty()) fail("empty line", source, line_no);
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail("missing ',' separator", source, line_no);
    std::string key = line.substr(0, comma);
    std::string value = line.substr(comma + 1);
    if (!valid_key(key)) fail("malformed string '" + key + "'", source, line_no);
    raw.rows.push_back({std::move(key), std::move(value), line_no});
  }
  if (!header_seen)
    fail(std::string("expected header '") + header + "'", source, line_no + 1);
  if (!meta_seen) {
    raw.meta = TableMeta{};
    raw.meta.provenance = Provenance::Imported;
  } else if (raw.meta.mode != EnumMode::Unknown &&
             raw.meta.halters > raw.meta.machines_run) {
    fail("halters exceed machines_run", source, meta_line);
  }
  raw.meta.source = source;
  return raw;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t sum = 0;
  if (__builtin_add_overflow(a, b, &sum))
    throw std::overflow_error(std::string(what) + " overflows 64 bits");
  return sum;
}

}  // namespace

TableParseError::TableParseError(const std::string& message,
                                 const std::string& source, int line)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      line_(line) {}

double to_probability(const FrequencyTable& table, const std::string& s) {
  if (table.entries.empty()) throw EmptyTableError("frequency table is empty");
  if (table.meta.halters == 0) throw EmptyTableError("frequency table has no halters");
  const auto it = table.entries.find(s);
  if (it == table.entries.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(table.meta.halters);
}

ComplexityTable to_complexity(const FrequencyTable& table) {
  if (table.entries.empty()) throw EmptyTableError("frequency table is empty");
  if (table.meta.halters == 0) throw EmptyTableError("frequency table has no halters");
  ComplexityTable out;
  out.meta = table.meta;
  const double halters = static_cast<double>(table.meta.halters);
  for (const auto& [s, count] : table.entries) {
    const double k = -std::log2(static_cast<double>(count) / halters);
    out.entries.emplace(s, k);
    out.max_k = std::max(out.max_k, k);
  }
  return out;
}

KLookup lookup_K(const ComplexityTable& table, const std::string& s) {
  const auto it = table.entries.find(s);
  if (it != table.entries.end()) return {it->second, false};
  return {table.max_k + 1.0, true};
}

FrequencyTable merge(const FrequencyTable& a, const FrequencyTable& b) {
  const auto is_identity = [](const FrequencyTable& t) {
    return t.entries.empty() && t.meta.machines_run == 0 && t.meta.halters == 0;
  };
  if (is_identity(b)) return a;
  if (is_identity(a)) return b;
  if (a.meta.space != b.meta.space)
    throw TableMismatchError("cannot merge tables over different machine spaces");
  if (a.meta.cutoff != b.meta.cutoff)
    throw TableMismatchError("cannot merge tables with different cutoffs");
  if (a.meta.mode != b.meta.mode)
    throw TableMismatchError("cannot merge tables with different modes");
  if (a.meta.reduction_orbit != b.meta.reduction_orbit)
    throw TableMismatchError("cannot merge reduced with non-reduced tables");

  FrequencyTable out = a;
  for (const auto& [s, count] : b.entries) {
    auto [it, inserted] = out.entries.try_emplace(s, count);
    if (!inserted) it->second = checked_add(it->second, count, "merged count");
  }
  out.meta.machines_run = checked_add(a.meta.machines_run, b.meta.machines_run, "machines_run");
  out.meta.halters = checked_add(a.meta.halters, b.meta.halters, "halters");
  out.meta.max_halt_steps = std::max(a.meta.max_halt_steps, b.meta.max_halt_steps);
  if (a.meta.seed != b.meta.seed) out.meta.seed = 0;
  return out;
}

FrequencyTable pool(const std::vector<FrequencyTable>& tables) {
  if (tables.empty()) throw std::invalid_argument("pool() needs at least one table");
  FrequencyTable out;
  out.meta.provenance = Provenance::Pooled;
  out.meta.mode = EnumMode::Unknown;
  std::string sources;
  for (const FrequencyTable& table : tables) {
    for (const auto& [s, count] : table.entries) {
      auto [it, inserted] = out.entries.try_emplace(s, count);
      if (!inserted) it->second = checked_add(it->second, count, "pooled count");
    }
    out.meta.machines_run =
        checked_add(out.meta.machines_run, table.meta.machines_run, "machines_run");
    out.meta.halters = checked_add(out.meta.halters, table.meta.halters, "halters");
    out.meta.max_halt_steps = std::max(out.meta.max_halt_steps, table.meta.max_halt_steps);
    if (!sources.empty()) sources += '+';
    sources += "(" + std::to_string(table.meta.space.states) + "," +
               std::to_string(table.meta.space.symbols) + ")";
  }
  out.meta.source = sources;
  return out;
}

void export_table(const FrequencyTable& table, std::ostream& out) {
  write_meta_lines(table.meta, out);
  out << "string,count\n";
  for (const auto& [s, count] : table.entries) out << s << ',' << count << "\n";
}

void export_table(const ComplexityTable& table, std::ostream& out) {
  write_meta_lines(table.meta, out);
  out << "string,K\n";
  for (const auto& [s, k] : table.entries) out << s << ',' << format_k(k) << "\n";
}

namespace {
template <typename Table>
void export_to_file(const Table& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  export_table(table, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}
}  // namespace

void export_table(const FrequencyTable& table, const std::filesystem::path& path) {
  export_to_file(table, path);
}

void export_table(const ComplexityTable& table, const std::filesystem::path& path) {
  export_to_file(table, path);
}

FrequencyTable import_frequency(std::istream& in, const std::string& source) {
  RawTable raw = read_raw(in, source, "string,count");
  FrequencyTable table;
  table.meta = raw.meta;

  std::uint64_t sum = 0;
  for (const RawRow& row : raw.rows) {
    if (row.value.empty() || !std::all_of(row.value.begin(), row.value.end(),
                                          [](char c) { return c >= '0' && c <= '9'; }))
      fail("count must be a positive integer, got '" + row.value + "'", source, row.line);
    std::uint64_t count = 0;
    try {
      count = std::stoull(row.value);
    } catch (const std::exception&) {
      fail("count out of range: '" + row.value + "'", source, row.line);
    }
    if (count == 0) fail("count must be positive", source, row.line);
    const auto [it, inserted] = table.entries.emplace(row.key, count);
    if (!inserted) fail("duplicate string '" + row.key + "'", source, row.line);
    sum = checked_add(sum, count, "halter count");
  }

  if (table.meta.mode == EnumMode::Unknown && table.meta.provenance != Provenance::Pooled) {
    // Bare file: every row came from a halter, nothing else is known.
    table.meta.halters = sum;
    table.meta.machines_run = sum;
  } else if (table.meta.halters != sum) {
    fail("halters=" + std::to_string(table.meta.halters) +
             " does not match the sum of counts (" + std::to_string(sum) + ")",
         source, 1);
  }
  return table;
}

FrequencyTable import_frequency(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return import_frequency(in, path.string());
}

ComplexityTable import_complexity(std::istream& in, const std::string& source) {
  RawTable raw = read_raw(in, source, "string,K");
  ComplexityTable table;
  table.meta = raw.meta;

  for (const RawRow& row : raw.rows) {
    double k = 0.0;
    std::size_t consumed = 0;
    try {
      k = std::stod(row.value, &consumed);
    } catch (const std::exception&) {
      consumed = std::string::npos;
    }
    if (row.value.empty() || consumed != row.value.size())
      fail("K must be numeric, got '" + row.value + "'", source, row.line);
    if (!(k >= 0.0)) fail("K must be non-negative, got '" + row.value + "'", source, row.line);
    const auto [it, inserted] = table.entries.emplace(row.key, k);
    if (!inserted) fail("duplicate string '" + row.key + "'", source, row.line);
    table.max_k = std::max(table.max_k, k);
  }
  return table;
}

ComplexityTable import_complexity(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return import_complexity(in, path.string());
}

TableKind detect_table_kind(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') continue;
    if (line == "string,count") return TableKind::Frequency;
    if (line == "string,K") return TableKind::Complexity;
    fail("unrecognized header '" + line + "'", path.string(), line_no);
  }
  fail("missing header", path.string(), line_no + 1);
}

}  // namespace kolmo
