#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "kolmo/machine.hpp"

namespace kolmo {

// Canonical ordering for output strings: by length, then lexicographic.
struct OutputOrder {
  bool operator()(const std::string& a, const std::string& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using CountMap = std::map<std::string, std::uint64_t, OutputOrder>;
using ValueMap = std::map<std::string, double, OutputOrder>;

enum class EnumMode : std::uint8_t { Exhaustive, Sampled, Unknown };
enum class Provenance : std::uint8_t { Built, Imported, Pooled };

// How a table was produced. `mode` is Unknown for tables read from files
// that carried no production metadata; such tables round-trip without
// gaining any.
struct TableMeta {
  MachineSpec space{};
  EnumMode mode = EnumMode::Unknown;
  std::uint32_t cutoff = 0;
  std::uint64_t seed = 0;
  std::uint64_t machines_run = 0;
  std::uint64_t halters = 0;
  std::uint32_t max_halt_steps = 0;
  // 0 for full tables; 2 when entries cover only one representative per
  // mirror pair and symmetry_complete has not yet expanded them.
  std::uint32_t reduction_orbit = 0;
  Provenance provenance = Provenance::Built;
  std::string source;  // in-memory label only (file path, pool inputs, ...)

  friend bool operator==(const TableMeta&, const TableMeta&) = default;
};

// Halting-output counts over an enumerated or sampled machine space.
struct FrequencyTable {
  CountMap entries;
  TableMeta meta;

  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;
};

// Estimated complexity K in bits per string (or per serialized grid block).
struct ComplexityTable {
  ValueMap entries;
  TableMeta meta;
  double max_k = 0.0;

  friend bool operator==(const ComplexityTable&, const ComplexityTable&) = default;
};

// Parse failure in a table or grid file; carries the 1-based line number.
class TableParseError : public std::runtime_error {
 public:
  TableParseError(const std::string& message, const std::string& source, int line);
  int line() const { return line_; }

 private:
  int line_;
};

// merge() precondition failure: tables whose metadata differs.
class TableMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Empirical algorithmic probability m(s): halter-relative output frequency,
// 0 for strings the table never saw.
double to_probability(const FrequencyTable& table, const std::string& s);

// K(s) = -log2(count(s) / halters) for every entry, in bits.
ComplexityTable to_complexity(const FrequencyTable& table);

struct KLookup {
  double k = 0.0;
  bool extrapolated = false;

  friend bool operator==(const KLookup&, const KLookup&) = default;
};

// Stored K when present; otherwise the table's maximum K plus one, flagged
// as extrapolated. (For an empty table the maximum is taken as 0.)
KLookup lookup_K(const ComplexityTable& table, const std::string& s);

// Pointwise count addition for tables produced over the same machine space
// with the same cutoff and mode (i.e. chunks of one run): machines_run and
// halters add, the observed halting-time maximum maxes. A default-constructed
// table acts as the identity.
FrequencyTable merge(const FrequencyTable& a, const FrequencyTable& b);

// Pointwise count addition across tables from *different* machine spaces,
// which merge() deliberately rejects. The result carries Pooled provenance
// and aggregate totals only; each space contributes in proportion to its
// halter population.
FrequencyTable pool(const std::vector<FrequencyTable>& tables);

// ---------------------------------------------------------------------------
// CSV persistence. UTF-8, Unix newlines, rows in length-then-lex order.
// Frequency files: header `string,count`; complexity files: header
// `string,K` with exactly 6 decimal places. Production metadata travels in
// `#` comment lines before the header and is optional on import.
// ---------------------------------------------------------------------------

void export_table(const FrequencyTable& table, std::ostream& out);
void export_table(const ComplexityTable& table, std::ostream& out);
void export_table(const FrequencyTable& table, const std::filesystem::path& path);
void export_table(const ComplexityTable& table, const std::filesystem::path& path);

// `source` labels the stream in error messages and in meta.source.
FrequencyTable import_frequency(std::istream& in, const std::string& source = "<stream>");
FrequencyTable import_frequency(const std::filesystem::path& path);
ComplexityTable import_complexity(std::istream& in, const std::string& source = "<stream>");
ComplexityTable import_complexity(const std::filesystem::path& path);

enum class TableKind : std::uint8_t { Frequency, Complexity };

// Reads up to the header line to distinguish frequency from complexity files.
TableKind detect_table_kind(const std::filesystem::path& path);

}  // namespace kolmo
