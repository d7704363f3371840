// kolmo — estimate algorithmic complexity of short strings and small binary
// grids from enumerated Turing-machine output frequencies, extend the
// estimates to longer objects by block decomposition, and judge how likely a
// string is to have come from a random rather than a deterministic source.
//
// Reports go to stdout as CSV; human-readable summaries go to stderr.
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kolmo/bdm.hpp"
#include "kolmo/distribution.hpp"
#include "kolmo/enumerate.hpp"
#include "kolmo/machine.hpp"
#include "kolmo/randomness.hpp"
#include "kolmo/version.hpp"

namespace {

using kolmo::ComplexityTable;
using kolmo::FrequencyTable;

std::string format6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

// FNV-1a over the file's bytes; cheap and good enough to notice drift.
std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for digesting");
  std::uint64_t hash = 1469598103934665603ull;
  char chunk[4096];
  while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(chunk[i]);
      hash *= 1099511628211ull;
    }
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a:%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

// Loads a complexity table from either table kind, converting counts on the
// fly so every command accepts the CSVs that cmd_enumerate writes.
ComplexityTable load_complexity(const std::filesystem::path& path) {
  if (kolmo::detect_table_kind(path) == kolmo::TableKind::Complexity)
    return kolmo::import_complexity(path);
  return kolmo::to_complexity(kolmo::import_frequency(path));
}

int default_workers() {
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : static_cast<int>(hardware);
}

struct EnumerateArgs {
  int states = 0;
  int symbols = 2;
  std::uint32_t cutoff = 0;  // 0 = per-space default
  std::optional<std::uint64_t> sample;
  std::uint64_t seed = 0;
  bool symmetry = false;
  std::string out;
  int workers = default_workers();
  std::uint64_t budget = kolmo::kDefaultBudget;
  std::vector<std::string> argv;
};

int cmd_enumerate(const EnumerateArgs& args) {
  kolmo::EnumerationPlan plan;
  plan.space = {args.states, args.symbols};
  plan.cutoff = args.cutoff;
  plan.symmetry_reduction = args.symmetry;
  if (args.sample) {
    plan.mode = kolmo::EnumMode::Sampled;
    plan.sample_count = *args.sample;
    plan.seed = args.seed;
  }
  kolmo::ExecutionOptions options{args.workers, args.budget};

  const auto started = std::chrono::steady_clock::now();
  const FrequencyTable table = kolmo::enumerate_outputs(plan, options);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  kolmo::export_table(table, std::filesystem::path(args.out));

  nlohmann::ordered_json manifest;
  manifest["command"] = "enumerate";
  manifest["tool"] = "kolmo";
  manifest["version"] = kolmo::kVersionString;
  manifest["argv"] = args.argv;
  manifest["space"] = {{"states", args.states}, {"symbols", args.symbols}};
  manifest["mode"] = plan.mode == kolmo::EnumMode::Sampled ? "sampled" : "exhaustive";
  manifest["cutoff"] = table.meta.cutoff;
  manifest["seed"] = table.meta.seed;
  manifest["sample_count"] = plan.sample_count;
  manifest["symmetry_reduction"] = plan.symmetry_reduction;
  manifest["workers"] = options.workers;
  manifest["budget"] = options.budget;
  manifest["inputs"] = nlohmann::ordered_json::object();
  manifest["output"] = {{"path", args.out}, {"digest", file_digest(args.out)}};
  manifest["machines_run"] = table.meta.machines_run;
  manifest["halters"] = table.meta.halters;
  manifest["max_halt_steps"] = table.meta.max_halt_steps;
  manifest["duration_seconds"] = seconds;

  const std::string manifest_path = args.out + ".manifest.json";
  std::ofstream manifest_out(manifest_path, std::ios::binary);
  if (!manifest_out)
    throw std::runtime_error("cannot open '" + manifest_path + "' for writing");
  manifest_out << manifest.dump(2) << "\n";

  std::cerr << "enumerated (" << args.states << "," << args.symbols << "): machines_run="
            << table.meta.machines_run << " halters=" << table.meta.halters
            << " distinct_outputs=" << table.entries.size()
            << " max_halt_steps=" << table.meta.max_halt_steps << "\n"
            << "wrote " << args.out << " and " << manifest_path << " in "
            << format6(seconds) << " s\n";
  return 0;
}

struct CtmArgs {
  std::string dist;
  std::vector<std::string> strings;
};

int cmd_ctm(const CtmArgs& args) {
  const ComplexityTable table = load_complexity(args.dist);
  std::cout << "string,K,extrapolated\n";
  std::size_t extrapolated = 0;
  for (const std::string& s : args.strings) {
    const kolmo::KLookup k = kolmo::lookup_K(table, s);
    if (k.extrapolated) ++extrapolated;
    std::cout << s << ',' << format6(k.k) << ',' << (k.extrapolated ? "true" : "false")
              << "\n";
  }
  if (extrapolated > 0)
    std::cerr << extrapolated << " of " << args.strings.size()
              << " strings were absent from the table; their K is the table maximum"
              << " plus one\n";
  return 0;
}

struct BdmArgs {
  std::string dist;
  std::optional<int> block;
  int overlap = 0;
  kolmo::RemainderPolicy remainder = kolmo::RemainderPolicy::UseShorterBlock;
  bool grid = false;
  std::string dist2d;
  std::string input;
};

int cmd_bdm(const BdmArgs& args) {
  kolmo::BdmResult result;
  if (args.grid) {
    const ComplexityTable table = load_complexity(args.dist2d);
    const kolmo::GridPattern pattern = kolmo::parse_grid(std::filesystem::path(args.input));
    result = kolmo::bdm_2d(pattern, table, args.block.value_or(4), args.remainder);
  } else {
    const ComplexityTable table = load_complexity(args.dist);
    kolmo::DecompositionSpec spec;
    spec.block_size = args.block.value_or(12);
    spec.overlap = args.overlap;
    spec.remainder_policy = args.remainder;
    result = kolmo::bdm_1d(args.input, table, spec);
  }
  std::cout << "value,blocks,distinct_blocks,extrapolated_blocks\n"
            << format6(result.value) << ',' << result.blocks << ','
            << result.distinct_blocks << ',' << result.extrapolated_blocks << "\n";
  if (result.extrapolated_blocks > 0)
    std::cerr << result.extrapolated_blocks << " of " << result.distinct_blocks
              << " block types were absent from the table; their K is extrapolated\n";
  return 0;
}

struct RandomnessArgs {
  std::string dist;
  double prior = 0.5;
  std::vector<std::string> strings;
};

int cmd_randomness(const RandomnessArgs& args) {
  const ComplexityTable table = load_complexity(args.dist);
  // Judge every string before printing, so a bad one aborts cleanly.
  std::string report = "string,p_R_given_s,extrapolated\n";
  std::size_t extrapolated = 0;
  for (const std::string& raw : args.strings) {
    const std::string s = kolmo::normalize_coin_string(raw);
    const kolmo::RandomnessJudgment judgment = kolmo::posterior_random(s, table, args.prior);
    if (judgment.extrapolated) ++extrapolated;
    report += judgment.string + ',' + format6(judgment.posterior_random) + ',' +
              (judgment.extrapolated ? "true" : "false") + '\n';
  }
  std::cout << report;
  if (extrapolated > 0)
    std::cerr << extrapolated << " of " << args.strings.size()
              << " strings relied on extrapolated K values\n";
  return 0;
}

struct EntropyArgs {
  std::optional<int> block;
  std::vector<std::string> strings;
};

int cmd_entropy(const EntropyArgs& args) {
  std::string report = "string,entropy\n";
  for (const std::string& s : args.strings) {
    const double entropy =
        args.block ? kolmo::block_entropy(s, *args.block) : kolmo::shannon_entropy(s);
    report += s + ',' + format6(entropy) + '\n';
  }
  std::cout << report;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kolmo: algorithmic-complexity estimates from small Turing machines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kolmo::kVersionString);

  EnumerateArgs enumerate_args;
  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "Run a machine space from blank tapes and write the output "
                   "frequency table plus a run manifest");
  enumerate->add_option("--states", enumerate_args.states, "Working states n")
      ->required()
      ->check(CLI::Range(1, 16));
  enumerate->add_option("--symbols", enumerate_args.symbols, "Tape symbols m (blank is 0)")
      ->check(CLI::Range(2, 10))
      ->capture_default_str();
  enumerate->add_option("--cutoff", enumerate_args.cutoff,
                        "Step cutoff per machine (default depends on the state count)")
      ->check(CLI::PositiveNumber);
  CLI::Option* sample_opt =
      enumerate->add_option("--sample", enumerate_args.sample,
                            "Run this many machines, drawn without replacement");
  sample_opt->check(CLI::PositiveNumber);
  enumerate->add_option("--seed", enumerate_args.seed, "Seed for --sample draws")
      ->needs(sample_opt);
  enumerate
      ->add_flag("--symmetry", enumerate_args.symmetry,
                 "Run only mirror representatives, then complete (same table, half the work)")
      ->excludes(sample_opt);
  enumerate->add_option("--out", enumerate_args.out, "Output CSV path")->required();
  enumerate->add_option("--workers", enumerate_args.workers,
                        "Worker threads (never changes results)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  enumerate->add_option("--budget", enumerate_args.budget,
                        "Maximum machines to simulate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CtmArgs ctm_args;
  CLI::App* ctm = app.add_subcommand(
      "ctm", "Report complexity K for strings from a distribution table");
  ctm->add_option("--dist", ctm_args.dist, "Frequency or complexity CSV")->required();
  ctm->add_option("strings", ctm_args.strings, "Strings to look up")->required();

  BdmArgs bdm_args;
  CLI::App* bdm = app.add_subcommand(
      "bdm", "Block-decomposition complexity of a string or a grid file");
  bdm->add_option("--dist", bdm_args.dist, "Base table for 1D blocks")->required();
  bdm->add_option("--block", bdm_args.block, "Block size (default 12, or 4 with --grid)")
      ->check(CLI::PositiveNumber);
  CLI::Option* overlap_opt =
      bdm->add_option("--overlap", bdm_args.overlap, "Overlap between 1D blocks")
          ->check(CLI::NonNegativeNumber);
  std::string remainder_name = "keep";
  bdm->add_option("--remainder", remainder_name, "Edge handling: keep|drop")
      ->check(CLI::IsMember({"keep", "drop"}))
      ->capture_default_str();
  CLI::Option* grid_opt = bdm->add_flag("--grid", bdm_args.grid,
                                        "Treat INPUT as a grid file of 0/1 rows");
  CLI::Option* dist2d_opt =
      bdm->add_option("--dist2d", bdm_args.dist2d, "Table keyed by '-'-joined grid rows");
  grid_opt->needs(dist2d_opt);
  dist2d_opt->needs(grid_opt);
  grid_opt->excludes(overlap_opt);
  bdm->add_option("input", bdm_args.input, "String, or grid file path with --grid")
      ->required();

  RandomnessArgs randomness_args;
  CLI::App* randomness = app.add_subcommand(
      "randomness", "Posterior probability that strings came from a random source");
  randomness->add_option("--dist", randomness_args.dist, "Frequency or complexity CSV")
      ->required();
  randomness->add_option("--prior", randomness_args.prior, "Prior P(random)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  randomness->add_option("strings", randomness_args.strings, "Strings over 0/1 or H/T")
      ->required();

  EntropyArgs entropy_args;
  CLI::App* entropy = app.add_subcommand(
      "entropy", "Shannon entropy of strings, per symbol or per sliding block");
  entropy->add_option("--block", entropy_args.block, "Sliding-window width")
      ->check(CLI::PositiveNumber);
  entropy->add_option("strings", entropy_args.strings, "Strings to measure")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*enumerate) {
      enumerate_args.argv.assign(argv, argv + argc);
      return cmd_enumerate(enumerate_args);
    }
    if (*ctm) return cmd_ctm(ctm_args);
    if (*bdm) {
      bdm_args.remainder = remainder_name == "drop" ? kolmo::RemainderPolicy::Drop
                                                    : kolmo::RemainderPolicy::UseShorterBlock;
      return cmd_bdm(bdm_args);
    }
    if (*randomness) return cmd_randomness(randomness_args);
    if (*entropy) return cmd_entropy(entropy_args);
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
