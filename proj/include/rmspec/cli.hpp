#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmspec/ensembles.hpp"
#include "rmspec/limits.hpp"
#include "rmspec/rng.hpp"
#include "rmspec/spectra.hpp"

namespace rmspec::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kInvalidArgument = 2,
  kCapacity = 3,
  kNumeric = 4,
};

/// A flat table plus its run configuration. Rows share the keys listed in
/// `columns`; `extra` holds summary fields that only appear in JSON.
struct Artifact {
  std::string command;
  Json config = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;
  Json extra = Json::object();
};

inline constexpr int kSchemaVersion = 1;

/// {"command", "schema_version", "config", "rows", ...extra}.
Json to_json(const Artifact& a);
void write_json(std::ostream& os, const Artifact& a);
/// Header from `columns`; null cells are empty, doubles use 17 digits.
void write_csv(std::ostream& os, const Artifact& a);

struct WordsOptions {
  std::size_t k = 2;
  std::uint64_t samples = 200000;  // Monte Carlo draws when exact is out of reach
  std::uint64_t seed = kDefaultSeed;
  std::size_t word_cap = kDefaultWordCap;
  std::size_t max_exact_dim = VolumeLimits{}.max_exact_dim;
};

/// One row per word: height, irreducible, noncrossing, p_T and p_H. Volumes
/// are exact when k + 1 <= max_exact_dim, otherwise Monte Carlo with seed
/// derive_seed(derive_seed(seed, f), i) for family f (0 toeplitz, 1 hankel)
/// and word number i.
Artifact cmd_words(const WordsOptions& opt);

struct MomentsOptions {
  Family family = Family::toeplitz;
  int order = 4;
  MomentMethod method = MomentMethod::exact;
  std::uint64_t samples = 200000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t word_cap = kDefaultWordCap;
  std::size_t max_exact_dim = VolumeLimits{}.max_exact_dim;
};

/// Orders 0..order. Exact entries carry numerator/denominator strings.
Artifact cmd_moments(const MomentsOptions& opt);

struct SimulateOptions {
  Ensemble ensemble = Ensemble::toeplitz;
  std::size_t n = 1024;
  std::size_t replicates = 20;
  EntryDistribution dist = EntryDistribution::gaussian();
  std::uint64_t seed = kDefaultSeed;
  std::size_t bins = 60;
  Scaling scale = Scaling::sqrt_n;
  int max_moment = 8;
  unsigned threads = 1;
};

struct SimulateOutput {
  Artifact moments;
  EmpiricalSpectrum pooled;
  Histogram histogram;
};

/// Empirical moments r = 1..max_moment with replicate standard errors, the
/// pooled spectrum and its histogram (mode count in moments.extra).
SimulateOutput cmd_simulate(const SimulateOptions& opt);

struct NormScanOptions {
  std::vector<std::size_t> ns{256, 1024, 4096};
  EntryDistribution dist = EntryDistribution::gaussian();
  std::size_t replicates = 4;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
};

Artifact cmd_norm_scan(const NormScanOptions& opt);

/// Parses argv and runs a subcommand. Errors go to `err` and map to the
/// ExitCode values; --help prints to `out` and returns 0.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rmspec::cli
