#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meanmap/invariant.hpp"

namespace meanmap::cli {

enum class OutputFormat { Human, Json, Csv };

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kSeedEnvVar = "MEANMAP_SEED";

/// kDefaultSeed unless MEANMAP_SEED holds a valid unsigned integer.
std::uint64_t default_seed();

struct RunConfig {
  std::string command;
  std::string mapping_file;
  std::optional<std::string> vector;  // raw "--vector" text, comma-separated
  std::optional<std::string> mean;
  std::optional<std::string> function;
  double tol = kDefaultTol;
  std::size_t max_iter = kDefaultMaxIter;
  std::size_t cap = kDefaultN0Cap;
  std::size_t steps = 10;
  std::size_t samples = 1000;
  std::uint64_t seed = kDefaultSeed;
  double threshold = 1e-9;
  OutputFormat output = OutputFormat::Human;
  Readout readout = Readout::Mid;
  bool relative = false;
  bool trace = false;
};

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
/// A probe found a counterexample, a residual exceeded the threshold, or an
/// iteration ended at max_iter / cap.
inline constexpr int kExitNegative = 2;

struct RunResult {
  int exit_code = kExitOk;
  std::string document;  // stdout
  std::string message;   // stderr
};

const std::vector<std::string>& commands();

/// Runs one command. Never throws: all library errors become exit 1 with a
/// message naming the offending field.
RunResult run(const RunConfig& config);

/// Parses "1,2.5,3e-2".
std::vector<double> parse_vector(std::string_view text);
OutputFormat parse_output(std::string_view text);

}  // namespace meanmap::cli
