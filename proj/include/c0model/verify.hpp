#pragma once

// Randomized property suite. Each property runs seeded, independent trials
// and records the worst value of each of its metrics.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "c0model/io.hpp"

namespace c0::verify {

struct ExperimentConfig {
  std::uint64_t seed = 42;
  int trials = 100;
  int max_degree = 12;
  std::map<std::string, double> tolerances;  // "C1.annihilation" -> value
  std::filesystem::path output;              // empty: no files
  int threads = 1;
};

/// Parallelism from the C0M_THREADS environment variable (default 1).
int threads_from_env();

struct Metric {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;  // largest value over all trials; values must stay below tolerance
};

struct Failure {
  std::size_t trial = 0;
  std::string message;
  io::Json detail;
};

struct SweepRow {
  int n = 0;
  double beta = 0.0;
  double beta_prime = 0.0;
  double norm_x = 0.0;
  double norm_x_inv = 0.0;
  double residual = 0.0;
};

struct PropertyResult {
  std::string id;
  std::string title;
  bool criterion = false;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<Metric> metrics;
  std::optional<Failure> first_failure;
  std::vector<SweepRow> sweep;

  bool passed() const { return cases > 0 && failures == 0; }
};

struct SuiteReport {
  ExperimentConfig config;
  std::vector<PropertyResult> results;

  bool passed() const;
};

/// Ids in run order: acceptance criteria C1..C11, then auxiliary properties.
std::vector<std::string> property_ids();
std::vector<std::string> criterion_ids();

/// Throws InvalidInput for an unknown id.
PropertyResult run_property(const std::string& id, const ExperimentConfig& config);

/// Runs the listed ids (all when empty).
SuiteReport run_suite(const ExperimentConfig& config, const std::vector<std::string>& ids = {});

io::Json report_json(const SuiteReport& report);
std::string report_table(const SuiteReport& report);
std::string sweep_csv(const SuiteReport& report);

/// Writes report.json, report.txt and similarity_sweep.csv into dir.
void emit_report(const SuiteReport& report, const std::filesystem::path& dir);

}  // namespace c0::verify
