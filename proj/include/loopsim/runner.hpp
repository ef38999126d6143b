#pragma once
// Experiment driver: sweeps (shape, p) points, aggregates per-sample loop
// statistics into one table row per point, and emits CSV or JSON.  Rows are
// flushed as they complete so interrupted runs keep their finished points.

#include <cstdint>
#include <string>
#include <vector>

#include "loopsim/lattice.hpp"
#include "loopsim/metrics.hpp"

namespace loopsim {

enum class RunMode {
  Single,         // one (nh, nv, p) point
  SymmetricScan,  // sizes s -> (s, s+1) at fixed p
  AspectScan,     // nh + nv fixed, nh varies, at fixed p
  PScan,          // fixed (nh, nv), p over a grid
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
  RunMode mode = RunMode::Single;
  int nh = 0;
  int nv = 0;
  std::vector<int> sizes;      // SymmetricScan
  int perimeter = 0;           // AspectScan: nh + nv
  double p = 0;
  std::vector<double> p_grid;  // PScan
  long samples = 1000;
  std::uint64_t master_seed = 1;
  int workers = 1;
  std::string out = "-";  // file path, or "-" for stdout
  OutputFormat format = OutputFormat::Csv;
};

// Samples n_samples patterns (streams keyed by sample index, so the result
// does not depend on the worker count) and aggregates their loop metrics.
ExperimentRecord analyze_point(const CodeLattice& lattice, double p, long n_samples,
                               std::uint64_t master_seed, int workers = 1);

struct ResultRow {
  ExperimentRecord record;
  double model_eq3 = 0;
  double model_eq3_powerlaw = 0;
  double model_eq3_sixloop = 0;
  double model_pntw = 0;
};

ResultRow evaluate_point(const CodeLattice& lattice, double p, long n_samples,
                         std::uint64_t master_seed, int workers = 1);

extern const char* const kScanCsvHeader;

std::string format_csv_row(const ResultRow& row);
std::string format_json_row(const ResultRow& row);

// Runs the configured sweep.  Returns a process exit code: 0 on success,
// 2 for an invalid configuration, 3 for I/O failures.  Regime warnings and
// per-point progress go to stderr.
int run_scan(const RunConfig& config);

}  // namespace loopsim
