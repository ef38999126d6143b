#pragma once

#include <cstdint>
#include <span>

#include "loopsim/graph.hpp"

namespace loopsim {

// Aggregated point estimate for one (shape, p) grid point.  p_loop_edge is
// the mean of per-sample ratios n_loop_qudits/n_err over samples with at
// least one error; zero-error samples are skipped and counted.  Spreads are
// population standard deviations; stderr is std/sqrt(n).
struct ExperimentRecord {
  int nh = 0;
  int nv = 0;
  double p = 0;
  long n_samples = 0;
  std::uint64_t master_seed = 0;

  bool p_loop_edge_defined = false;
  double p_loop_edge_mean = 0;
  double p_loop_edge_std = 0;
  double p_loop_edge_stderr = 0;
  // pooled alternative: sum(n_loop_qudits) / sum(n_err)
  double p_loop_edge_pooled = 0;

  double p_ntw_mean = 0;
  double p_ntw_std = 0;
  double l_max_mean = 0;
  double l_max_std = 0;
  double n_max_mean = 0;
  double n_max_std = 0;
  long zero_error_skipped = 0;
};

// Reduces records in the given order with compensated summation, so results
// are bitwise stable for a fixed order.  Throws on empty input.
ExperimentRecord aggregate(std::span<const SampleRecord> records);

}  // namespace loopsim
