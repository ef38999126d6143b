#include "loopsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace loopsim {

namespace {

// Neumaier variant of Kahan summation.
struct CompensatedSum {
  double sum = 0;
  double comp = 0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

double population_std(double mean, double mean_sq) {
  return std::sqrt(std::max(0.0, mean_sq - mean * mean));
}

}  // namespace

ExperimentRecord aggregate(std::span<const SampleRecord> records) {
  if (records.empty()) {
    throw std::invalid_argument("nothing to aggregate");
  }
  ExperimentRecord out;
  out.n_samples = static_cast<long>(records.size());
  CompensatedSum ratio, ratio_sq, ntw, lmax, lmax_sq, nmax, nmax_sq;
  long long loop_total = 0, err_total = 0;
  long with_err = 0;
  for (const SampleRecord& r : records) {
    if (r.n_err == 0) {
      ++out.zero_error_skipped;
    } else {
      ++with_err;
      const double ratio_i =
          static_cast<double>(r.n_loop_qudits) / static_cast<double>(r.n_err);
      ratio.add(ratio_i);
      ratio_sq.add(ratio_i * ratio_i);
      loop_total += r.n_loop_qudits;
      err_total += r.n_err;
    }
    ntw.add(r.has_loop ? 1.0 : 0.0);
    lmax.add(r.l_max);
    lmax_sq.add(static_cast<double>(r.l_max) * r.l_max);
    nmax.add(r.n_max);
    nmax_sq.add(static_cast<double>(r.n_max) * r.n_max);
  }
  const double n = static_cast<double>(records.size());
  if (with_err > 0) {
    out.p_loop_edge_defined = true;
    const double m = static_cast<double>(with_err);
    out.p_loop_edge_mean = ratio.value() / m;
    out.p_loop_edge_std =
        population_std(out.p_loop_edge_mean, ratio_sq.value() / m);
    out.p_loop_edge_stderr = out.p_loop_edge_std / std::sqrt(m);
    out.p_loop_edge_pooled =
        static_cast<double>(loop_total) / static_cast<double>(err_total);
  }
  out.p_ntw_mean = ntw.value() / n;
  out.p_ntw_std = population_std(out.p_ntw_mean, out.p_ntw_mean);
  out.l_max_mean = lmax.value() / n;
  out.l_max_std = population_std(out.l_max_mean, lmax_sq.value() / n);
  out.n_max_mean = nmax.value() / n;
  out.n_max_std = population_std(out.n_max_mean, nmax_sq.value() / n);
  return out;
}

}  // namespace loopsim
