#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "loopsim/metrics.hpp"

using namespace loopsim;
using doctest::Approx;

namespace {

SampleRecord rec(long n_err, long n_loop, bool has_loop, long l_max, long n_max) {
  SampleRecord r;
  r.n_err = n_err;
  r.n_loop_qudits = n_loop;
  r.has_loop = has_loop;
  r.l_max = l_max;
  r.n_max = n_max;
  return r;
}

}  // namespace

TEST_CASE("ratio mean versus pooled estimate") {
  // ratios 4/5 and 0/3: mean of ratios 0.4, pooled 4/8 = 0.5
  std::vector<SampleRecord> rs{rec(5, 4, true, 2, 4), rec(3, 0, false, 0, 0)};
  const ExperimentRecord agg = aggregate(rs);
  CHECK(agg.p_loop_edge_defined);
  CHECK(agg.p_loop_edge_mean == Approx(0.4).epsilon(1e-12));
  CHECK(agg.p_loop_edge_pooled == Approx(0.5).epsilon(1e-12));
  CHECK(agg.p_loop_edge_std == Approx(0.4).epsilon(1e-12));
  CHECK(agg.p_loop_edge_stderr == Approx(0.4 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(agg.p_ntw_mean == Approx(0.5).epsilon(1e-12));
  CHECK(agg.p_ntw_std == Approx(0.5).epsilon(1e-12));
  CHECK(agg.zero_error_skipped == 0);
  CHECK(agg.n_samples == 2);
}

TEST_CASE("zero-error samples are skipped for the ratio but kept elsewhere") {
  std::vector<SampleRecord> rs{rec(0, 0, false, 0, 0), rec(4, 4, true, 3, 4),
                               rec(0, 0, false, 0, 0)};
  const ExperimentRecord agg = aggregate(rs);
  CHECK(agg.zero_error_skipped == 2);
  CHECK(agg.p_loop_edge_defined);
  CHECK(agg.p_loop_edge_mean == Approx(1.0));
  CHECK(agg.p_loop_edge_std == Approx(0.0));
  // maxima average over all samples, including error-free ones
  CHECK(agg.l_max_mean == Approx(1.0).epsilon(1e-12));
  CHECK(agg.n_max_mean == Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(agg.p_ntw_mean == Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("all samples error-free leaves the ratio undefined") {
  std::vector<SampleRecord> rs{rec(0, 0, false, 0, 0), rec(0, 0, false, 0, 0)};
  const ExperimentRecord agg = aggregate(rs);
  CHECK_FALSE(agg.p_loop_edge_defined);
  CHECK(agg.p_loop_edge_mean == 0.0);
  CHECK(agg.zero_error_skipped == 2);
  CHECK(agg.p_ntw_mean == 0.0);
  CHECK(agg.p_ntw_std == 0.0);
}

TEST_CASE("spread formulas match a direct computation") {
  std::vector<SampleRecord> rs;
  const std::vector<long> lmaxes{0, 1, 1, 2, 5};
  for (long v : lmaxes) rs.push_back(rec(2, 2 * (v > 0), v > 0, v, 2 * v));
  const ExperimentRecord agg = aggregate(rs);
  double m = 0;
  for (long v : lmaxes) m += static_cast<double>(v);
  m /= static_cast<double>(lmaxes.size());
  double var = 0;
  for (long v : lmaxes) var += (v - m) * (v - m);
  var /= static_cast<double>(lmaxes.size());
  CHECK(agg.l_max_mean == Approx(m).epsilon(1e-12));
  CHECK(agg.l_max_std == Approx(std::sqrt(var)).epsilon(1e-12));
  CHECK(agg.n_max_mean == Approx(2 * m).epsilon(1e-12));
  const double pntw = 4.0 / 5.0;
  CHECK(agg.p_ntw_mean == Approx(pntw).epsilon(1e-12));
  CHECK(agg.p_ntw_std == Approx(std::sqrt(pntw * (1 - pntw))).epsilon(1e-12));
}

TEST_CASE("empty input throws") {
  std::vector<SampleRecord> rs;
  CHECK_THROWS_AS(aggregate(rs), std::invalid_argument);
}
