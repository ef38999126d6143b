#pragma once

#include <span>
#include <utility>

namespace loopsim {

// Approximation validity limits: loop statistics are derived for the
// sub-critical bond-percolation regime, and threshold-style error rates stay
// below roughly 0.3.
inline constexpr double kThresholdUpperEstimate = 0.3;
inline constexpr double kPercolationThreshold = 0.5;

enum class RateRegime {
  SubThreshold,           // p < 0.3
  AboveThresholdEstimate, // 0.3 <= p < 0.5
  AtOrAbovePercolation,   // p >= 0.5: sub-critical assumptions void
};

RateRegime classify_rate(double p);

// Closed-form estimate for the fraction of erroneous qudits that sit on a
// loop: boundary term 3(nh+nv)/(nh nv) p^2 plus bulk term 4 p^3.  Clamped to
// [0,1].
double p_loop_edge_eq3(int nh, int nv, double p);

enum class CorrectionVariant {
  PowerLaw,  // bulk term replaced by 4.745 p^3.057
  SixLoop,   // adds the six-edge loop term 6 p^5
};

double p_loop_edge_corrected(int nh, int nv, double p,
                             CorrectionVariant variant);

// Probability that a sampled pattern is not exactly Pauli-twirlable:
// nh nv 2p^4 + (nh+nv)(2p^3 - 3p^4), clamped to [0,1].
double p_not_pauli_twirled(int nh, int nv, double p);

// Worst-case logical error rate when the non-twirlable fraction is treated
// as always failing: p_l - p_ntw p_l + p_ntw.
double logical_error_bound(double p_l, double p_ntw);

// Expected counts of four-edge and six-edge loops per sample:
// (2 nh nv p^4, 2 nh nv p^6).
std::pair<double, double> expected_loop_components(int nh, int nv, double p);

// Leading cost of handling loop corrections: 2 nh nv (p^4 + p^6) d^2.
double complexity_estimate(int nh, int nv, double p, int d);

struct FitResult {
  double slope = 0;
  double intercept = 0;  // in log space; coefficient = exp(intercept)
  double coefficient = 0;
  double rss = 0;
  int n_points = 0;
};

// Least squares on (ln x, ln y).  Requires >= 2 points, all positive.
FitResult loglog_fit(std::span<const std::pair<double, double>> points);

}  // namespace loopsim
