#include "loopsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopsim {

namespace {

void check_params(int nh, int nv, double p) {
  if (nh < 2 || nv < 2) throw std::invalid_argument("shape requires nh,nv >= 2");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("error rate must lie in [0,1]");
  }
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

double boundary_term(int nh, int nv, double p) {
  return 3.0 * (nh + nv) / (static_cast<double>(nh) * nv) * p * p;
}

}  // namespace

RateRegime classify_rate(double p) {
  if (p >= kPercolationThreshold) return RateRegime::AtOrAbovePercolation;
  if (p >= kThresholdUpperEstimate) return RateRegime::AboveThresholdEstimate;
  return RateRegime::SubThreshold;
}

double p_loop_edge_eq3(int nh, int nv, double p) {
  check_params(nh, nv, p);
  return clamp01(boundary_term(nh, nv, p) + 4.0 * p * p * p);
}

double p_loop_edge_corrected(int nh, int nv, double p,
                             CorrectionVariant variant) {
  check_params(nh, nv, p);
  switch (variant) {
    case CorrectionVariant::PowerLaw:
      return clamp01(boundary_term(nh, nv, p) + 4.745 * std::pow(p, 3.057));
    case CorrectionVariant::SixLoop:
      return clamp01(boundary_term(nh, nv, p) + 4.0 * p * p * p +
                     6.0 * std::pow(p, 5));
  }
  throw std::invalid_argument("unknown correction variant");
}

double p_not_pauli_twirled(int nh, int nv, double p) {
  check_params(nh, nv, p);
  const double p3 = p * p * p, p4 = p3 * p;
  return clamp01(static_cast<double>(nh) * nv * 2.0 * p4 +
                 (nh + nv) * (2.0 * p3 - 3.0 * p4));
}

double logical_error_bound(double p_l, double p_ntw) {
  if (!(p_l >= 0.0 && p_l <= 1.0) || !(p_ntw >= 0.0 && p_ntw <= 1.0)) {
    throw std::invalid_argument("probabilities must lie in [0,1]");
  }
  return p_l - p_ntw * p_l + p_ntw;
}

std::pair<double, double> expected_loop_components(int nh, int nv, double p) {
  check_params(nh, nv, p);
  const double base = 2.0 * nh * nv;
  return {base * std::pow(p, 4), base * std::pow(p, 6)};
}

double complexity_estimate(int nh, int nv, double p, int d) {
  check_params(nh, nv, p);
  if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2");
  return 2.0 * nh * nv * (std::pow(p, 4) + std::pow(p, 6)) * d * d;
}

FitResult loglog_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("fit requires at least two points");
  }
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0)) {
      throw std::invalid_argument("fit inputs must be positive");
    }
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit abscissae are degenerate");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.coefficient = std::exp(fit.intercept);
  fit.n_points = static_cast<int>(points.size());
  for (const auto& [x, y] : points) {
    const double r = std::log(y) - (fit.intercept + fit.slope * std::log(x));
    fit.rss += r * r;
  }
  return fit;
}

}  // namespace loopsim
