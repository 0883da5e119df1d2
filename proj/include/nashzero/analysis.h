#ifndef NASHZERO_ANALYSIS_H_
#define NASHZERO_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nashzero/learner.h"

namespace nashzero {

struct CurvePoint {
  std::int64_t t;
  double mean;
  double std_error;
};

// Pointwise ensemble mean and standard error of dist_sq. The result does not
// depend on the order of `trajectories`.
std::vector<CurvePoint> MeanDistanceCurve(
    std::span<const Trajectory> trajectories);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_std_error = 0.0;
};

// Ordinary least squares of log(y) on log(x); all values must be positive.
LogLogFit FitLogLog(std::span<const double> x, std::span<const double> y);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_std_error = 0.0;
  std::int64_t t_lo = 0;
  std::int64_t t_hi = 0;
  std::size_t num_points = 0;
};

// Fits log(mean) ~ slope * log(t) + intercept over checkpoints with
// t in [window_fraction * T, T], T the last checkpoint. Checkpoints are
// weighted equally.
RateFit FitRate(std::span<const CurvePoint> curve, double window_fraction = 0.5);

struct ChungParams {
  double c = 1.0;
  double d = 1.0;
  double p = 0.5;
  double u1 = 1.0;
  std::int64_t horizon = 1000000;
};

enum class ChungRegime { kContracting, kCritical, kForcingDominated };

struct ChungResult {
  ChungRegime regime;
  std::int64_t start_k = 0;
  std::int64_t final_k = 0;
  double final_u = 0.0;
  // u_k * k^p at the final k; tends to d / (c - p) when c > p.
  double limit_estimate = 0.0;
  // Range over the last decade of the regime's normalized iterate:
  // u_k k^p (c > p), u_k k^c / ln k (c = p), u_k k^c (c < p).
  double scaled_min_last_decade = 0.0;
  double scaled_max_last_decade = 0.0;
};

// Runs u_{k+1} = (1 - c/k) u_k + d / k^(1+p) with equality from
// k0 = max(2, ceil(c) + 1), u_{k0} = u1, up to k = horizon.
ChungResult ChungSimulate(const ChungParams& params);

struct ModeComparison {
  bool two_point_faster = false;
  std::string report;
};

ModeComparison CompareModes(const RateFit& one_point, const RateFit& two_point);

}  // namespace nashzero

#endif  // NASHZERO_ANALYSIS_H_
