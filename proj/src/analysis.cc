#include "nashzero/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "nashzero/statistics.h"

namespace nashzero {

std::vector<CurvePoint> MeanDistanceCurve(
    std::span<const Trajectory> trajectories) {
  if (trajectories.empty()) {
    throw std::invalid_argument("MeanDistanceCurve: no trajectories");
  }
  const std::vector<Checkpoint>& grid = trajectories.front().checkpoints;
  for (const Trajectory& traj : trajectories) {
    if (traj.checkpoints.size() != grid.size()) {
      throw std::invalid_argument("MeanDistanceCurve: checkpoint grids differ");
    }
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (traj.checkpoints[j].t != grid[j].t) {
        throw std::invalid_argument(
            "MeanDistanceCurve: checkpoint grids differ");
      }
      if (!traj.checkpoints[j].dist_sq) {
        throw std::invalid_argument("MeanDistanceCurve: dist_sq not recorded");
      }
    }
  }

  const std::size_t runs = trajectories.size();
  std::vector<CurvePoint> curve;
  curve.reserve(grid.size());
  std::vector<double> values(runs);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t r = 0; r < runs; ++r) {
      values[r] = *trajectories[r].checkpoints[j].dist_sq;
    }
    // Sorting first makes the sums independent of run order.
    std::sort(values.begin(), values.end());
    CompensatedSum sum;
    for (double v : values) sum.Add(v);
    const double mean = sum.value() / static_cast<double>(runs);
    double se = 0.0;
    if (runs > 1) {
      CompensatedSum sq;
      for (double v : values) sq.Add((v - mean) * (v - mean));
      se = std::sqrt(sq.value() / static_cast<double>(runs - 1) /
                     static_cast<double>(runs));
    }
    curve.push_back(CurvePoint{grid[j].t, mean, se});
  }
  return curve;
}

LogLogFit FitLogLog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("FitLogLog: need >= 2 paired points");
  }
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
      throw std::invalid_argument(
          fmt::format("FitLogLog: nonpositive value at point {}", k));
    }
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += lx[k];
    my += ly[k];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
    syy += (ly[k] - my) * (ly[k] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("FitLogLog: x values coincide");

  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ly[k] - (fit.intercept + fit.slope * lx[k]);
    sse += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  if (n > 2) {
    fit.slope_std_error =
        std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  }
  return fit;
}

RateFit FitRate(std::span<const CurvePoint> curve, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction < 1.0)) {
    throw std::invalid_argument("FitRate: window fraction must be in (0, 1)");
  }
  if (curve.empty()) throw std::invalid_argument("FitRate: empty curve");
  const std::int64_t t_max = curve.back().t;
  const double t_start = window_fraction * static_cast<double>(t_max);
  std::vector<double> ts, means;
  for (const CurvePoint& point : curve) {
    if (static_cast<double>(point.t) < t_start) continue;
    if (!(point.mean > 0.0)) {
      throw std::invalid_argument(fmt::format(
          "FitRate: nonpositive mean {} at t = {}", point.mean, point.t));
    }
    ts.push_back(static_cast<double>(point.t));
    means.push_back(point.mean);
  }
  if (ts.size() < 5) {
    throw std::invalid_argument(fmt::format(
        "FitRate: {} checkpoints in window, need >= 5", ts.size()));
  }
  const LogLogFit fit = FitLogLog(ts, means);
  RateFit rate;
  rate.slope = fit.slope;
  rate.intercept = fit.intercept;
  rate.r_squared = fit.r_squared;
  rate.slope_std_error = fit.slope_std_error;
  rate.t_lo = static_cast<std::int64_t>(ts.front());
  rate.t_hi = static_cast<std::int64_t>(ts.back());
  rate.num_points = ts.size();
  return rate;
}

ChungResult ChungSimulate(const ChungParams& params) {
  if (!(params.c > 0.0) || !(params.p > 0.0) || params.d < 0.0 ||
      params.u1 < 0.0) {
    throw std::invalid_argument("ChungSimulate: invalid parameters");
  }
  if (params.horizon < 10) {
    throw std::invalid_argument("ChungSimulate: horizon must be >= 10");
  }
  ChungResult result;
  const double rel = std::abs(params.c - params.p) /
                     std::max(params.c, params.p);
  if (rel < 1e-12) {
    result.regime = ChungRegime::kCritical;
  } else if (params.c > params.p) {
    result.regime = ChungRegime::kContracting;
  } else {
    result.regime = ChungRegime::kForcingDominated;
  }
  const std::int64_t k0 = std::max<std::int64_t>(
      2, static_cast<std::int64_t>(std::ceil(params.c)) + 1);
  if (k0 >= params.horizon) {
    throw std::invalid_argument("ChungSimulate: horizon too short for c");
  }

  auto normalized = [&](double u, double k) {
    switch (result.regime) {
      case ChungRegime::kContracting:
        return u * std::pow(k, params.p);
      case ChungRegime::kCritical:
        return u * std::pow(k, params.c) / std::log(k);
      case ChungRegime::kForcingDominated:
        return u * std::pow(k, params.c);
    }
    return u;
  };

  const std::int64_t decade_start =
      std::max<std::int64_t>(k0, params.horizon / 10);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double u = params.u1;
  for (std::int64_t k = k0; k < params.horizon; ++k) {
    const double kd = static_cast<double>(k);
    u = (1.0 - params.c / kd) * u + params.d / std::pow(kd, 1.0 + params.p);
    if (k + 1 >= decade_start) {
      const double scaled = normalized(u, kd + 1.0);
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
    }
  }
  const double kf = static_cast<double>(params.horizon);
  result.start_k = k0;
  result.final_k = params.horizon;
  result.final_u = u;
  result.limit_estimate = u * std::pow(kf, params.p);
  result.scaled_min_last_decade = lo;
  result.scaled_max_last_decade = hi;
  return result;
}

ModeComparison CompareModes(const RateFit& one_point, const RateFit& two_point) {
  ModeComparison out;
  out.two_point_faster = two_point.slope < one_point.slope;
  out.report = fmt::format(
      "one-point slope {:.3f} +/- {:.3f}, two-point slope {:.3f} +/- {:.3f}: "
      "two-point {}",
      one_point.slope, one_point.slope_std_error, two_point.slope,
      two_point.slope_std_error,
      out.two_point_faster ? "faster" : "NOT faster");
  return out;
}

}  // namespace nashzero
