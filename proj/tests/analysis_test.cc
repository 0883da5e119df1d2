#include "nashzero/analysis.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nashzero/learner.h"

namespace nashzero {
namespace {

std::vector<CurvePoint> PowerLaw(double scale, double exponent,
                                 std::int64_t T) {
  std::vector<CurvePoint> curve;
  for (std::int64_t t : CheckpointGrid(T, 0, 0)) {
    curve.push_back({t, scale * std::pow(static_cast<double>(t), exponent), 0});
  }
  return curve;
}

Trajectory Synthetic(std::uint64_t run, const std::vector<double>& values) {
  Trajectory traj;
  traj.run_index = run;
  for (std::size_t j = 0; j < values.size(); ++j) {
    traj.checkpoints.push_back(Checkpoint{static_cast<std::int64_t>(j + 1),
                                          JointPoint(), values[j],
                                          std::nullopt});
  }
  return traj;
}

TEST(FitRateTest, RecoversExactPowerLaws) {
  const RateFit inv = FitRate(PowerLaw(7.0, -1.0, 100000));
  EXPECT_NEAR(inv.slope, -1.0, 1e-12);
  EXPECT_NEAR(inv.intercept, std::log(7.0), 1e-10);
  EXPECT_NEAR(inv.r_squared, 1.0, 1e-12);
  const RateFit sqrt_law = FitRate(PowerLaw(3.0, -0.5, 100000));
  EXPECT_NEAR(sqrt_law.slope, -0.5, 1e-12);
  for (double exponent : {-2.0, -0.25, 0.3}) {
    EXPECT_NEAR(FitRate(PowerLaw(0.01, exponent, 5000)).slope, exponent, 1e-10);
  }
}

TEST(FitRateTest, WindowCoversLastHalf) {
  const RateFit fit = FitRate(PowerLaw(1.0, -1.0, 100000), 0.5);
  EXPECT_GE(fit.t_lo, 50000);
  EXPECT_EQ(fit.t_hi, 100000);
  EXPECT_GE(fit.num_points, 5u);
  EXPECT_LT(fit.t_lo, fit.t_hi);
}

TEST(FitRateTest, Errors) {
  std::vector<CurvePoint> curve = PowerLaw(1.0, -1.0, 100000);
  curve.back().mean = 0.0;
  EXPECT_THROW(FitRate(curve), std::invalid_argument);
  EXPECT_THROW(FitRate(PowerLaw(1.0, -1.0, 6)), std::invalid_argument);
  EXPECT_THROW(FitRate(PowerLaw(1.0, -1.0, 1000), 1.0), std::invalid_argument);
}

TEST(MeanDistanceCurveTest, SingleAndIdentical) {
  const Trajectory a = Synthetic(0, {4.0, 2.0, 1.0});
  std::vector<Trajectory> one{a};
  const std::vector<CurvePoint> c1 = MeanDistanceCurve(one);
  EXPECT_EQ(c1[1].mean, 2.0);
  EXPECT_EQ(c1[1].std_error, 0.0);
  std::vector<Trajectory> two{a, Synthetic(1, {4.0, 2.0, 1.0})};
  const std::vector<CurvePoint> c2 = MeanDistanceCurve(two);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(c2[j].mean, c1[j].mean);
    EXPECT_EQ(c2[j].std_error, 0.0);
  }
}

TEST(MeanDistanceCurveTest, MeanAndStandardError) {
  std::vector<Trajectory> runs{Synthetic(0, {1.0}), Synthetic(1, {3.0})};
  const std::vector<CurvePoint> c = MeanDistanceCurve(runs);
  EXPECT_DOUBLE_EQ(c[0].mean, 2.0);
  // sample sd sqrt(2), divided by sqrt(2)
  EXPECT_DOUBLE_EQ(c[0].std_error, 1.0);
}

TEST(MeanDistanceCurveTest, PermutationInvariant) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1e3);
  std::vector<Trajectory> runs;
  for (std::uint64_t r = 0; r < 50; ++r) {
    std::vector<double> values(20);
    for (double& v : values) v = u(gen) * std::pow(10.0, r % 7);
    runs.push_back(Synthetic(r, values));
  }
  const std::vector<CurvePoint> base = MeanDistanceCurve(runs);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(runs.begin(), runs.end(), gen);
    const std::vector<CurvePoint> shuffled = MeanDistanceCurve(runs);
    for (std::size_t j = 0; j < base.size(); ++j) {
      EXPECT_EQ(shuffled[j].mean, base[j].mean);
      EXPECT_EQ(shuffled[j].std_error, base[j].std_error);
    }
  }
}

TEST(MeanDistanceCurveTest, MismatchedGridsThrow) {
  std::vector<Trajectory> runs{Synthetic(0, {1.0, 2.0}), Synthetic(1, {1.0})};
  EXPECT_THROW(MeanDistanceCurve(runs), std::invalid_argument);
  runs[1] = Synthetic(1, {1.0, 2.0});
  runs[1].checkpoints[1].t = 5;
  EXPECT_THROW(MeanDistanceCurve(runs), std::invalid_argument);
  runs[1] = Synthetic(1, {1.0, 2.0});
  runs[1].checkpoints[0].dist_sq.reset();
  EXPECT_THROW(MeanDistanceCurve(runs), std::invalid_argument);
  EXPECT_THROW(MeanDistanceCurve({}), std::invalid_argument);
}

// Closed-form oracle for the recursion with equality.
double RecursionByHand(const ChungParams& p) {
  const std::int64_t k0 = std::max<std::int64_t>(
      2, static_cast<std::int64_t>(std::ceil(p.c)) + 1);
  double u = p.u1;
  for (std::int64_t k = k0; k < p.horizon; ++k) {
    u = (1.0 - p.c / k) * u + p.d / std::pow(static_cast<double>(k), 1 + p.p);
  }
  return u;
}

TEST(ChungTest, ContractingLimits) {
  const ChungParams a{1.0, 1.0, 0.5, 1.0, 1000000};
  const ChungResult ra = ChungSimulate(a);
  EXPECT_EQ(ra.regime, ChungRegime::kContracting);
  EXPECT_NEAR(ra.limit_estimate, 2.0, 0.05 * 2.0);
  EXPECT_EQ(ra.final_u, RecursionByHand(a));

  const ChungParams b{2.0, 3.0, 1.0, 5.0, 1000000};
  const ChungResult rb = ChungSimulate(b);
  EXPECT_EQ(rb.start_k, 3);
  EXPECT_NEAR(rb.limit_estimate, 3.0, 0.05 * 3.0);
  EXPECT_EQ(rb.final_u, RecursionByHand(b));
}

TEST(ChungTest, PureContraction) {
  const ChungResult r = ChungSimulate({1.5, 0.0, 0.5, 4.0, 100000});
  EXPECT_LT(r.final_u, 1e-6);
  EXPECT_LT(r.limit_estimate, 1e-3);
}

TEST(ChungTest, BoundedRegimes) {
  const ChungResult critical = ChungSimulate({1.0, 1.0, 1.0, 1.0, 1000000});
  EXPECT_EQ(critical.regime, ChungRegime::kCritical);
  EXPECT_LE(critical.scaled_max_last_decade / critical.scaled_min_last_decade,
            1.5);
  const ChungResult slow = ChungSimulate({0.5, 1.0, 1.0, 1.0, 1000000});
  EXPECT_EQ(slow.regime, ChungRegime::kForcingDominated);
  EXPECT_LE(slow.scaled_max_last_decade / slow.scaled_min_last_decade, 1.5);
  EXPECT_TRUE(std::isfinite(slow.scaled_max_last_decade));
}

TEST(ChungTest, RejectsInvalidParams) {
  EXPECT_THROW(ChungSimulate({0.0, 1.0, 0.5, 1.0, 100}), std::invalid_argument);
  EXPECT_THROW(ChungSimulate({1.0, 1.0, 0.5, -1.0, 100}), std::invalid_argument);
  EXPECT_THROW(ChungSimulate({1.0, 1.0, 0.5, 1.0, 5}), std::invalid_argument);
}

TEST(CompareModesTest, Ordering) {
  RateFit one, two;
  one.slope = -0.5;
  two.slope = -1.0;
  EXPECT_TRUE(CompareModes(one, two).two_point_faster);
  two.slope = -0.5;
  const ModeComparison same = CompareModes(one, two);
  EXPECT_FALSE(same.two_point_faster);
  EXPECT_NE(same.report.find("NOT faster"), std::string::npos);
}

}  // namespace
}  // namespace nashzero
