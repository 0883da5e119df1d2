// Acceptance suite. Prints one PASS/FAIL line per criterion, followed by
// [info] lines with the measured quantities. Exit status is 0 iff every
// selected criterion passes.
//
//   acceptance_test [--only <criterion>]

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "nashzero/analysis.h"
#include "nashzero/catalog.h"
#include "nashzero/estimator.h"
#include "nashzero/experiment.h"
#include "nashzero/learner.h"
#include "nashzero/smoothed_oracle.h"

namespace nashzero {
namespace {

constexpr std::uint64_t kSeed = 2024;
constexpr std::int64_t kHorizon = 100000;
constexpr std::size_t kRuns = 50;

struct Outcome {
  bool passed = false;
  std::string summary;
  std::vector<std::string> info;
};

struct EnsembleResult {
  RateFit fit;
  std::vector<CurvePoint> curve;
  double seconds = 0.0;
};

EnsembleResult RunExample1(const std::string& game, FeedbackMode mode,
                           double c) {
  const CatalogEntry entry = MakeCatalogEntry(game);
  LearnerConfig config;
  config.schedules = Schedules{c, 1.0, 1.0, mode};
  config.iterations = kHorizon;
  config.seed = kSeed;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Trajectory> runs =
      RunEnsemble(entry.game, config, kRuns, ResolveThreads(std::nullopt));
  EnsembleResult out;
  out.curve = MeanDistanceCurve(runs);
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  out.fit = FitRate(out.curve, 0.5);
  return out;
}

double MeanAt(const std::vector<CurvePoint>& curve, std::int64_t t) {
  double value = curve.front().mean;
  for (const CurvePoint& p : curve) {
    if (p.t <= t) value = p.mean;
  }
  return value;
}

std::string DescribeFit(const EnsembleResult& r) {
  return fmt::format("slope {:.3f} +/- {:.3f} (r^2 {:.3f}) over [{}, {}], "
                     "final mean {:.4g}",
                     r.fit.slope, r.fit.slope_std_error, r.fit.r_squared,
                     r.fit.t_lo, r.fit.t_hi, r.curve.back().mean);
}

Outcome OnePointRate() {
  const EnsembleResult r =
      RunExample1("example1_wide", FeedbackMode::kOnePoint, 2.0);
  Outcome o;
  const bool in_window = r.fit.slope >= -0.75 && r.fit.slope <= -0.30;
  const bool fast = r.seconds <= 300.0;
  o.passed = in_window && fast;
  o.summary = fmt::format(
      "example1_wide one-point c 2, a 1, T 1e5, 50 runs: {} (window [-0.75, "
      "-0.30]); wall clock {:.1f} s (limit 300 s)",
      DescribeFit(r), r.seconds);
  const EnsembleResult shifted =
      RunExample1("example1_shifted", FeedbackMode::kOnePoint, 2.0);
  o.info.push_back(fmt::format(
      "example1_shifted (same M and a*, costs nonzero at a*): {}",
      DescribeFit(shifted)));
  return o;
}

Outcome TwoPointRate() {
  const EnsembleResult one =
      RunExample1("example1_wide", FeedbackMode::kOnePoint, 2.0);
  const EnsembleResult two =
      RunExample1("example1_wide", FeedbackMode::kTwoPoint, 2.0);
  const bool in_window = two.fit.slope >= -1.25 && two.fit.slope <= -0.75;
  const bool below = two.curve.back().mean < one.curve.back().mean;
  Outcome o;
  o.passed = in_window && below;
  o.summary = fmt::format(
      "example1_wide two-point c 2, a 1, s 1: {} (window [-1.25, -0.75]: {}); "
      "final mean below one-point {:.4g}: {}",
      DescribeFit(two), in_window ? "in" : "out", one.curve.back().mean,
      below ? "yes" : "no");
  o.info.push_back(CompareModes(one.fit, two.fit).report);
  const EnsembleResult shifted =
      RunExample1("example1_shifted", FeedbackMode::kTwoPoint, 2.0);
  o.info.push_back(fmt::format("example1_shifted two-point: {}",
                               DescribeFit(shifted)));
  return o;
}

Outcome PublishedParameters() {
  Outcome o;
  o.passed = true;
  std::string parts;
  for (const char* game : {"example1_wide", "example1_unit"}) {
    for (FeedbackMode mode :
         {FeedbackMode::kOnePoint, FeedbackMode::kTwoPoint}) {
      const EnsembleResult r = RunExample1(game, mode, 1.0);
      const double early = MeanAt(r.curve, kHorizon / 10);
      const double late = r.curve.back().mean;
      const bool ok = late < early;
      o.passed = o.passed && ok;
      parts += fmt::format(" {} {}: {:.4g} -> {:.4g} {};", game,
                           ToString(mode), early, late, ok ? "ok" : "NOT decreasing");
      o.info.push_back(fmt::format("{} {} c 1: {}", game, ToString(mode),
                                   DescribeFit(r)));
    }
  }
  o.summary = "c 1, a 1, s 1, mean dist_sq at T/10 -> T:" + parts;
  return o;
}

Outcome Unbiasedness() {
  Outcome o;
  o.passed = true;
  const std::size_t n = 1000000;
  const CatalogEntry quad = MakeCatalogEntry("quadratic");
  const JointPoint& b = *quad.game.equilibrium();
  double worst_quad = 0.0;
  for (FeedbackMode mode : {FeedbackMode::kOnePoint, FeedbackMode::kTwoPoint}) {
    const std::vector<JointPoint> states =
        SampleActionPoints(quad.game, 5, kSeed);
    for (std::size_t j = 0; j < states.size(); ++j) {
      const MomentEstimate m =
          EstimatorMoments(quad.game, states[j], 0.2, mode, n,
                           RngStream(kSeed).Fork(j).Fork(
                               mode == FeedbackMode::kOnePoint ? 1 : 2));
      double dist = 0.0;
      for (std::size_t k = 0; k < b.size(); ++k) {
        const double diff = m.mean[k] - 2.0 * (states[j][k] - b[k]);
        dist += diff * diff;
      }
      const double z = std::sqrt(dist) / m.JointStdError();
      worst_quad = std::max(worst_quad, z);
      o.passed = o.passed && z <= 3.0;
    }
  }
  const CatalogEntry ex1 = MakeCatalogEntry("example1_wide");
  double worst_ex1 = 0.0;
  for (FeedbackMode mode : {FeedbackMode::kOnePoint, FeedbackMode::kTwoPoint}) {
    const std::vector<JointPoint> states =
        SampleActionPoints(ex1.game, 5, kSeed + 1);
    for (std::size_t j = 0; j < states.size(); ++j) {
      const ConsistencyCheck c = SmoothingConsistency(
          ex1.game, states[j], 0.2, mode, n,
          RngStream(kSeed + 1).Fork(j).Fork(
              mode == FeedbackMode::kOnePoint ? 1 : 2));
      const double z = c.distance / c.joint_std_error;
      worst_ex1 = std::max(worst_ex1, z);
      o.passed = o.passed && z <= 3.0;
    }
  }
  o.summary = fmt::format(
      "n 1e6, sigma 0.2, 5 states x 2 modes: quadratic max |mean - 2(mu - b)| "
      "= {:.2f} joint SE; example1_wide max consistency distance = {:.2f} "
      "joint SE (limit 3)",
      worst_quad, worst_ex1);
  return o;
}

Outcome VarianceOrders() {
  const CatalogEntry entry = MakeCatalogEntry("example1_wide");
  const std::size_t n = 1000000;
  const JointPoint origin(3, 1, 0.0);
  const VarianceScaling one = MeasureVarianceScaling(
      entry.game, origin, 0.1, FeedbackMode::kOnePoint, n, kSeed);
  const VarianceScaling two = MeasureVarianceScaling(
      entry.game, origin, 0.1, FeedbackMode::kTwoPoint, n, kSeed + 1);
  const double spread =
      std::max(two.second_moment_sigma, two.second_moment_half) /
      std::min(two.second_moment_sigma, two.second_moment_half);
  const bool one_ok = one.ratio >= 2.5 && one.ratio <= 6.0;
  const bool two_ok = spread <= 2.0;
  Outcome o;
  o.passed = one_ok && two_ok;
  o.summary = fmt::format(
      "example1_wide at mu = 0: one-point E|R|^2 {:.4g} (sigma 0.1) -> {:.4g} "
      "(sigma 0.05), ratio {:.3f} (window [2.5, 6]); two-point {:.4g} -> "
      "{:.4g}, max/min {:.3f} (limit 2)",
      one.second_moment_sigma, one.second_moment_half, one.ratio,
      two.second_moment_sigma, two.second_moment_half, spread);
  o.info.push_back(fmt::format(
      "closed form at mu = 0 for both modes: 3 (3 sigma^4 + 15 sigma^2) = "
      "{:.4g} and {:.4g}, ratio {:.4f}",
      3 * (3 * 1e-4 + 15 * 1e-2), 3 * (3 * 6.25e-6 + 15 * 2.5e-3),
      (3 * 6.25e-6 + 15 * 2.5e-3) / (3 * 1e-4 + 15 * 1e-2)));
  const JointPoint half(3, 1, 0.5);
  const VarianceScaling one_half = MeasureVarianceScaling(
      entry.game, half, 0.1, FeedbackMode::kOnePoint, n, kSeed + 2);
  const VarianceScaling two_half = MeasureVarianceScaling(
      entry.game, half, 0.1, FeedbackMode::kTwoPoint, n, kSeed + 3);
  o.info.push_back(fmt::format(
      "example1_wide at mu = (0.5, 0.5, 0.5): one-point ratio {:.3f}, "
      "two-point {:.4g} -> {:.4g}",
      one_half.ratio, two_half.second_moment_sigma,
      two_half.second_moment_half));
  const CatalogEntry shifted = MakeCatalogEntry("example1_shifted");
  const VarianceScaling one_shift = MeasureVarianceScaling(
      shifted.game, origin, 0.1, FeedbackMode::kOnePoint, n, kSeed + 4);
  const VarianceScaling two_shift = MeasureVarianceScaling(
      shifted.game, origin, 0.1, FeedbackMode::kTwoPoint, n, kSeed + 5);
  o.info.push_back(fmt::format(
      "example1_shifted at mu = 0: one-point ratio {:.3f}, two-point {:.4g} "
      "-> {:.4g}",
      one_shift.ratio, two_shift.second_moment_sigma,
      two_shift.second_moment_half));
  return o;
}

Outcome SmoothingRemainder() {
  const CatalogEntry entry = MakeCatalogEntry("example1_wide");
  const std::vector<double> sigmas{0.4, 0.2, 0.1};
  const RemainderScaling r =
      MeasureRemainderScaling(entry.game, sigmas, 200, 100000, kSeed);
  Outcome o;
  std::string floors;
  for (const MarginFloor& f : r.floors) {
    floors += fmt::format(" sigma {}: {:.4g} (se {:.2g});", f.sigma, f.floor,
                          f.std_error);
  }
  if (r.slope) {
    o.passed = std::abs(*r.slope - 2.0) <= 0.5;
    o.summary = fmt::format(
        "example1_wide negative-margin floor slope {:.3f} (target 2 +/- "
        "0.5);{}",
        *r.slope, floors);
  } else {
    o.passed = false;
    o.summary = fmt::format(
        "example1_wide: no negative margin floor at any sigma, slope "
        "undefined (target 2 +/- 0.5);{}",
        floors);
  }
  // M~ = M on this game, so margin - svs_gap measures the remainder directly.
  const std::vector<JointPoint> states =
      SampleActionPoints(entry.game, 20, kSeed + 9);
  for (double sigma : sigmas) {
    double worst = 0.0;
    for (std::size_t j = 0; j < states.size(); ++j) {
      const ScalarEstimate m = AlmostSvsMargin(
          entry.game, states[j], sigma, 100000, RngStream(kSeed).Fork(j));
      worst = std::max(worst, std::abs(m.value - SvsGap(entry.game, states[j])) /
                                  std::max(m.std_error, 1e-300));
    }
    o.info.push_back(fmt::format(
        "sigma {}: max |margin - svs_gap| over 20 states = {:.2f} SE", sigma,
        worst));
  }
  return o;
}

Outcome Example1Structure() {
  const CatalogEntry entry = MakeCatalogEntry("example1_wide");
  double worst = INFINITY;
  for (const JointPoint& a : SampleActionPoints(entry.game, 100000, kSeed)) {
    worst = std::min(worst, SvsGap(entry.game, a));
  }
  const double eig =
      JacobianMinEigenvalue(entry.game, entry.game.MakePoint({2.0, 1.0, 2.0}));
  Outcome o;
  o.passed = worst >= -1e-9 && eig < 0.0;
  o.summary = fmt::format(
      "min svs_gap over 1e5 points = {:.6g} (limit -1e-9); Jacobian min "
      "eigenvalue at (2, 1, 2) = {:.6f} (must be < 0)",
      worst, eig);
  return o;
}

Outcome ChungRecursion() {
  const ChungResult a = ChungSimulate({1.0, 1.0, 0.5, 1.0, 1000000});
  const double rel = std::abs(a.limit_estimate - 2.0) / 2.0;
  const ChungResult critical = ChungSimulate({1.0, 1.0, 1.0, 1.0, 1000000});
  const ChungResult slow = ChungSimulate({0.5, 1.0, 1.0, 1.0, 1000000});
  auto bounded = [](const ChungResult& r) {
    return std::isfinite(r.scaled_max_last_decade) &&
           r.scaled_min_last_decade > 0.0 &&
           r.scaled_max_last_decade / r.scaled_min_last_decade <= 1.5;
  };
  Outcome o;
  o.passed = rel <= 0.05 && bounded(critical) && bounded(slow);
  o.summary = fmt::format(
      "(c, d, p) = (1, 1, 0.5): limit {:.5f} vs 2 (rel. error {:.2g}, limit "
      "0.05); c = p: u k / ln k in [{:.4f}, {:.4f}]; c < p: u k^c in [{:.4f}, "
      "{:.4f}]",
      a.limit_estimate, rel, critical.scaled_min_last_decade,
      critical.scaled_max_last_decade, slow.scaled_min_last_decade,
      slow.scaled_max_last_decade);
  return o;
}

Outcome Determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       fmt::format("nashzero_acceptance_{}", ::getpid());
  fs::create_directories(dir);
  auto csv_for = [&](const std::string& name, std::size_t threads) {
    ExperimentConfig config;
    config.game = "example1_wide";
    config.mode = FeedbackMode::kOnePoint;
    config.c = 2.0;
    config.iterations = 20000;
    config.num_runs = 10;
    config.seed = kSeed;
    config.threads = threads;
    config.output_path = (dir / name).string();
    std::ostringstream out, err;
    if (CmdRun(config, out, err) != kExitOk) {
      throw std::runtime_error("cmd_run failed: " + err.str());
    }
    std::ifstream in(config.output_path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  };
  const std::string a = csv_for("a.csv", 1);
  const std::string b = csv_for("b.csv", 1);
  const std::string c = csv_for("c.csv", 4);
  fs::remove_all(dir);
  Outcome o;
  o.passed = !a.empty() && a == b && a == c;
  o.summary = fmt::format(
      "two identical runs (and a 4-thread rerun) give byte-identical CSVs: "
      "{} ({} bytes)",
      o.passed ? "yes" : "no", a.size());
  return o;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace
}  // namespace nashzero

int main(int argc, char** argv) {
  using namespace nashzero;
  const std::vector<Criterion> criteria = {
      {"one_point_rate", OnePointRate},
      {"two_point_rate", TwoPointRate},
      {"published_parameters", PublishedParameters},
      {"unbiasedness", Unbiasedness},
      {"variance_orders", VarianceOrders},
      {"smoothing_remainder", SmoothingRemainder},
      {"example1_structure", Example1Structure},
      {"chung_recursion", ChungRecursion},
      {"determinism", Determinism},
  };

  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::cerr << "usage: acceptance_test [--only <criterion>]\n";
      return 2;
    }
  }

  bool all = true, matched = false;
  for (const Criterion& c : criteria) {
    if (!only.empty() && only != c.name) continue;
    matched = true;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.passed = false;
      o.summary = std::string("error: ") + e.what();
    }
    std::cout << (o.passed ? "PASS " : "FAIL ") << c.name << ": " << o.summary
              << '\n';
    for (const std::string& line : o.info) {
      std::cout << "  [info] " << line << '\n';
    }
    std::cout.flush();
    all = all && o.passed;
  }
  if (!matched) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all ? 0 : 1;
}
