#include "nashzero/experiment.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include <fmt/chrono.h>
#include <fmt/format.h>

namespace nashzero {

void ExperimentConfig::Validate() const {
  if (game.empty()) throw std::invalid_argument("game: name is empty");
  const std::vector<std::string> names = CatalogNames();
  if (std::find(names.begin(), names.end(), game) == names.end()) {
    throw std::invalid_argument(fmt::format("game: unknown name '{}'", game));
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument(fmt::format("c: must be > 0, got {}", c));
  }
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument(fmt::format("a: must be > 0, got {}", a));
  }
  if (mode == FeedbackMode::kTwoPoint && !(s >= 1.0 && std::isfinite(s))) {
    throw std::invalid_argument(
        fmt::format("s: two-point mode needs s >= 1, got {}", s));
  }
  if (iterations < 1) {
    throw std::invalid_argument(
        fmt::format("iterations: must be >= 1, got {}", iterations));
  }
  if (num_runs < 1) throw std::invalid_argument("runs: must be >= 1");
  if (checkpoints == 1) {
    throw std::invalid_argument("checkpoints: must be 0 (auto) or >= 2");
  }
  if (threads < 1) throw std::invalid_argument("threads: must be >= 1");
  if (output_path.empty()) throw std::invalid_argument("out: path is empty");
}

LearnerConfig ExperimentConfig::ToLearnerConfig() const {
  LearnerConfig config;
  config.schedules = Schedules{c, a, s, mode};
  config.iterations = iterations;
  config.seed = seed;
  config.checkpoints = checkpoints;
  config.record_distance = true;
  return config;
}

namespace {

std::optional<std::size_t> ParseCount(std::string_view text) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

std::size_t ResolveThreads(std::optional<std::size_t> flag) {
  if (flag) {
    if (*flag < 1) throw std::invalid_argument("threads: must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("NASHZERO_THREADS");
      env != nullptr && *env != '\0') {
    const std::optional<std::size_t> value = ParseCount(env);
    if (!value || *value < 1) {
      throw std::invalid_argument(
          fmt::format("NASHZERO_THREADS: expected a positive integer, got '{}'",
                      env));
    }
    return *value;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::string FormatReal(double value) { return fmt::format("{:.17g}", value); }

void WriteCsv(std::ostream& out, const std::vector<Trajectory>& runs) {
  out << kCsvHeader << '\n';
  for (const Trajectory& run : runs) {
    for (const Checkpoint& cp : run.checkpoints) {
      if (!cp.dist_sq) {
        throw std::invalid_argument(fmt::format(
            "WriteCsv: run {} has no dist_sq at t = {}", run.run_index, cp.t));
      }
      out << run.run_index << ',' << cp.t << ',' << FormatReal(*cp.dist_sq)
          << '\n';
    }
  }
}

std::vector<Trajectory> ReadCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("csv: empty input, expected a header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw std::invalid_argument(fmt::format(
        "csv: header is '{}', expected '{}'", line, kCsvHeader));
  }

  std::map<std::uint64_t, std::map<std::int64_t, double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 =
        c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
      throw std::invalid_argument(
          fmt::format("csv line {}: expected 3 fields", line_no));
    }
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    std::uint64_t run = 0;
    std::int64_t t = 0;
    double dist = 0.0;
    auto r1 = std::from_chars(begin, begin + c1, run);
    auto r2 = std::from_chars(begin + c1 + 1, begin + c2, t);
    auto r3 = std::from_chars(begin + c2 + 1, end, dist);
    if (r1.ec != std::errc() || r1.ptr != begin + c1 ||
        r2.ec != std::errc() || r2.ptr != begin + c2 ||
        r3.ec != std::errc() || r3.ptr != end) {
      throw std::invalid_argument(
          fmt::format("csv line {}: cannot parse '{}'", line_no, line));
    }
    if (t < 1) {
      throw std::invalid_argument(
          fmt::format("csv line {}: t must be >= 1", line_no));
    }
    if (!std::isfinite(dist) || dist < 0.0) {
      throw std::invalid_argument(fmt::format(
          "csv line {}: dist_sq must be finite and >= 0", line_no));
    }
    if (!rows[run].emplace(t, dist).second) {
      throw std::invalid_argument(fmt::format(
          "csv line {}: duplicate row for run {}, t = {}", line_no, run, t));
    }
  }
  if (rows.empty()) throw std::invalid_argument("csv: no data rows");

  std::vector<Trajectory> runs;
  runs.reserve(rows.size());
  for (const auto& [run, points] : rows) {
    Trajectory traj;
    traj.run_index = run;
    for (const auto& [t, dist] : points) {
      traj.checkpoints.push_back(Checkpoint{t, JointPoint(), dist, std::nullopt});
    }
    runs.push_back(std::move(traj));
  }
  return runs;
}

void WriteMetadata(std::ostream& out, const ExperimentConfig& config,
                   std::string_view timestamp) {
  out << "game = " << config.game << '\n'
      << "mode = " << ToString(config.mode) << '\n'
      << "c = " << FormatReal(config.c) << '\n'
      << "a = " << FormatReal(config.a) << '\n'
      << "s = " << FormatReal(config.s) << '\n'
      << "iterations = " << config.iterations << '\n'
      << "runs = " << config.num_runs << '\n'
      << "seed = " << config.seed << '\n'
      << "checkpoints = " << config.checkpoints << '\n'
      << "threads = " << config.threads << '\n'
      << "out = " << config.output_path << '\n'
      << "version = " << kVersion << '\n'
      << "created = " << timestamp << '\n';
}

std::string MetadataPath(std::string_view csv_path) {
  return std::string(csv_path) + ".meta";
}

namespace {

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

// Writes `content` to `path`; false on any I/O failure.
bool WriteFile(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return false;
  file << content;
  file.flush();
  return static_cast<bool>(file);
}

}  // namespace

int CmdRun(const ExperimentConfig& config, std::ostream& out,
           std::ostream& err) {
  try {
    config.Validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const CatalogEntry entry = MakeCatalogEntry(config.game);

  std::vector<Trajectory> runs;
  try {
    runs = RunEnsemble(entry.game, config.ToLearnerConfig(), config.num_runs,
                       config.threads);
  } catch (const NumericFailure& e) {
    err << "error: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  for (const Trajectory& run : runs) {
    for (const std::string& warning : run.warnings) {
      err << "warning: run " << run.run_index << ": " << warning << '\n';
    }
  }

  std::ostringstream csv;
  WriteCsv(csv, runs);
  if (!WriteFile(config.output_path, csv.str())) {
    err << "error: cannot write " << config.output_path << '\n';
    return kExitIo;
  }
  std::ostringstream meta;
  WriteMetadata(meta, config, UtcTimestamp());
  const std::string meta_path = MetadataPath(config.output_path);
  if (!WriteFile(meta_path, meta.str())) {
    err << "error: cannot write " << meta_path << '\n';
    return kExitIo;
  }

  const std::vector<CurvePoint> curve = MeanDistanceCurve(runs);
  out << fmt::format(
      "{} {} runs x {} iterations on {}: mean |mu(T) - a*|^2 = {:.6g} "
      "(se {:.2g})\n",
      config.num_runs, ToString(config.mode), config.iterations, config.game,
      curve.back().mean, curve.back().std_error);
  out << "wrote " << config.output_path << " and " << meta_path << '\n';
  return kExitOk;
}

int CmdRate(const std::string& input_path, double window_fraction,
            const std::optional<std::string>& report_path, std::ostream& out,
            std::ostream& err) {
  if (!(window_fraction > 0.0 && window_fraction < 1.0)) {
    err << "error: window fraction must lie in (0, 1)\n";
    return kExitUsage;
  }
  std::ifstream file(input_path, std::ios::binary);
  if (!file) {
    err << "error: cannot read " << input_path << '\n';
    return kExitIo;
  }
  RateFit fit;
  std::size_t num_runs = 0;
  try {
    const std::vector<Trajectory> runs = ReadCsv(file);
    num_runs = runs.size();
    const std::vector<CurvePoint> curve = MeanDistanceCurve(runs);
    fit = FitRate(curve, window_fraction);
  } catch (const std::invalid_argument& e) {
    err << "error: " << input_path << ": " << e.what() << '\n';
    return kExitUsage;
  }

  out << fmt::format(
      "slope {:.3f} +/- {:.3f}  intercept {:.4f}  r^2 {:.6f}  window [{}, {}] "
      "({} checkpoints, {} runs)\n",
      fit.slope, fit.slope_std_error, fit.intercept, fit.r_squared, fit.t_lo,
      fit.t_hi, fit.num_points, num_runs);

  std::ostringstream report;
  report << "input = " << input_path << '\n'
         << "runs = " << num_runs << '\n'
         << "window_fraction = " << FormatReal(window_fraction) << '\n'
         << "t_lo = " << fit.t_lo << '\n'
         << "t_hi = " << fit.t_hi << '\n'
         << "num_points = " << fit.num_points << '\n'
         << "slope = " << FormatReal(fit.slope) << '\n'
         << "slope_std_error = " << FormatReal(fit.slope_std_error) << '\n'
         << "intercept = " << FormatReal(fit.intercept) << '\n'
         << "r_squared = " << FormatReal(fit.r_squared) << '\n';
  const std::string path = report_path.value_or(input_path + ".rate");
  if (!WriteFile(path, report.str())) {
    err << "error: cannot write " << path << '\n';
    return kExitIo;
  }
  out << "wrote " << path << '\n';
  return kExitOk;
}

// -- Shared checks ------------------------------------------------------------

std::vector<JointPoint> SampleActionPoints(const Game& game, std::size_t count,
                                           std::uint64_t seed) {
  const RngStream root(seed);
  std::vector<JointPoint> points;
  points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    RngStream stream = root.Fork(k);
    JointPoint point = game.MakePoint();
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      const BoxSet& box = game.action_set(i);
      for (std::size_t j = 0; j < game.dim(); ++j) {
        point.at(i, j) = stream.Uniform(box.lower()[j], box.upper()[j]);
      }
    }
    points.push_back(std::move(point));
  }
  return points;
}

VarianceScaling MeasureVarianceScaling(const Game& game,
                                       const JointPoint& state, double sigma,
                                       FeedbackMode mode, std::size_t n,
                                       std::uint64_t seed) {
  const RngStream stream(seed);
  VarianceScaling out;
  out.second_moment_sigma =
      EstimatorMoments(game, state, sigma, mode, n, stream.Fork(0))
          .residual_second_moment;
  out.second_moment_half =
      EstimatorMoments(game, state, sigma / 2.0, mode, n, stream.Fork(1))
          .residual_second_moment;
  out.ratio = out.second_moment_half / out.second_moment_sigma;
  return out;
}

RemainderScaling MeasureRemainderScaling(const Game& game,
                                         std::span<const double> sigmas,
                                         std::size_t num_states, std::size_t n,
                                         std::uint64_t seed) {
  if (!game.equilibrium()) {
    throw UnsupportedOperation("remainder scaling needs a known equilibrium");
  }
  std::vector<JointPoint> states{*game.equilibrium()};
  for (JointPoint& p : SampleActionPoints(game, num_states, seed)) {
    states.push_back(std::move(p));
  }
  const RngStream stream = RngStream(seed).Fork(1);
  RemainderScaling out;
  const ScalarEstimate at_eq = AlmostSvsMargin(
      game, *game.equilibrium(), sigmas.front(), n, stream.Fork(0));
  out.margin_at_equilibrium = at_eq.value;
  out.margin_at_equilibrium_se = at_eq.std_error;
  out.floors = MarginFloors(game, states, sigmas, n, stream.Fork(1));

  bool all_negative = sigmas.size() >= 2;
  std::vector<double> depth;
  for (const MarginFloor& f : out.floors) {
    if (!(f.floor < -3.0 * f.std_error) || !(f.floor < 0.0)) {
      all_negative = false;
    }
    depth.push_back(-f.floor);
  }
  if (all_negative) {
    out.slope = FitLogLog(sigmas, depth).slope;
  }
  return out;
}

// -- Verify suites ------------------------------------------------------------

namespace {

CheckResult Check(std::string name, bool passed, std::string detail) {
  return CheckResult{std::move(name), passed, std::move(detail)};
}

void RequireMetadata(const Game& game, std::string_view suite) {
  if (!game.has_pseudo_gradient() || !game.equilibrium() ||
      !game.svs_constant()) {
    throw UnsupportedOperation(fmt::format(
        "suite '{}' needs an analytic pseudo-gradient, equilibrium and nu",
        suite));
  }
}

// Box vertices of the joint action set, or none if there are too many.
std::vector<JointPoint> Vertices(const Game& game) {
  std::vector<JointPoint> out;
  const std::size_t size = game.joint_dim();
  if (size > 12) return out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << size); ++mask) {
    JointPoint p = game.MakePoint();
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      const BoxSet& box = game.action_set(i);
      for (std::size_t j = 0; j < game.dim(); ++j) {
        const std::size_t bit = i * game.dim() + j;
        p.at(i, j) = (mask >> bit) & 1 ? box.upper()[j] : box.lower()[j];
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CheckResult> GradientSuite(const CatalogEntry& entry,
                                       const VerifyOptions& options) {
  const Game& game = entry.game;
  RequireMetadata(game, "gradients");
  std::vector<CheckResult> out;

  double worst = 0.0;
  for (const JointPoint& a : SampleActionPoints(game, 100, options.seed)) {
    const JointPoint exact = PseudoGradient(game, a);
    const JointPoint fd = FiniteDifferencePseudoGradient(game, a);
    for (std::size_t k = 0; k < exact.size(); ++k) {
      worst = std::max(worst,
                       std::abs(exact[k] - fd[k]) / (1.0 + std::abs(exact[k])));
    }
  }
  out.push_back(Check("finite_difference_agreement", worst <= 1e-6,
                      fmt::format("max relative error {:.3g} over 100 points "
                                  "(h = 1e-5, tolerance 1e-6)",
                                  worst)));

  std::vector<JointPoint> points = Vertices(game);
  for (JointPoint& p : SampleActionPoints(game, 200, options.seed + 1)) {
    points.push_back(std::move(p));
  }
  double min_eig = std::numeric_limits<double>::infinity();
  for (const JointPoint& p : points) {
    min_eig = std::min(min_eig, JacobianMinEigenvalue(game, p));
  }
  const double nu = *game.svs_constant();
  if (entry.Has(GameTag::kNonMonotone)) {
    out.push_back(Check(
        "non_monotone_witness", min_eig < 0.0,
        fmt::format("min Jacobian eigenvalue {:.6g} (tagged non_monotone)",
                    min_eig)));
  } else if (entry.Has(GameTag::kStronglyMonotone)) {
    out.push_back(Check("strong_monotonicity", min_eig >= nu - 1e-6,
                        fmt::format("min Jacobian eigenvalue {:.6g} vs nu {}",
                                    min_eig, nu)));
  } else {
    out.push_back(Check("monotonicity_probe", true,
                        fmt::format("min Jacobian eigenvalue {:.6g}", min_eig)));
  }
  return out;
}

std::vector<CheckResult> SvsSuite(const CatalogEntry& entry,
                                  const VerifyOptions& options) {
  const Game& game = entry.game;
  RequireMetadata(game, "svs");
  std::vector<CheckResult> out;
  const JointPoint& eq = *game.equilibrium();

  const std::size_t count = std::max<std::size_t>(options.samples / 2, 1000);
  double min_gap = std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const JointPoint& a : SampleActionPoints(game, count, options.seed)) {
    min_gap = std::min(min_gap, SvsGap(game, a));
    const double d2 = SquaredDistance(a.values(), eq.values());
    if (d2 > 1e-6) {
      const JointPoint m = PseudoGradient(game, a);
      std::vector<double> diff(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) diff[k] = a[k] - eq[k];
      min_ratio = std::min(min_ratio, Dot(m.values(), diff) / d2);
    }
  }
  out.push_back(Check(
      "svs_inequality", min_gap >= -1e-9,
      fmt::format("min (M(a), a - a*) - nu |a - a*|^2 = {:.6g} over {} points "
                  "(nu = {}, implied modulus >= {:.6g})",
                  min_gap, count, *game.svs_constant(), min_ratio)));

  // a* solves the variational inequality: Proj(a* - M(a*)) = a*.
  JointPoint step = eq;
  const JointPoint m = PseudoGradient(game, eq);
  for (std::size_t k = 0; k < step.size(); ++k) step[k] -= m[k];
  game.ProjectJoint(step);
  const double residual = std::sqrt(SquaredDistance(step.values(), eq.values()));
  out.push_back(Check("equilibrium_fixed_point", residual <= 1e-12,
                      fmt::format("|Proj(a* - M(a*)) - a*| = {:.3g}",
                                  residual)));
  return out;
}

std::vector<CheckResult> ConsistencySuite(const CatalogEntry& entry,
                                          const VerifyOptions& options) {
  const Game& game = entry.game;
  RequireMetadata(game, "lemma1");
  std::vector<JointPoint> states{*game.equilibrium()};
  for (JointPoint& p : SampleActionPoints(game, 4, options.seed)) {
    states.push_back(std::move(p));
  }
  const double sigma = 0.2;
  const RngStream root = RngStream(options.seed).Fork(7);
  std::vector<CheckResult> out;
  for (FeedbackMode mode : {FeedbackMode::kOnePoint, FeedbackMode::kTwoPoint}) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const ConsistencyCheck check = SmoothingConsistency(
          game, states[j], sigma, mode, options.samples,
          root.Fork(j).Fork(mode == FeedbackMode::kOnePoint ? 1 : 2));
      const bool ok = check.distance <= 3.0 * check.joint_std_error + 1e-12;
      out.push_back(Check(
          fmt::format("unbiased_{}_state{}", ToString(mode), j), ok,
          fmt::format("|mean(m) - M~| = {:.4g}, joint se {:.4g} (sigma {}, n "
                      "{})",
                      check.distance, check.joint_std_error, sigma,
                      options.samples)));
    }
  }
  return out;
}

std::vector<CheckResult> VarianceSuite(const CatalogEntry& entry,
                                       const VerifyOptions& options) {
  const Game& game = entry.game;
  JointPoint state;
  if (options.state) {
    state = *options.state;
  } else if (game.equilibrium()) {
    state = *game.equilibrium();
  } else {
    throw UnsupportedOperation("lemma2: no state given and no equilibrium");
  }
  if (state.size() != game.joint_dim()) {
    throw std::invalid_argument("lemma2: state has the wrong size");
  }
  std::vector<CheckResult> out;
  const double sigma = 0.1;
  const VarianceScaling one = MeasureVarianceScaling(
      game, state, sigma, FeedbackMode::kOnePoint, options.samples,
      options.seed);
  out.push_back(Check(
      "one_point_inverse_sigma_squared",
      one.ratio >= 2.5 && one.ratio <= 6.0,
      fmt::format("E|R|^2 = {:.4g} at sigma {}, {:.4g} at sigma {}; ratio "
                  "{:.3f} (expected 4, accepted [2.5, 6])",
                  one.second_moment_sigma, sigma, one.second_moment_half,
                  sigma / 2, one.ratio)));
  const VarianceScaling two = MeasureVarianceScaling(
      game, state, sigma, FeedbackMode::kTwoPoint, options.samples,
      options.seed + 1);
  const double hi =
      std::max(two.second_moment_sigma, two.second_moment_half);
  const double lo =
      std::min(two.second_moment_sigma, two.second_moment_half);
  const double spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  out.push_back(Check(
      "two_point_sigma_independent", spread <= 2.0,
      fmt::format("E|R|^2 = {:.4g} at sigma {}, {:.4g} at sigma {}; max/min "
                  "{:.3f} (accepted <= 2)",
                  two.second_moment_sigma, sigma, two.second_moment_half,
                  sigma / 2, spread)));
  return out;
}

std::vector<CheckResult> RemainderSuite(const CatalogEntry& entry,
                                        const VerifyOptions& options) {
  const Game& game = entry.game;
  RequireMetadata(game, "prop1");
  const std::vector<double> sigmas{0.4, 0.2, 0.1};
  const RemainderScaling scaling =
      MeasureRemainderScaling(game, sigmas, 200, options.samples / 10,
                              options.seed);
  std::vector<CheckResult> out;
  out.push_back(Check(
      "margin_at_equilibrium",
      std::abs(scaling.margin_at_equilibrium) <=
          3.0 * scaling.margin_at_equilibrium_se + 1e-12,
      fmt::format("margin {:.4g} (se {:.3g}) at a*, sigma {}",
                  scaling.margin_at_equilibrium,
                  scaling.margin_at_equilibrium_se, sigmas.front())));

  std::string floors;
  bool any_negative = false;
  for (const MarginFloor& f : scaling.floors) {
    floors += fmt::format(" sigma {}: {:.4g} (se {:.2g});", f.sigma, f.floor,
                          f.std_error);
    if (f.floor < -3.0 * f.std_error) any_negative = true;
  }
  if (scaling.slope) {
    const double slope = *scaling.slope;
    out.push_back(Check(
        "remainder_order_sigma_squared", std::abs(slope - 2.0) <= 0.5,
        fmt::format("floor slope {:.3f} (expected 2 +/- 0.5);{}", slope,
                    floors)));
  } else if (!any_negative) {
    // Without smoothing bias the margin never dips below zero and the bound
    // holds with K = 0.
    out.push_back(Check("remainder_order_sigma_squared", true,
                        fmt::format("no negative margin observed, bound "
                                    "holds trivially;{}",
                                    floors)));
  } else {
    out.push_back(Check("remainder_order_sigma_squared", false,
                        fmt::format("negative margins at only some sigmas, "
                                    "slope undefined;{}",
                                    floors)));
  }
  return out;
}

std::vector<CheckResult> ChungSuite() {
  std::vector<CheckResult> out;
  {
    ChungParams p{1.0, 1.0, 0.5, 1.0, 1000000};
    const ChungResult r = ChungSimulate(p);
    const double target = p.d / (p.c - p.p);
    const double rel = std::abs(r.limit_estimate - target) / target;
    out.push_back(Check(
        "contracting_limit", rel <= 0.05,
        fmt::format("c 1, d 1, p 0.5: u_k k^p = {:.5f} at k = {}, limit {} "
                    "(relative error {:.2g})",
                    r.limit_estimate, r.final_k, target, rel)));
  }
  {
    const ChungResult r = ChungSimulate({1.0, 1.0, 1.0, 1.0, 1000000});
    const double spread = r.scaled_max_last_decade / r.scaled_min_last_decade;
    out.push_back(Check(
        "critical_log_rate", std::isfinite(spread) && spread <= 1.5,
        fmt::format("c = p = 1: u_k k / ln k in [{:.4f}, {:.4f}] over the last "
                    "decade",
                    r.scaled_min_last_decade, r.scaled_max_last_decade)));
  }
  {
    const ChungResult r = ChungSimulate({0.5, 1.0, 1.0, 1.0, 1000000});
    const double spread = r.scaled_max_last_decade / r.scaled_min_last_decade;
    out.push_back(Check(
        "forcing_dominated_rate", std::isfinite(spread) && spread <= 1.5,
        fmt::format("c 0.5 < p 1: u_k k^c in [{:.4f}, {:.4f}] over the last "
                    "decade",
                    r.scaled_min_last_decade, r.scaled_max_last_decade)));
  }
  return out;
}

}  // namespace

std::vector<std::string> VerifySuiteNames() {
  return {"gradients", "svs", "lemma1", "lemma2", "prop1", "chung"};
}

std::vector<CheckResult> RunVerifySuite(const CatalogEntry& entry,
                                        std::string_view suite,
                                        const VerifyOptions& options) {
  if (options.samples < 2) {
    throw std::invalid_argument("verify: samples must be >= 2");
  }
  if (suite == "gradients") return GradientSuite(entry, options);
  if (suite == "svs") return SvsSuite(entry, options);
  if (suite == "lemma1") return ConsistencySuite(entry, options);
  if (suite == "lemma2") return VarianceSuite(entry, options);
  if (suite == "prop1") return RemainderSuite(entry, options);
  if (suite == "chung") return ChungSuite();
  throw std::invalid_argument(fmt::format("unknown suite '{}'", suite));
}

int CmdVerify(std::string_view game, std::string_view suite,
              const VerifyOptions& options, std::ostream& out,
              std::ostream& err) {
  std::vector<CheckResult> results;
  try {
    const CatalogEntry entry = MakeCatalogEntry(game);
    results = RunVerifySuite(entry, suite, options);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedOperation& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  bool all = true;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << suite << '.' << r.name << ": "
        << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? kExitOk : kExitChecksFailed;
}

}  // namespace nashzero
