#ifndef NASHZERO_EXPERIMENT_H_
#define NASHZERO_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nashzero/analysis.h"
#include "nashzero/catalog.h"
#include "nashzero/estimator.h"
#include "nashzero/learner.h"
#include "nashzero/smoothed_oracle.h"

namespace nashzero {

inline constexpr std::string_view kVersion = NASHZERO_VERSION;

enum ExitCode : int {
  kExitOk = 0,
  kExitChecksFailed = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitNumeric = 4,
};

// Defaults reproduce the published experiment: c = 1, a = 1, s = 1.
struct ExperimentConfig {
  std::string game = "example1_wide";
  FeedbackMode mode = FeedbackMode::kOnePoint;
  double c = 1.0;
  double a = 1.0;
  double s = 1.0;
  std::int64_t iterations = 100000;
  std::size_t num_runs = 50;
  std::uint64_t seed = 0;
  std::size_t checkpoints = 0;  // 0: ~100 per decade, at most 1000
  std::size_t threads = 1;
  std::string output_path = "run.csv";

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
  LearnerConfig ToLearnerConfig() const;
};

// --threads if given, else NASHZERO_THREADS, else hardware concurrency.
std::size_t ResolveThreads(std::optional<std::size_t> flag);

// Round-trippable decimal with 17 significant digits.
std::string FormatReal(double value);

inline constexpr std::string_view kCsvHeader = "run_id,t,dist_sq";

// One row per (run, checkpoint), runs in index order. LF line endings.
void WriteCsv(std::ostream& out, const std::vector<Trajectory>& runs);
// Parses WriteCsv output back into trajectories carrying only t and
// dist_sq. Throws std::invalid_argument on malformed or empty input.
std::vector<Trajectory> ReadCsv(std::istream& in);

// `key = value` lines for every resolved field, plus version and timestamp.
// Keys match the CLI flag names so the file can be passed back via --config.
void WriteMetadata(std::ostream& out, const ExperimentConfig& config,
                   std::string_view timestamp);

std::string MetadataPath(std::string_view csv_path);

// -- Commands -----------------------------------------------------------------
// Each returns an ExitCode and writes human-readable output to `out` and
// diagnostics to `err`.

int CmdRun(const ExperimentConfig& config, std::ostream& out,
           std::ostream& err);

// Reads a run CSV, fits the rate over [window_fraction T, T], prints the fit
// and persists it to `report_path` (default: <input>.rate).
int CmdRate(const std::string& input_path, double window_fraction,
            const std::optional<std::string>& report_path, std::ostream& out,
            std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 200000;  // Monte-Carlo draws per estimate
  // State for the lemma2 suite; defaults to the game's equilibrium.
  std::optional<JointPoint> state;
};

std::vector<std::string> VerifySuiteNames();

// Runs one suite of property checks. Throws std::invalid_argument for an
// unknown suite.
std::vector<CheckResult> RunVerifySuite(const CatalogEntry& entry,
                                        std::string_view suite,
                                        const VerifyOptions& options);

int CmdVerify(std::string_view game, std::string_view suite,
              const VerifyOptions& options, std::ostream& out,
              std::ostream& err);

// -- Shared checks ------------------------------------------------------------
// Used by both the verify suites and the acceptance suite.

// Uniform points in the joint action set, from stream (seed).Fork(k).
std::vector<JointPoint> SampleActionPoints(const Game& game, std::size_t count,
                                           std::uint64_t seed);

// Residual second moments at sigma and sigma / 2 and their ratio
// SM(sigma / 2) / SM(sigma).
struct VarianceScaling {
  double second_moment_sigma = 0.0;
  double second_moment_half = 0.0;
  double ratio = 0.0;
};
VarianceScaling MeasureVarianceScaling(const Game& game,
                                       const JointPoint& state, double sigma,
                                       FeedbackMode mode, std::size_t n,
                                       std::uint64_t seed);

// Almost-SVS margin floors over the equilibrium plus `num_states` uniform
// points, one per sigma. `slope` is the log-log slope of -floor against sigma
// and is set only when every floor is negative beyond three standard errors.
struct RemainderScaling {
  std::vector<MarginFloor> floors;
  double margin_at_equilibrium = 0.0;
  double margin_at_equilibrium_se = 0.0;
  std::optional<double> slope;
};
RemainderScaling MeasureRemainderScaling(const Game& game,
                                         std::span<const double> sigmas,
                                         std::size_t num_states, std::size_t n,
                                         std::uint64_t seed);

}  // namespace nashzero

#endif  // NASHZERO_EXPERIMENT_H_
