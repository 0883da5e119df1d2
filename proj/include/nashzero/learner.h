#ifndef NASHZERO_LEARNER_H_
#define NASHZERO_LEARNER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashzero/estimator.h"
#include "nashzero/game.h"

namespace nashzero {

// A state update produced a non-finite value.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(std::uint64_t run, std::int64_t iteration,
                 const std::string& what)
      : std::runtime_error(what), run_(run), iteration_(iteration) {}
  std::uint64_t run() const { return run_; }
  std::int64_t iteration() const { return iteration_; }

 private:
  std::uint64_t run_;
  std::int64_t iteration_;
};

// gamma_t = c / t;  sigma_t = a / t^(1/4) (one-point) or a / t^s (two-point).
struct Schedules {
  double c = 1.0;
  double a = 1.0;
  double s = 1.0;
  FeedbackMode mode = FeedbackMode::kOnePoint;

  void Validate() const;
};

double StepSize(const Schedules& schedules, std::int64_t t);
double ExplorationRadius(const Schedules& schedules, std::int64_t t);

// Exploration radii below this trigger a trajectory warning: the two-point
// difference J(xi) - J(mu) loses most of its significant digits.
inline constexpr double kTinySigma = 1e-7;

struct LearnerConfig {
  Schedules schedules;
  std::int64_t iterations = 1000;
  // mu(0). When absent each run draws it from N(0, I) on stream iteration 0.
  std::optional<JointPoint> initial_state;
  std::uint64_t seed = 0;
  // Record every `record_stride` iterations; 0 selects the geometric grid.
  std::int64_t record_stride = 0;
  // Geometric grid size; 0 selects ~100 points per decade capped at 1000.
  std::size_t checkpoints = 0;
  bool record_distance = true;
  bool record_query = false;
  // Substitute the analytic pseudo-gradient for the estimate (sigma -> 0
  // sanity hook). Not a zeroth-order method.
  bool exact_gradient = false;

  void Validate() const;
};

struct Checkpoint {
  std::int64_t t;
  JointPoint state;  // mu(t), after the t-th update
  std::optional<double> dist_sq;
  std::optional<JointPoint> query;  // xi(t), the query used by update t
};

struct Trajectory {
  std::uint64_t run_index = 0;
  std::vector<Checkpoint> checkpoints;
  std::vector<std::string> warnings;
};

// Iterations at which Run records a checkpoint; always includes 1 and T.
std::vector<std::int64_t> CheckpointGrid(std::int64_t iterations,
                                         std::int64_t record_stride,
                                         std::size_t checkpoints);

// Projected zeroth-order gradient play. For t = 1..T every player samples
// its block of xi(t) around mu(t-1) with sigma_t, forms its estimate from
// the shared query, and updates mu^i(t) = Proj_{A_i}[mu^i(t-1) - gamma_t m^i].
// Random draws come from streams (seed, run_index, t, player).
Trajectory Run(const Game& game, const LearnerConfig& config,
               std::uint64_t run_index = 0);

// Runs 0..num_runs-1 of Run, on up to `threads` workers. The result is
// ordered by run index and does not depend on the thread count.
std::vector<Trajectory> RunEnsemble(const Game& game,
                                    const LearnerConfig& config,
                                    std::size_t num_runs,
                                    std::size_t threads = 1);

}  // namespace nashzero

#endif  // NASHZERO_LEARNER_H_
