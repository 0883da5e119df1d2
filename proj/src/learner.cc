#include "nashzero/learner.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/format.h>

#include "nashzero/rng.h"

namespace nashzero {

void Schedules::Validate() const {
  if (!(c > 0.0)) throw std::invalid_argument("schedules: c must be > 0");
  if (!(a > 0.0)) throw std::invalid_argument("schedules: a must be > 0");
  if (mode == FeedbackMode::kTwoPoint && !(s >= 1.0)) {
    throw std::invalid_argument("schedules: two-point mode needs s >= 1");
  }
}

double StepSize(const Schedules& schedules, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("StepSize: t must be >= 1");
  return schedules.c / static_cast<double>(t);
}

double ExplorationRadius(const Schedules& schedules, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("ExplorationRadius: t must be >= 1");
  const double exponent =
      schedules.mode == FeedbackMode::kOnePoint ? 0.25 : schedules.s;
  return schedules.a / std::pow(static_cast<double>(t), exponent);
}

void LearnerConfig::Validate() const {
  schedules.Validate();
  if (iterations < 1) {
    throw std::invalid_argument("learner: iterations must be >= 1");
  }
  if (record_stride < 0 || record_stride > iterations) {
    throw std::invalid_argument(
        "learner: record stride must lie in [1, iterations] (0 = geometric)");
  }
  if (initial_state && !initial_state->AllFinite()) {
    throw std::invalid_argument("learner: initial state must be finite");
  }
}

std::vector<std::int64_t> CheckpointGrid(std::int64_t iterations,
                                         std::int64_t record_stride,
                                         std::size_t checkpoints) {
  std::vector<std::int64_t> grid{1};
  if (record_stride > 0) {
    for (std::int64_t t = record_stride; t <= iterations; t += record_stride) {
      grid.push_back(t);
    }
  } else {
    std::size_t count = checkpoints;
    if (count == 0) {
      const double decades = std::log10(static_cast<double>(iterations));
      count = std::min<std::size_t>(
          1000, static_cast<std::size_t>(std::ceil(100.0 * decades)) + 1);
    }
    count = std::max<std::size_t>(count, 2);
    const double log_t = std::log(static_cast<double>(iterations));
    for (std::size_t k = 1; k < count; ++k) {
      const double frac = static_cast<double>(k) / static_cast<double>(count - 1);
      grid.push_back(std::llround(std::exp(frac * log_t)));
    }
  }
  grid.push_back(iterations);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  while (!grid.empty() && grid.back() > iterations) grid.pop_back();
  return grid;
}

Trajectory Run(const Game& game, const LearnerConfig& config,
               std::uint64_t run_index) {
  config.Validate();
  const std::size_t size = game.joint_dim();
  if (config.record_distance && !game.equilibrium()) {
    throw std::invalid_argument(
        "learner: distance recording needs a known equilibrium");
  }
  if (config.exact_gradient && !game.has_pseudo_gradient()) {
    throw UnsupportedOperation("learner: exact gradient needs an oracle");
  }

  const RngStream run_stream = RngStream(config.seed).Fork(run_index);
  JointPoint state = game.MakePoint();
  if (config.initial_state) {
    if (config.initial_state->size() != size) {
      throw std::invalid_argument("learner: initial state has the wrong size");
    }
    state = *config.initial_state;
  } else {
    const RngStream init = run_stream.Fork(0);
    for (std::size_t i = 0; i < game.num_players(); ++i) {
      RngStream player_stream = init.Fork(i);
      for (double& v : state.Block(i)) v = player_stream.StandardNormal();
    }
  }

  Trajectory trajectory;
  trajectory.run_index = run_index;
  const std::vector<std::int64_t> grid =
      CheckpointGrid(config.iterations, config.record_stride, config.checkpoints);
  trajectory.checkpoints.reserve(grid.size());
  auto next_checkpoint = grid.begin();

  JointPoint query = game.MakePoint();
  std::vector<double> estimate(size);
  bool warned = false;

  for (std::int64_t t = 1; t <= config.iterations; ++t) {
    const double gamma = StepSize(config.schedules, t);
    const double sigma = ExplorationRadius(config.schedules, t);
    if (!warned && sigma < kTinySigma) {
      trajectory.warnings.push_back(fmt::format(
          "exploration radius {:.3g} below {:.0e} from t = {}", sigma,
          kTinySigma, t));
      warned = true;
    }

    if (config.exact_gradient) {
      game.PseudoGradientInto(state.values(), estimate);
    } else {
      SampleQueryInto(state.values(), game.num_players(), game.dim(), sigma,
                      run_stream.Fork(static_cast<std::uint64_t>(t)),
                      query.values());
      try {
        EstimateInto(game, config.schedules.mode, state.values(),
                     query.values(), sigma, estimate);
      } catch (const EvaluationError& e) {
        throw NumericFailure(run_index, t,
                             fmt::format("run {}, t = {}: {}", run_index, t,
                                         e.what()));
      }
    }

    for (std::size_t k = 0; k < size; ++k) state[k] -= gamma * estimate[k];
    game.ProjectJoint(state);
    if (!state.AllFinite()) {
      throw NumericFailure(
          run_index, t,
          fmt::format("run {}, t = {}: state is not finite", run_index, t));
    }

    if (next_checkpoint != grid.end() && *next_checkpoint == t) {
      Checkpoint cp{t, state, std::nullopt, std::nullopt};
      if (config.record_distance) {
        cp.dist_sq = SquaredDistance(state.values(),
                                     game.equilibrium()->values());
      }
      if (config.record_query && !config.exact_gradient) cp.query = query;
      trajectory.checkpoints.push_back(std::move(cp));
      ++next_checkpoint;
    }
  }
  return trajectory;
}

std::vector<Trajectory> RunEnsemble(const Game& game,
                                    const LearnerConfig& config,
                                    std::size_t num_runs, std::size_t threads) {
  if (num_runs < 1) throw std::invalid_argument("RunEnsemble: num_runs >= 1");
  config.Validate();
  std::vector<Trajectory> runs(num_runs);
  std::vector<std::exception_ptr> errors(num_runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < num_runs; r = next++) {
      try {
        runs[r] = Run(game, config, r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, num_runs);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  // Report the lowest failing run so errors are deterministic too.
  for (const std::exception_ptr& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return runs;
}

}  // namespace nashzero
