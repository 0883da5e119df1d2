#ifndef NASHZERO_ESTIMATOR_H_
#define NASHZERO_ESTIMATOR_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "nashzero/game.h"
#include "nashzero/rng.h"

namespace nashzero {

enum class FeedbackMode { kOnePoint, kTwoPoint };

std::string_view ToString(FeedbackMode mode);
// Accepts "one-point"/"two-point" (also "1"/"2").
std::optional<FeedbackMode> ParseFeedbackMode(std::string_view text);

struct GradientEstimate {
  JointPoint per_player;  // blocks m^i
  FeedbackMode mode;
  double sigma;
  JointPoint query;  // xi
  JointPoint state;  // mu
};

// Draws xi ~ N(mu, sigma^2 I). Player i's block uses stream.Fork(i), so
// `stream` identifies (run, iteration) and the fork supplies the player.
JointPoint SampleQuery(const JointPoint& state, double sigma,
                       const RngStream& stream);
void SampleQueryInto(std::span<const double> state, std::size_t num_players,
                     std::size_t dim, double sigma, const RngStream& stream,
                     std::span<double> query);

// One-point: m^i = J_i(xi) (xi^i - mu^i) / sigma^2.
GradientEstimate EstimateOnePoint(const Game& game, const JointPoint& state,
                                  const JointPoint& query, double sigma);
// Two-point: m^i = (J_i(xi) - J_i(mu)) (xi^i - mu^i) / sigma^2.
GradientEstimate EstimateTwoPoint(const Game& game, const JointPoint& state,
                                  const JointPoint& query, double sigma);

// Allocation-free core shared by the two estimators and the learner. Costs at
// the state are evaluated only in two-point mode.
void EstimateInto(const Game& game, FeedbackMode mode,
                  std::span<const double> state, std::span<const double> query,
                  double sigma, std::span<double> out);

struct MomentEstimate {
  JointPoint mean;       // empirical smoothed pseudo-gradient
  JointPoint std_error;  // per-coordinate standard error of `mean`
  // Empirical E|R|^2 pooled over players, residual taken against `mean`.
  double residual_second_moment;
  std::size_t num_samples;

  double JointStdError() const;
};

// Monte-Carlo moments of n estimates at a fixed state. Sample s draws its
// query from stream.Fork(s).
MomentEstimate EstimatorMoments(const Game& game, const JointPoint& state,
                                double sigma, FeedbackMode mode, std::size_t n,
                                const RngStream& stream);

}  // namespace nashzero

#endif  // NASHZERO_ESTIMATOR_H_
