#include "nashzero/estimator.h"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "nashzero/statistics.h"

namespace nashzero {

std::string_view ToString(FeedbackMode mode) {
  return mode == FeedbackMode::kOnePoint ? "one-point" : "two-point";
}

std::optional<FeedbackMode> ParseFeedbackMode(std::string_view text) {
  if (text == "one-point" || text == "1") return FeedbackMode::kOnePoint;
  if (text == "two-point" || text == "2") return FeedbackMode::kTwoPoint;
  return std::nullopt;
}

namespace {

void CheckSigma(double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument(
        fmt::format("exploration radius must be positive, got {}", sigma));
  }
}

}  // namespace

void SampleQueryInto(std::span<const double> state, std::size_t num_players,
                     std::size_t dim, double sigma, const RngStream& stream,
                     std::span<double> query) {
  CheckSigma(sigma);
  for (std::size_t i = 0; i < num_players; ++i) {
    RngStream player_stream = stream.Fork(i);
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t flat = i * dim + k;
      query[flat] = state[flat] + sigma * player_stream.StandardNormal();
    }
  }
}

JointPoint SampleQuery(const JointPoint& state, double sigma,
                       const RngStream& stream) {
  JointPoint query(state.num_players(), state.dim());
  SampleQueryInto(state.values(), state.num_players(), state.dim(), sigma,
                  stream, query.values());
  return query;
}

void EstimateInto(const Game& game, FeedbackMode mode,
                  std::span<const double> state, std::span<const double> query,
                  double sigma, std::span<double> out) {
  CheckSigma(sigma);
  const double inv_var = 1.0 / (sigma * sigma);
  const std::size_t dim = game.dim();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    double scale = game.Cost(i, query);
    if (mode == FeedbackMode::kTwoPoint) scale -= game.Cost(i, state);
    scale *= inv_var;
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t flat = i * dim + k;
      out[flat] = scale * (query[flat] - state[flat]);
    }
  }
}

namespace {

GradientEstimate Estimate(const Game& game, FeedbackMode mode,
                          const JointPoint& state, const JointPoint& query,
                          double sigma) {
  if (!state.SameLayout(query) || state.size() != game.joint_dim()) {
    throw std::invalid_argument("estimate: state and query layouts differ");
  }
  GradientEstimate estimate{game.MakePoint(), mode, sigma, query, state};
  EstimateInto(game, mode, state.values(), query.values(), sigma,
               estimate.per_player.values());
  return estimate;
}

}  // namespace

GradientEstimate EstimateOnePoint(const Game& game, const JointPoint& state,
                                  const JointPoint& query, double sigma) {
  return Estimate(game, FeedbackMode::kOnePoint, state, query, sigma);
}

GradientEstimate EstimateTwoPoint(const Game& game, const JointPoint& state,
                                  const JointPoint& query, double sigma) {
  return Estimate(game, FeedbackMode::kTwoPoint, state, query, sigma);
}

double MomentEstimate::JointStdError() const {
  double sum = 0.0;
  for (double se : std_error.values()) sum += se * se;
  return std::sqrt(sum);
}

MomentEstimate EstimatorMoments(const Game& game, const JointPoint& state,
                                double sigma, FeedbackMode mode, std::size_t n,
                                const RngStream& stream) {
  if (n < 2) throw std::invalid_argument("EstimatorMoments: n must be >= 2");
  CheckSigma(sigma);
  const std::size_t size = game.joint_dim();
  std::vector<double> query(size), estimate(size);
  VectorMoments moments(size);
  for (std::size_t s = 0; s < n; ++s) {
    SampleQueryInto(state.values(), game.num_players(), game.dim(), sigma,
                    stream.Fork(s), query);
    EstimateInto(game, mode, state.values(), query, sigma, estimate);
    moments.Add(estimate);
  }
  return MomentEstimate{game.MakePoint(moments.mean()),
                        game.MakePoint(moments.StandardError()),
                        moments.TotalVariance(), n};
}

}  // namespace nashzero
