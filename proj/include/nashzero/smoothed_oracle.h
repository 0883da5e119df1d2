#ifndef NASHZERO_SMOOTHED_ORACLE_H_
#define NASHZERO_SMOOTHED_ORACLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "nashzero/estimator.h"
#include "nashzero/game.h"
#include "nashzero/rng.h"

namespace nashzero {

// Mixed-strategy (Gaussian-smoothed) quantities. Every Monte-Carlo routine
// draws sample s from stream.Fork(s) exactly like EstimatorMoments, so
// calls sharing a stream use common random numbers.

struct SmoothedEvaluation {
  std::vector<double> value;
  std::vector<double> std_error;
  double sigma = 0.0;
  std::size_t num_samples = 0;

  double JointStdError() const;
};

// E[J_i(xi)], xi ~ N(state, sigma^2 I).
SmoothedEvaluation SmoothedCost(const Game& game, std::size_t player,
                                const JointPoint& state, double sigma,
                                std::size_t n, const RngStream& stream);

// E[M(xi)], the pseudo-gradient in mixed strategies.
SmoothedEvaluation SmoothedPseudoGradient(const Game& game,
                                          const JointPoint& state, double sigma,
                                          std::size_t n,
                                          const RngStream& stream);

struct ScalarEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// (M~(mu), mu - a*) - nu |mu - a*|^2. Bounded below by -K N d sigma^2.
ScalarEstimate AlmostSvsMargin(const Game& game, const JointPoint& state,
                               double sigma, std::size_t n,
                               const RngStream& stream);

struct ConsistencyCheck {
  double distance = 0.0;         // |mean(m) - M~(mu)|
  double joint_std_error = 0.0;  // sqrt(sum_k se_k^2) of the difference
};

// Compares the mean of n estimator draws with the smoothed pseudo-gradient
// on the same draws: the per-sample difference m(xi_s) - M(xi_s) has mean
// zero exactly when E[m] = M~.
ConsistencyCheck SmoothingConsistency(const Game& game,
                                      const JointPoint& state, double sigma,
                                      FeedbackMode mode, std::size_t n,
                                      const RngStream& stream);

struct MarginFloor {
  double sigma = 0.0;
  double floor = 0.0;      // min over states of the margin estimate
  double std_error = 0.0;  // standard error at the minimizing state
  std::size_t argmin = 0;
};

// Lowest almost-SVS margin over `states`, one entry per sigma. All sigmas
// share `stream`, so floors at different sigmas differ only through sigma.
std::vector<MarginFloor> MarginFloors(const Game& game,
                                      std::span<const JointPoint> states,
                                      std::span<const double> sigmas,
                                      std::size_t n, const RngStream& stream);

// Gauss-Hermite rule for the standard normal measure (weights sum to one).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule GaussHermiteRule(std::size_t num_nodes);

// Deterministic tensor-grid counterparts of the Monte-Carlo routines, for
// N*d <= 4. Exact for polynomial integrands of degree < 2 * num_nodes.
double SmoothedCostQuadrature(const Game& game, std::size_t player,
                              const JointPoint& state, double sigma,
                              std::size_t num_nodes = 20);
JointPoint SmoothedPseudoGradientQuadrature(const Game& game,
                                            const JointPoint& state,
                                            double sigma,
                                            std::size_t num_nodes = 20);

}  // namespace nashzero

#endif  // NASHZERO_SMOOTHED_ORACLE_H_
