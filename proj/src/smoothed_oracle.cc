#include "nashzero/smoothed_oracle.h"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "nashzero/statistics.h"

namespace nashzero {
namespace {

void CheckArgs(double sigma, std::size_t n) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (n < 2) throw std::invalid_argument("need at least 2 samples");
}

SmoothedEvaluation Finish(const VectorMoments& moments, double sigma,
                          std::size_t n) {
  return SmoothedEvaluation{moments.mean(), moments.StandardError(), sigma, n};
}

// Calls body(x, weight) over the tensor grid mu + sigma * z.
template <typename Body>
void ForEachGridPoint(const JointPoint& state, double sigma,
                      std::size_t num_nodes, Body&& body) {
  const std::size_t dims = state.size();
  if (dims > 4) {
    throw std::invalid_argument(
        "tensor quadrature supports joint dimension <= 4");
  }
  const QuadratureRule rule = GaussHermiteRule(num_nodes);
  std::vector<std::size_t> index(dims, 0);
  std::vector<double> x(dims);
  while (true) {
    double weight = 1.0;
    for (std::size_t k = 0; k < dims; ++k) {
      x[k] = state[k] + sigma * rule.nodes[index[k]];
      weight *= rule.weights[index[k]];
    }
    body(std::span<const double>(x), weight);
    std::size_t k = 0;
    while (k < dims && ++index[k] == num_nodes) index[k++] = 0;
    if (k == dims) break;
  }
}

}  // namespace

double SmoothedEvaluation::JointStdError() const {
  double sum = 0.0;
  for (double se : std_error) sum += se * se;
  return std::sqrt(sum);
}

SmoothedEvaluation SmoothedCost(const Game& game, std::size_t player,
                                const JointPoint& state, double sigma,
                                std::size_t n, const RngStream& stream) {
  CheckArgs(sigma, n);
  std::vector<double> query(game.joint_dim());
  VectorMoments moments(1);
  for (std::size_t s = 0; s < n; ++s) {
    SampleQueryInto(state.values(), game.num_players(), game.dim(), sigma,
                    stream.Fork(s), query);
    const double value = game.Cost(player, query);
    moments.Add(std::span<const double>(&value, 1));
  }
  return Finish(moments, sigma, n);
}

SmoothedEvaluation SmoothedPseudoGradient(const Game& game,
                                          const JointPoint& state, double sigma,
                                          std::size_t n,
                                          const RngStream& stream) {
  CheckArgs(sigma, n);
  if (!game.has_pseudo_gradient()) {
    throw UnsupportedOperation("smoothed pseudo-gradient needs an oracle");
  }
  const std::size_t size = game.joint_dim();
  std::vector<double> query(size), grad(size);
  VectorMoments moments(size);
  for (std::size_t s = 0; s < n; ++s) {
    SampleQueryInto(state.values(), game.num_players(), game.dim(), sigma,
                    stream.Fork(s), query);
    game.PseudoGradientInto(query, grad);
    moments.Add(grad);
  }
  return Finish(moments, sigma, n);
}

ScalarEstimate AlmostSvsMargin(const Game& game, const JointPoint& state,
                               double sigma, std::size_t n,
                               const RngStream& stream) {
  CheckArgs(sigma, n);
  if (!game.equilibrium() || !game.svs_constant()) {
    throw UnsupportedOperation("margin needs an equilibrium and SVS constant");
  }
  if (!game.has_pseudo_gradient()) {
    throw UnsupportedOperation("margin needs a pseudo-gradient oracle");
  }
  const std::size_t size = game.joint_dim();
  std::vector<double> offset(size);
  for (std::size_t k = 0; k < size; ++k) {
    offset[k] = state[k] - (*game.equilibrium())[k];
  }
  const double penalty = *game.svs_constant() * Dot(offset, offset);

  std::vector<double> query(size), grad(size);
  VectorMoments moments(1);
  for (std::size_t s = 0; s < n; ++s) {
    SampleQueryInto(state.values(), game.num_players(), game.dim(), sigma,
                    stream.Fork(s), query);
    game.PseudoGradientInto(query, grad);
    const double sample = Dot(grad, offset) - penalty;
    moments.Add(std::span<const double>(&sample, 1));
  }
  return ScalarEstimate{moments.mean()[0], moments.StandardError()[0]};
}

ConsistencyCheck SmoothingConsistency(const Game& game,
                                      const JointPoint& state, double sigma,
                                      FeedbackMode mode, std::size_t n,
                                      const RngStream& stream) {
  CheckArgs(sigma, n);
  if (!game.has_pseudo_gradient()) {
    throw UnsupportedOperation("consistency check needs a pseudo-gradient");
  }
  const std::size_t size = game.joint_dim();
  std::vector<double> query(size), estimate(size), grad(size), diff(size);
  VectorMoments moments(size);
  for (std::size_t s = 0; s < n; ++s) {
    SampleQueryInto(state.values(), game.num_players(), game.dim(), sigma,
                    stream.Fork(s), query);
    EstimateInto(game, mode, state.values(), query, sigma, estimate);
    game.PseudoGradientInto(query, grad);
    for (std::size_t k = 0; k < size; ++k) diff[k] = estimate[k] - grad[k];
    moments.Add(diff);
  }
  double se_sq = 0.0;
  for (double se : moments.StandardError()) se_sq += se * se;
  return ConsistencyCheck{Norm(moments.mean()), std::sqrt(se_sq)};
}

std::vector<MarginFloor> MarginFloors(const Game& game,
                                      std::span<const JointPoint> states,
                                      std::span<const double> sigmas,
                                      std::size_t n, const RngStream& stream) {
  if (states.empty()) throw std::invalid_argument("MarginFloors: no states");
  std::vector<MarginFloor> floors;
  floors.reserve(sigmas.size());
  for (double sigma : sigmas) {
    MarginFloor best{sigma, std::numeric_limits<double>::infinity(), 0.0, 0};
    for (std::size_t j = 0; j < states.size(); ++j) {
      const ScalarEstimate margin =
          AlmostSvsMargin(game, states[j], sigma, n, stream.Fork(j));
      if (margin.value < best.floor) {
        best.floor = margin.value;
        best.std_error = margin.std_error;
        best.argmin = j;
      }
    }
    floors.push_back(best);
  }
  return floors;
}

QuadratureRule GaussHermiteRule(std::size_t num_nodes) {
  if (num_nodes < 1) throw std::invalid_argument("need at least one node");
  // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite
  // polynomials: zero diagonal, off-diagonal sqrt(k).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(num_nodes, num_nodes);
  for (std::size_t k = 1; k < num_nodes; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  QuadratureRule rule;
  rule.nodes.resize(num_nodes);
  rule.weights.resize(num_nodes);
  for (std::size_t k = 0; k < num_nodes; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double v = solver.eigenvectors()(0, k);
    rule.weights[k] = v * v;
  }
  return rule;
}

double SmoothedCostQuadrature(const Game& game, std::size_t player,
                              const JointPoint& state, double sigma,
                              std::size_t num_nodes) {
  CompensatedSum sum;
  ForEachGridPoint(state, sigma, num_nodes,
                   [&](std::span<const double> x, double w) {
                     sum.Add(w * game.Cost(player, x));
                   });
  return sum.value();
}

JointPoint SmoothedPseudoGradientQuadrature(const Game& game,
                                            const JointPoint& state,
                                            double sigma,
                                            std::size_t num_nodes) {
  if (!game.has_pseudo_gradient()) {
    throw UnsupportedOperation("quadrature needs a pseudo-gradient oracle");
  }
  const std::size_t size = game.joint_dim();
  std::vector<CompensatedSum> sums(size);
  std::vector<double> grad(size);
  ForEachGridPoint(state, sigma, num_nodes,
                   [&](std::span<const double> x, double w) {
                     game.PseudoGradientInto(x, grad);
                     for (std::size_t k = 0; k < size; ++k) {
                       sums[k].Add(w * grad[k]);
                     }
                   });
  JointPoint out = game.MakePoint();
  for (std::size_t k = 0; k < size; ++k) out[k] = sums[k].value();
  return out;
}

}  // namespace nashzero
