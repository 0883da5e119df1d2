#include "nashzero/game.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace nashzero {

// -- BoxSet -------------------------------------------------------------------

BoxSet::BoxSet(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("BoxSet: lower and upper differ in length");
  }
  if (lower_.empty()) {
    throw std::invalid_argument("BoxSet: dimension must be positive");
  }
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k])) {
      throw std::invalid_argument("BoxSet: bounds must be finite");
    }
    if (lower_[k] > upper_[k]) {
      throw std::invalid_argument(
          fmt::format("BoxSet: lower[{}] = {} exceeds upper[{}] = {}", k,
                      lower_[k], k, upper_[k]));
    }
  }
}

BoxSet BoxSet::Uniform(std::size_t dim, double lower, double upper) {
  return BoxSet(std::vector<double>(dim, lower),
                std::vector<double>(dim, upper));
}

bool BoxSet::Contains(std::span<const double> point, double tol) const {
  if (point.size() != dim()) return false;
  for (std::size_t k = 0; k < point.size(); ++k) {
    if (point[k] < lower_[k] - tol || point[k] > upper_[k] + tol) return false;
  }
  return true;
}

bool BoxSet::OnBoundary(std::span<const double> point, double tol) const {
  if (!Contains(point, tol)) return false;
  for (std::size_t k = 0; k < point.size(); ++k) {
    if (std::abs(point[k] - lower_[k]) <= tol ||
        std::abs(point[k] - upper_[k]) <= tol) {
      return true;
    }
  }
  return false;
}

void ProjectInPlace(const BoxSet& set, std::span<double> point) {
  if (point.size() != set.dim()) {
    throw std::invalid_argument(fmt::format(
        "Project: point has length {}, box has dimension {}", point.size(),
        set.dim()));
  }
  for (std::size_t k = 0; k < point.size(); ++k) {
    point[k] = std::clamp(point[k], set.lower()[k], set.upper()[k]);
  }
}

std::vector<double> Project(const BoxSet& set, std::span<const double> point) {
  std::vector<double> out(point.begin(), point.end());
  ProjectInPlace(set, out);
  return out;
}

// -- JointPoint ---------------------------------------------------------------

JointPoint::JointPoint(std::size_t num_players, std::size_t dim, double fill)
    : num_players_(num_players), dim_(dim), values_(num_players * dim, fill) {}

JointPoint::JointPoint(std::size_t num_players, std::size_t dim,
                       std::vector<double> values)
    : num_players_(num_players), dim_(dim), values_(std::move(values)) {
  if (values_.size() != num_players * dim) {
    throw std::invalid_argument(
        fmt::format("JointPoint: expected {} values for N = {}, d = {}, got {}",
                    num_players * dim, num_players, dim, values_.size()));
  }
}

std::span<double> JointPoint::Block(std::size_t player) {
  return std::span<double>(values_).subspan(player * dim_, dim_);
}

std::span<const double> JointPoint::Block(std::size_t player) const {
  return std::span<const double>(values_).subspan(player * dim_, dim_);
}

bool JointPoint::AllFinite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

double Dot(std::span<const double> u, std::span<const double> v) {
  double sum = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) sum += u[k] * v[k];
  return sum;
}

double SquaredDistance(std::span<const double> u, std::span<const double> v) {
  double sum = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double diff = u[k] - v[k];
    sum += diff * diff;
  }
  return sum;
}

double Norm(std::span<const double> u) { return std::sqrt(Dot(u, u)); }

// -- Game ---------------------------------------------------------------------

Game::Game(std::size_t num_players, std::size_t dim,
           std::vector<BoxSet> action_sets, CostOracle cost,
           GameOptions options)
    : num_players_(num_players),
      dim_(dim),
      action_sets_(std::move(action_sets)),
      cost_(std::move(cost)),
      pseudo_gradient_(std::move(options.pseudo_gradient)),
      equilibrium_(std::move(options.equilibrium)),
      svs_constant_(options.svs_constant),
      projection_(std::move(options.projection)) {
  if (num_players_ == 0 || dim_ == 0) {
    throw std::invalid_argument("Game: N and d must be positive");
  }
  if (action_sets_.size() != num_players_) {
    throw std::invalid_argument(
        fmt::format("Game: {} action sets for {} players", action_sets_.size(),
                    num_players_));
  }
  for (const BoxSet& set : action_sets_) {
    if (set.dim() != dim_) {
      throw std::invalid_argument("Game: action set dimension differs from d");
    }
  }
  if (!cost_) throw std::invalid_argument("Game: cost oracle is required");
  if (equilibrium_) {
    if (equilibrium_->num_players() != num_players_ ||
        equilibrium_->dim() != dim_) {
      throw std::invalid_argument("Game: equilibrium has the wrong layout");
    }
    if (!Contains(*equilibrium_, 1e-12)) {
      throw std::invalid_argument("Game: equilibrium lies outside the action sets");
    }
  }
  if (svs_constant_ && !(*svs_constant_ > 0.0)) {
    throw std::invalid_argument("Game: SVS constant must be positive");
  }
}

double Game::Cost(std::size_t player, std::span<const double> joint) const {
  const double value = cost_(player, joint);
  if (!std::isfinite(value)) {
    throw EvaluationError(
        player, fmt::format("cost of player {} is not finite", player));
  }
  return value;
}

void Game::PseudoGradientInto(std::span<const double> joint,
                              std::span<double> out) const {
  if (!pseudo_gradient_) {
    throw UnsupportedOperation("game has no analytic pseudo-gradient");
  }
  pseudo_gradient_(joint, out);
}

void Game::ProjectBlock(std::size_t player, std::span<double> block) const {
  if (projection_) {
    projection_(player, block);
  } else {
    ProjectInPlace(action_sets_[player], block);
  }
}

void Game::ProjectJoint(JointPoint& point) const {
  for (std::size_t i = 0; i < num_players_; ++i) {
    ProjectBlock(i, point.Block(i));
  }
}

bool Game::Contains(const JointPoint& point, double tol) const {
  if (point.num_players() != num_players_ || point.dim() != dim_) return false;
  for (std::size_t i = 0; i < num_players_; ++i) {
    if (!action_sets_[i].Contains(point.Block(i), tol)) return false;
  }
  return true;
}

// -- Operations ---------------------------------------------------------------

JointPoint PseudoGradient(const Game& game, const JointPoint& a) {
  JointPoint out = game.MakePoint();
  game.PseudoGradientInto(a.values(), out.values());
  return out;
}

double SvsGap(const Game& game, const JointPoint& a) {
  if (!game.equilibrium() || !game.svs_constant()) {
    throw UnsupportedOperation("SvsGap needs an equilibrium and SVS constant");
  }
  const JointPoint& eq = *game.equilibrium();
  const JointPoint m = PseudoGradient(game, a);
  double inner = 0.0;
  double dist_sq = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - eq[k];
    inner += m[k] * diff;
    dist_sq += diff * diff;
  }
  return inner - *game.svs_constant() * dist_sq;
}

JointPoint FiniteDifferencePseudoGradient(const Game& game, const JointPoint& a,
                                          double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("FiniteDifferencePseudoGradient: h must be > 0");
  }
  JointPoint out = game.MakePoint();
  std::vector<double> probe(a.values().begin(), a.values().end());
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    for (std::size_t k = 0; k < game.dim(); ++k) {
      const std::size_t flat = i * game.dim() + k;
      const double base = probe[flat];
      probe[flat] = base + h;
      const double up = game.Cost(i, probe);
      probe[flat] = base - h;
      const double down = game.Cost(i, probe);
      probe[flat] = base;
      out[flat] = (up - down) / (2.0 * h);
    }
  }
  return out;
}

double JacobianMinEigenvalue(const Game& game, const JointPoint& a, double h) {
  if (!game.has_pseudo_gradient()) {
    throw UnsupportedOperation("JacobianMinEigenvalue needs a pseudo-gradient");
  }
  const std::size_t n = game.joint_dim();
  Eigen::MatrixXd jac(n, n);
  std::vector<double> probe(a.values().begin(), a.values().end());
  std::vector<double> up(n), down(n);
  for (std::size_t col = 0; col < n; ++col) {
    const double base = probe[col];
    probe[col] = base + h;
    game.PseudoGradientInto(probe, up);
    probe[col] = base - h;
    game.PseudoGradientInto(probe, down);
    probe[col] = base;
    for (std::size_t row = 0; row < n; ++row) {
      jac(row, col) = (up[row] - down[row]) / (2.0 * h);
    }
  }
  const Eigen::MatrixXd sym = 0.5 * (jac + jac.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace nashzero
