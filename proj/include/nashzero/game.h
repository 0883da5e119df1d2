#ifndef NASHZERO_GAME_H_
#define NASHZERO_GAME_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nashzero {

// Raised when an operation needs game metadata (analytic pseudo-gradient,
// equilibrium, SVS constant) that the game does not carry.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A cost oracle returned a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::size_t player, const std::string& what)
      : std::runtime_error(what), player_(player) {}
  std::size_t player() const { return player_; }

 private:
  std::size_t player_;
};

// Axis-aligned box [lower, upper] in R^d.
class BoxSet {
 public:
  BoxSet(std::vector<double> lower, std::vector<double> upper);
  // Same interval on every coordinate.
  static BoxSet Uniform(std::size_t dim, double lower, double upper);

  std::size_t dim() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }

  bool Contains(std::span<const double> point, double tol = 0.0) const;
  // True if some coordinate of `point` sits on a face of the box.
  bool OnBoundary(std::span<const double> point, double tol = 0.0) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

// Coordinatewise clamp onto the box.
std::vector<double> Project(const BoxSet& set, std::span<const double> point);
void ProjectInPlace(const BoxSet& set, std::span<double> point);

// Joint action / state / query vector in R^{N*d}, player-major: player i owns
// the slice [i*d, (i+1)*d).
class JointPoint {
 public:
  JointPoint() = default;
  JointPoint(std::size_t num_players, std::size_t dim, double fill = 0.0);
  JointPoint(std::size_t num_players, std::size_t dim,
             std::vector<double> values);

  std::size_t num_players() const { return num_players_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }

  std::span<double> Block(std::size_t player);
  std::span<const double> Block(std::size_t player) const;

  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& at(std::size_t player, std::size_t coord) {
    return values_[player * dim_ + coord];
  }
  double at(std::size_t player, std::size_t coord) const {
    return values_[player * dim_ + coord];
  }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }

  bool SameLayout(const JointPoint& other) const {
    return num_players_ == other.num_players_ && dim_ == other.dim_;
  }
  bool AllFinite() const;

  friend bool operator==(const JointPoint&, const JointPoint&) = default;

 private:
  std::size_t num_players_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

double Dot(std::span<const double> u, std::span<const double> v);
double SquaredDistance(std::span<const double> u, std::span<const double> v);
double Norm(std::span<const double> u);

// J_i(a): cost of `player` at joint action `joint` (length N*d).
using CostOracle =
    std::function<double(std::size_t player, std::span<const double> joint)>;
// Writes M(a) into `out` (length N*d).
using PseudoGradientOracle =
    std::function<void(std::span<const double> joint, std::span<double> out)>;
// Projects one player's block onto a general closed convex set. Overrides the
// box clamp when supplied.
using ProjectionOracle =
    std::function<void(std::size_t player, std::span<double> block)>;

struct GameOptions {
  PseudoGradientOracle pseudo_gradient;
  std::optional<JointPoint> equilibrium;
  std::optional<double> svs_constant;
  ProjectionOracle projection;
};

// Convex game with N players sharing action dimension d. Immutable after
// construction; all members are safe for concurrent reads.
class Game {
 public:
  Game(std::size_t num_players, std::size_t dim,
       std::vector<BoxSet> action_sets, CostOracle cost,
       GameOptions options = {});

  std::size_t num_players() const { return num_players_; }
  std::size_t dim() const { return dim_; }
  std::size_t joint_dim() const { return num_players_ * dim_; }
  const std::vector<BoxSet>& action_sets() const { return action_sets_; }
  const BoxSet& action_set(std::size_t player) const {
    return action_sets_[player];
  }

  // Throws EvaluationError if the oracle returns a non-finite value.
  double Cost(std::size_t player, std::span<const double> joint) const;
  double Cost(std::size_t player, const JointPoint& joint) const {
    return Cost(player, joint.values());
  }

  bool has_pseudo_gradient() const {
    return static_cast<bool>(pseudo_gradient_);
  }
  void PseudoGradientInto(std::span<const double> joint,
                          std::span<double> out) const;

  const std::optional<JointPoint>& equilibrium() const { return equilibrium_; }
  const std::optional<double>& svs_constant() const { return svs_constant_; }

  void ProjectBlock(std::size_t player, std::span<double> block) const;
  void ProjectJoint(JointPoint& point) const;
  bool Contains(const JointPoint& point, double tol = 0.0) const;

  JointPoint MakePoint(double fill = 0.0) const {
    return JointPoint(num_players_, dim_, fill);
  }
  JointPoint MakePoint(std::vector<double> values) const {
    return JointPoint(num_players_, dim_, std::move(values));
  }

 private:
  std::size_t num_players_;
  std::size_t dim_;
  std::vector<BoxSet> action_sets_;
  CostOracle cost_;
  PseudoGradientOracle pseudo_gradient_;
  std::optional<JointPoint> equilibrium_;
  std::optional<double> svs_constant_;
  ProjectionOracle projection_;
};

// M(a), block i = grad_{a^i} J_i(a). Throws UnsupportedOperation without an
// analytic oracle.
JointPoint PseudoGradient(const Game& game, const JointPoint& a);

// (M(a), a - a*) - nu * |a - a*|^2. Nonnegative wherever the SVS inequality
// holds.
double SvsGap(const Game& game, const JointPoint& a);

// Central differences of the cost oracles, per (player, coordinate).
JointPoint FiniteDifferencePseudoGradient(const Game& game, const JointPoint& a,
                                          double h = 1e-5);

// Smallest eigenvalue of the symmetrized finite-difference Jacobian of the
// analytic pseudo-gradient. Negative values witness non-monotonicity.
double JacobianMinEigenvalue(const Game& game, const JointPoint& a,
                             double h = 1e-5);

}  // namespace nashzero

#endif  // NASHZERO_GAME_H_
