#ifndef NASHZERO_CATALOG_H_
#define NASHZERO_CATALOG_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nashzero/game.h"

namespace nashzero {

enum class GameTag {
  kNonMonotone,
  kStronglyMonotone,
  kPotential,
  kBoundaryEquilibrium,
  kInteriorEquilibrium,
};

std::string_view ToString(GameTag tag);

struct CatalogEntry {
  std::string name;
  Game game;
  std::set<GameTag> tags;

  bool Has(GameTag tag) const { return tags.count(tag) > 0; }
};

// Three players, d = 1, J_i(a) = a1 a2 a3 + (a_i)^2 on bounds^3.
// Equilibrium 0, nu = 1/2 (proved on [-1, 2]^3 and kept on sub-boxes). The
// box must contain 0.
CatalogEntry Example1(const BoxSet& bounds, std::string name = "example1");

// Example1 with payoffs shifted by 1 + sum_{j != i} a_j. The shift leaves the
// pseudo-gradient, equilibrium and nu untouched but keeps the costs and
// their full gradients nonzero at the equilibrium, so estimator noise does
// not vanish there.
CatalogEntry Example1Shifted(const BoxSet& bounds,
                             std::string name = "example1_shifted");

// J_i(a) = |a^i - b_i|^2. M(a) = 2 (a - b) is strongly monotone with modulus 2;
// the stored SVS constant is 1 so that SvsGap(a) = |a - b|^2 leaves slack.
CatalogEntry DecoupledQuadratic(std::size_t num_players, std::size_t dim,
                                const JointPoint& targets,
                                std::vector<BoxSet> boxes,
                                std::string name = "quadratic");

// d = 1, J_i(a) = (a_i)^2 + coupling * a_i * sum_{j != i} a_j. M is affine with
// Jacobian 2 I + coupling (11^T - I); the stored nu is the Gershgorin bound
// 2 - (N - 1) |coupling|, which must be positive.
CatalogEntry BilinearCoupling(std::size_t num_players, double coupling,
                              std::vector<BoxSet> boxes,
                              std::string name = "bilinear");

// Stable CLI names: example1_wide, example1_unit, example1_neg, quadratic,
// bilinear, example1_shifted.
std::vector<std::string> CatalogNames();
// Throws std::invalid_argument for unknown names.
CatalogEntry MakeCatalogEntry(std::string_view name);

}  // namespace nashzero

#endif  // NASHZERO_CATALOG_H_
