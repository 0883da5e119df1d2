#include "nashzero/catalog.h"

#include <cmath>
#include <utility>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace nashzero {

std::string_view ToString(GameTag tag) {
  switch (tag) {
    case GameTag::kNonMonotone:
      return "non_monotone";
    case GameTag::kStronglyMonotone:
      return "strongly_monotone";
    case GameTag::kPotential:
      return "potential";
    case GameTag::kBoundaryEquilibrium:
      return "boundary_equilibrium";
    case GameTag::kInteriorEquilibrium:
      return "interior_equilibrium";
  }
  return "unknown";
}

namespace {

GameTag EquilibriumTag(const Game& game) {
  const JointPoint& eq = *game.equilibrium();
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    if (game.action_set(i).OnBoundary(eq.Block(i))) {
      return GameTag::kBoundaryEquilibrium;
    }
  }
  return GameTag::kInteriorEquilibrium;
}

// The symmetric part of Example 1's Jacobian is affine in a, so its smallest
// eigenvalue is concave and attains its minimum over the box at a vertex.
bool Example1NonMonotoneOn(const BoxSet& bounds) {
  const double lo = bounds.lower()[0];
  const double hi = bounds.upper()[0];
  for (int mask = 0; mask < 8; ++mask) {
    const double a1 = (mask & 1) ? hi : lo;
    const double a2 = (mask & 2) ? hi : lo;
    const double a3 = (mask & 4) ? hi : lo;
    Eigen::Matrix3d jac;
    jac << 2, a3, a2, a3, 2, a1, a2, a1, 2;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(
        jac, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < 0.0) return true;
  }
  return false;
}

void Example1Gradient(std::span<const double> a, std::span<double> out) {
  out[0] = a[1] * a[2] + 2.0 * a[0];
  out[1] = a[0] * a[2] + 2.0 * a[1];
  out[2] = a[0] * a[1] + 2.0 * a[2];
}

CatalogEntry MakeExample1(const BoxSet& bounds, std::string name,
                          bool shifted) {
  if (bounds.dim() != 1) {
    throw std::invalid_argument("example1: bounds must be one-dimensional");
  }
  const std::vector<double> zero{0.0};
  if (!bounds.Contains(zero)) {
    throw std::invalid_argument(
        "example1: the box must contain 0, the known equilibrium");
  }
  CostOracle cost;
  if (shifted) {
    cost = [](std::size_t i, std::span<const double> a) {
      const double others = a[0] + a[1] + a[2] - a[i];
      return a[0] * a[1] * a[2] + a[i] * a[i] + 1.0 + others;
    };
  } else {
    cost = [](std::size_t i, std::span<const double> a) {
      return a[0] * a[1] * a[2] + a[i] * a[i];
    };
  }
  GameOptions options;
  options.pseudo_gradient = Example1Gradient;
  options.equilibrium = JointPoint(3, 1, 0.0);
  options.svs_constant = 0.5;
  Game game(3, 1, std::vector<BoxSet>(3, bounds), std::move(cost),
            std::move(options));
  std::set<GameTag> tags{GameTag::kPotential, EquilibriumTag(game)};
  if (Example1NonMonotoneOn(bounds)) tags.insert(GameTag::kNonMonotone);
  return CatalogEntry{std::move(name), std::move(game), std::move(tags)};
}

void CheckBoxes(const std::vector<BoxSet>& boxes, std::size_t num_players,
                std::size_t dim) {
  if (boxes.size() != num_players) {
    throw std::invalid_argument(fmt::format(
        "expected {} boxes, got {}", num_players, boxes.size()));
  }
  for (const BoxSet& box : boxes) {
    if (box.dim() != dim) {
      throw std::invalid_argument("box dimension does not match d");
    }
  }
}

}  // namespace

CatalogEntry Example1(const BoxSet& bounds, std::string name) {
  return MakeExample1(bounds, std::move(name), /*shifted=*/false);
}

CatalogEntry Example1Shifted(const BoxSet& bounds, std::string name) {
  return MakeExample1(bounds, std::move(name), /*shifted=*/true);
}

CatalogEntry DecoupledQuadratic(std::size_t num_players, std::size_t dim,
                                const JointPoint& targets,
                                std::vector<BoxSet> boxes, std::string name) {
  if (num_players == 0 || dim == 0) {
    throw std::invalid_argument("quadratic: N and d must be positive");
  }
  if (targets.num_players() != num_players || targets.dim() != dim) {
    throw std::invalid_argument("quadratic: targets have the wrong layout");
  }
  CheckBoxes(boxes, num_players, dim);
  for (std::size_t i = 0; i < num_players; ++i) {
    if (!boxes[i].Contains(targets.Block(i))) {
      throw std::invalid_argument(
          fmt::format("quadratic: target of player {} is outside its box", i));
    }
  }
  std::vector<double> b = targets.vector();
  CostOracle cost = [b, dim](std::size_t i, std::span<const double> a) {
    double sum = 0.0;
    for (std::size_t k = i * dim; k < (i + 1) * dim; ++k) {
      sum += (a[k] - b[k]) * (a[k] - b[k]);
    }
    return sum;
  };
  GameOptions options;
  options.pseudo_gradient = [b](std::span<const double> a,
                                std::span<double> out) {
    for (std::size_t k = 0; k < b.size(); ++k) out[k] = 2.0 * (a[k] - b[k]);
  };
  options.equilibrium = targets;
  options.svs_constant = 1.0;
  Game game(num_players, dim, std::move(boxes), std::move(cost),
            std::move(options));
  std::set<GameTag> tags{GameTag::kStronglyMonotone, GameTag::kPotential,
                         EquilibriumTag(game)};
  return CatalogEntry{std::move(name), std::move(game), std::move(tags)};
}

CatalogEntry BilinearCoupling(std::size_t num_players, double coupling,
                              std::vector<BoxSet> boxes, std::string name) {
  if (num_players == 0) {
    throw std::invalid_argument("bilinear: N must be positive");
  }
  CheckBoxes(boxes, num_players, 1);
  const double nu =
      2.0 - static_cast<double>(num_players - 1) * std::abs(coupling);
  if (!(nu > 0.0)) {
    throw std::invalid_argument(fmt::format(
        "bilinear: coupling {} gives nu bound {} <= 0", coupling, nu));
  }
  const std::vector<double> zero{0.0};
  for (const BoxSet& box : boxes) {
    if (!box.Contains(zero)) {
      throw std::invalid_argument("bilinear: every box must contain 0");
    }
  }
  CostOracle cost = [coupling](std::size_t i, std::span<const double> a) {
    double others = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j != i) others += a[j];
    }
    return a[i] * a[i] + coupling * a[i] * others;
  };
  GameOptions options;
  options.pseudo_gradient = [coupling](std::span<const double> a,
                                       std::span<double> out) {
    double total = 0.0;
    for (double v : a) total += v;
    for (std::size_t i = 0; i < a.size(); ++i) {
      out[i] = 2.0 * a[i] + coupling * (total - a[i]);
    }
  };
  options.equilibrium = JointPoint(num_players, 1, 0.0);
  options.svs_constant = nu;
  Game game(num_players, 1, std::move(boxes), std::move(cost),
            std::move(options));
  std::set<GameTag> tags{GameTag::kStronglyMonotone, GameTag::kPotential,
                         EquilibriumTag(game)};
  return CatalogEntry{std::move(name), std::move(game), std::move(tags)};
}

std::vector<std::string> CatalogNames() {
  return {"example1_wide", "example1_unit", "example1_neg",
          "quadratic",     "bilinear",      "example1_shifted"};
}

CatalogEntry MakeCatalogEntry(std::string_view name) {
  if (name == "example1_wide") {
    return Example1(BoxSet::Uniform(1, -1.0, 2.0), "example1_wide");
  }
  if (name == "example1_unit") {
    return Example1(BoxSet::Uniform(1, 0.0, 1.0), "example1_unit");
  }
  if (name == "example1_neg") {
    return Example1(BoxSet::Uniform(1, -1.0, 0.0), "example1_neg");
  }
  if (name == "example1_shifted") {
    return Example1Shifted(BoxSet::Uniform(1, -1.0, 2.0), "example1_shifted");
  }
  if (name == "quadratic") {
    const JointPoint targets(3, 2, {0.3, -0.2, 0.5, 0.1, -0.4, 0.25});
    return DecoupledQuadratic(3, 2, targets,
                              std::vector<BoxSet>(3, BoxSet::Uniform(2, -1, 1)));
  }
  if (name == "bilinear") {
    return BilinearCoupling(3, 0.5,
                            std::vector<BoxSet>(3, BoxSet::Uniform(1, -1, 1)));
  }
  throw std::invalid_argument(fmt::format("unknown game '{}'", name));
}

}  // namespace nashzero
