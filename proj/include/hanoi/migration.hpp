#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanoi/core.hpp"

namespace hanoi {

/// A migratable unit. Rank 0 is the most core component and maps to the largest disk.
struct Component {
  std::string name;
  int dependency_rank = 0;
};

enum class TierRole { source, auxiliary, target };

std::string_view role_name(TierRole r) noexcept;
TierRole parse_role(std::string_view name);

struct Tier {
  std::string name;
  TierRole role = TierRole::source;
};

/// Components moved across three tiers; the tier's position in `tiers` is its peg.
struct MigrationProblem {
  std::vector<Component> components;
  std::vector<Tier> tiers;

  /// Throws InvalidArgument if ranks are not a permutation of 0..n-1 or roles are incomplete.
  void validate() const;
  /// Component occupying disk `disk`.
  const Component& component_for_disk(int disk) const;
  int peg_of(TierRole role) const;
};

/// Cloud -> regional edge -> local edge, with components ranked in list order.
MigrationProblem make_edge_cloud_problem(std::span<const std::string> component_names);

struct MigrationStep {
  std::string component;
  std::string from_tier;
  std::string to_tier;

  friend bool operator==(const MigrationStep&, const MigrationStep&) = default;
};

struct MigrationPlan {
  std::vector<MigrationStep> steps;
};

HanoiMdp to_hanoi(const MigrationProblem& problem,
                  RewardModel reward = RewardModel::valid_invalid_goal());

/// Replays `moves` from the initial state. Throws PlanValidationError naming the
/// first illegal move.
MigrationPlan plan_to_migration_steps(const MigrationProblem& problem, std::span<const Move> moves);

std::string to_string(const MigrationStep& step);

}  // namespace hanoi
