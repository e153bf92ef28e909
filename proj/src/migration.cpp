#include "hanoi/migration.hpp"

#include <algorithm>

#include "hanoi/error.hpp"

namespace hanoi {

std::string_view role_name(TierRole r) noexcept {
  switch (r) {
    case TierRole::source: return "source";
    case TierRole::auxiliary: return "auxiliary";
    case TierRole::target: return "target";
  }
  return "?";
}

TierRole parse_role(std::string_view name) {
  if (name == "source") return TierRole::source;
  if (name == "auxiliary") return TierRole::auxiliary;
  if (name == "target") return TierRole::target;
  throw InvalidArgument("unknown tier role: " + std::string(name));
}

void MigrationProblem::validate() const {
  if (components.empty()) throw InvalidArgument("migration problem needs at least one component");
  std::vector<bool> seen(components.size(), false);
  for (const auto& c : components) {
    if (c.dependency_rank < 0 || c.dependency_rank >= static_cast<int>(components.size())) {
      throw InvalidArgument("dependency rank of '" + c.name + "' out of range");
    }
    auto r = static_cast<std::size_t>(c.dependency_rank);
    if (seen[r]) throw InvalidArgument("duplicate dependency rank " + std::to_string(r));
    seen[r] = true;
  }
  if (tiers.size() != kPegs) throw InvalidArgument("migration problem needs exactly 3 tiers");
  for (TierRole role : {TierRole::source, TierRole::auxiliary, TierRole::target}) {
    auto count = std::count_if(tiers.begin(), tiers.end(),
                               [&](const Tier& t) { return t.role == role; });
    if (count != 1) {
      throw InvalidArgument("need exactly one " + std::string(role_name(role)) + " tier");
    }
  }
}

const Component& MigrationProblem::component_for_disk(int disk) const {
  for (const auto& c : components) {
    if (c.dependency_rank == disk) return c;
  }
  throw InvalidArgument("no component with rank " + std::to_string(disk));
}

int MigrationProblem::peg_of(TierRole role) const {
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    if (tiers[i].role == role) return static_cast<int>(i);
  }
  throw InvalidArgument("missing " + std::string(role_name(role)) + " tier");
}

MigrationProblem make_edge_cloud_problem(std::span<const std::string> component_names) {
  MigrationProblem p;
  for (std::size_t i = 0; i < component_names.size(); ++i) {
    p.components.push_back({component_names[i], static_cast<int>(i)});
  }
  p.tiers = {{"cloud", TierRole::source},
             {"regional-edge", TierRole::auxiliary},
             {"local-edge", TierRole::target}};
  return p;
}

HanoiMdp to_hanoi(const MigrationProblem& problem, RewardModel reward) {
  problem.validate();
  return HanoiMdp(static_cast<int>(problem.components.size()), reward,
                  problem.peg_of(TierRole::source), problem.peg_of(TierRole::target));
}

MigrationPlan plan_to_migration_steps(const MigrationProblem& problem,
                                      std::span<const Move> moves) {
  HanoiMdp mdp = to_hanoi(problem);
  HanoiState state = mdp.initial_state();
  MigrationPlan plan;
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const Move& m = moves[k];
    if (!is_legal(state, m)) {
      throw PlanValidationError(k, "illegal move at index " + std::to_string(k) + ": " +
                                       to_string(m));
    }
    state = moved(state, m);
    plan.steps.push_back({problem.component_for_disk(m.disk).name,
                          problem.tiers[static_cast<std::size_t>(m.from_peg)].name,
                          problem.tiers[static_cast<std::size_t>(m.to_peg)].name});
  }
  return plan;
}

std::string to_string(const MigrationStep& step) {
  return step.component + ": " + step.from_tier + " -> " + step.to_tier;
}

}  // namespace hanoi
