#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hanoi/core.hpp"
#include "hanoi/error.hpp"

namespace hanoi {

/// Minimum number of moves from every state to the goal, indexed by state_index().
std::vector<int> bfs_distances(const HanoiMdp& mdp, int cap = kDefaultStateCap);

/// Shortest plan from `start` (default: the initial state) to the goal.
/// Ties break towards the lexicographically lowest move.
std::vector<Move> bfs_shortest_plan(const HanoiMdp& mdp, std::optional<HanoiState> start = {},
                                    int cap = kDefaultStateCap);

template <typename Scalar = double>
struct ValueTable {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  int n_disks = 0;
  Scalar discount = Scalar(1);
  Vector values;
  /// Greedy action per state index; empty at goal states.
  std::vector<std::optional<Move>> policy;
  /// Sup-norm change of each sweep.
  std::vector<Scalar> residuals;

  Scalar value(const HanoiState& s) const { return values(static_cast<Eigen::Index>(state_index(s))); }
  const std::optional<Move>& action(const HanoiState& s) const { return policy.at(state_index(s)); }
};

struct ValueIterationOptions {
  double tolerance = 1e-9;
  int max_sweeps = 10'000;
  int cap = kDefaultStateCap;
};

namespace detail {

struct Edge {
  Move move;
  Eigen::Index next = 0;
  double reward = 0.0;
  bool terminal = false;
};

/// Legal transitions per state index, each list in lexicographic move order.
std::vector<std::vector<Edge>> transition_lists(const HanoiMdp& mdp, int cap);

}  // namespace detail

/// Jacobi value iteration: every sweep reads only the previous table. Illegal
/// moves are excluded from the action set under both reward presets.
template <typename Scalar = double>
ValueTable<Scalar> value_iteration(const HanoiMdp& mdp, Scalar discount,
                                   const ValueIterationOptions& opts = {}) {
  if (!(discount > Scalar(0) && discount <= Scalar(1))) {
    throw InvalidArgument("discount must lie in (0, 1]");
  }
  if (!(opts.tolerance > 0)) throw InvalidArgument("tolerance must be positive");

  const auto edges = detail::transition_lists(mdp, opts.cap);
  const auto count = static_cast<Eigen::Index>(edges.size());

  ValueTable<Scalar> table;
  table.n_disks = mdp.n_disks;
  table.discount = discount;
  table.values = ValueTable<Scalar>::Vector::Zero(count);
  table.policy.assign(edges.size(), std::nullopt);

  typename ValueTable<Scalar>::Vector next(count);
  bool converged = false;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    for (Eigen::Index s = 0; s < count; ++s) {
      const auto& out = edges[static_cast<std::size_t>(s)];
      if (out.empty()) {  // goal
        next(s) = Scalar(0);
        continue;
      }
      Scalar best = -std::numeric_limits<Scalar>::infinity();
      for (const auto& e : out) {
        Scalar q = Scalar(e.reward) + (e.terminal ? Scalar(0) : discount * table.values(e.next));
        best = std::max(best, q);
      }
      next(s) = best;
    }
    Scalar residual = (next - table.values).cwiseAbs().maxCoeff();
    table.values.swap(next);
    table.residuals.push_back(residual);
    if (!std::isfinite(static_cast<double>(residual))) break;
    if (residual < Scalar(opts.tolerance)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("value iteration did not converge within " +
                           std::to_string(table.residuals.size()) + " sweeps (last residual " +
                           std::to_string(static_cast<double>(table.residuals.back())) + ")");
  }

  for (Eigen::Index s = 0; s < count; ++s) {
    const auto& out = edges[static_cast<std::size_t>(s)];
    if (out.empty()) continue;
    Scalar best = -std::numeric_limits<Scalar>::infinity();
    for (const auto& e : out) {
      Scalar q = Scalar(e.reward) + (e.terminal ? Scalar(0) : discount * table.values(e.next));
      if (q > best) {  // strict: the first (lowest) move wins ties
        best = q;
        table.policy[static_cast<std::size_t>(s)] = e.move;
      }
    }
  }
  return table;
}

/// Follows the greedy policy from `start` to the goal. Throws CycleError if the
/// policy revisits a state.
template <typename Scalar>
std::vector<Move> extract_plan(const ValueTable<Scalar>& table, const HanoiMdp& mdp,
                               std::optional<HanoiState> start = {}) {
  if (table.n_disks != mdp.n_disks) throw InvalidArgument("value table size does not match MDP");
  HanoiState s = start.value_or(mdp.initial_state());
  std::vector<Move> plan;
  std::unordered_set<HanoiState> seen{s};
  while (!is_goal(s, mdp)) {
    const auto& a = table.action(s);
    if (!a) throw CycleError("no policy action in non-goal state " + encode_pegstring(s));
    s = moved(s, *a);
    plan.push_back(*a);
    if (!seen.insert(s).second) {
      throw CycleError("greedy policy cycles at " + encode_pegstring(s));
    }
  }
  return plan;
}

}  // namespace hanoi
