#include "hanoi/exact_solver.hpp"

#include <deque>

namespace hanoi {

std::vector<int> bfs_distances(const HanoiMdp& mdp, int cap) {
  if (mdp.n_disks > cap) {
    throw CapExceeded("bfs_distances: n=" + std::to_string(mdp.n_disks) + " exceeds cap");
  }
  std::vector<int> dist(state_count(mdp.n_disks), -1);
  HanoiState goal = mdp.goal_state();
  std::deque<HanoiState> queue{goal};
  dist[state_index(goal)] = 0;
  // Legal moves are reversible, so forward BFS from the goal gives distances to it.
  while (!queue.empty()) {
    HanoiState s = std::move(queue.front());
    queue.pop_front();
    const int d = dist[state_index(s)];
    for (const Move& m : legal_moves(s)) {
      HanoiState t = moved(s, m);
      auto& slot = dist[state_index(t)];
      if (slot < 0) {
        slot = d + 1;
        queue.push_back(std::move(t));
      }
    }
  }
  return dist;
}

std::vector<Move> bfs_shortest_plan(const HanoiMdp& mdp, std::optional<HanoiState> start,
                                    int cap) {
  const auto dist = bfs_distances(mdp, cap);
  HanoiState s = start.value_or(mdp.initial_state());
  if (s.n_disks() != mdp.n_disks) throw InvalidArgument("start state has wrong disk count");
  std::vector<Move> plan;
  while (dist[state_index(s)] > 0) {
    const int d = dist[state_index(s)];
    for (const Move& m : legal_moves(s)) {
      HanoiState t = moved(s, m);
      if (dist[state_index(t)] == d - 1) {
        plan.push_back(m);
        s = std::move(t);
        break;
      }
    }
  }
  return plan;
}

namespace detail {

std::vector<std::vector<Edge>> transition_lists(const HanoiMdp& mdp, int cap) {
  auto states = enumerate_states(mdp.n_disks, cap);
  std::vector<std::vector<Edge>> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (is_goal(states[i], mdp)) continue;
    for (const Move& m : legal_moves(states[i])) {
      Transition t = apply(mdp, states[i], m);
      out[i].push_back({m, static_cast<Eigen::Index>(state_index(t.next)), t.reward, t.done});
    }
  }
  return out;
}

}  // namespace detail

}  // namespace hanoi
