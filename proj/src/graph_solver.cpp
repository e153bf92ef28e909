#include "hanoi/graph_solver.hpp"

#include <cstdio>
#include <deque>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "hanoi/error.hpp"

namespace hanoi {

void StateGraph::visit(const HanoiState& s) {
  if (nodes_.empty() && n_disks_ == 0) n_disks_ = s.n_disks();
  if (s.n_disks() != n_disks_) throw InvalidArgument("state disk count does not match graph");
  ++nodes_[encode_pegstring(s)];
}

void StateGraph::add_edge(const HanoiState& from, const Move& move, const HanoiState& to) {
  if (moved(from, move) != to) throw IllegalMove(to_string(move) + " does not lead to the recorded state");
  visit(to);
  auto& info = edges_[{encode_pegstring(from), encode_pegstring(to)}];
  info.move = move;
  ++info.traversals;
}

bool StateGraph::contains(const HanoiState& s) const { return nodes_.contains(encode_pegstring(s)); }

std::uint64_t StateGraph::visits(const HanoiState& s) const {
  auto it = nodes_.find(encode_pegstring(s));
  return it == nodes_.end() ? 0 : it->second;
}

void StateGraph::dump(std::ostream& os) const {
  for (const auto& [key, info] : edges_) {
    os << key.first << ' ' << key.second << ' ' << to_string(info.move) << '\n';
  }
}

StateGraph StateGraph::parse(std::istream& is) {
  StateGraph g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string from_text, to_text, move_text;
    if (!(fields >> from_text >> to_text >> move_text)) {
      throw ParseError(line_no, 1, "expected 'from to move'");
    }
    HanoiState from, to;
    try {
      from = parse_pegstring(from_text);
      to = parse_pegstring(to_text);
    } catch (const Error& e) {
      throw ParseError(line_no, 1, e.what());
    }
    Move m;
    char tail = 0;
    if (std::sscanf(move_text.c_str(), "move(d%d,%d->%d%c", &m.disk, &m.from_peg, &m.to_peg, &tail) != 4 ||
        tail != ')') {
      throw ParseError(line_no, from_text.size() + to_text.size() + 3, "malformed move '" + move_text + "'");
    }
    if (g.n_disks_ == 0) g.n_disks_ = from.n_disks();
    if (from.n_disks() != g.n_disks_ || to.n_disks() != g.n_disks_ || !is_legal(from, m) ||
        moved(from, m) != to) {
      throw CorruptedGraph("line " + std::to_string(line_no) + ": edge is not a legal move");
    }
    g.visit(from);
    g.add_edge(from, m, to);
  }
  return g;
}

StateGraph explore(const HanoiMdp& mdp, std::uint64_t steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StateGraph g(mdp.n_disks);
  HanoiState s = mdp.initial_state();
  g.visit(s);
  for (std::uint64_t i = 0; i < steps; ++i) {
    auto moves = legal_moves(s);
    if (moves.empty()) break;  // zero disks
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    const Move m = moves[pick(rng)];
    HanoiState next = moved(s, m);
    g.add_edge(s, m, next);
    if (is_goal(next, mdp)) {
      s = mdp.initial_state();
      g.visit(s);
    } else {
      s = std::move(next);
    }
  }
  return g;
}

StateGraph explore_exhaustive(const HanoiMdp& mdp, int cap) {
  StateGraph g(mdp.n_disks);
  for (const auto& s : enumerate_states(mdp.n_disks, cap)) {
    g.visit(s);
    for (const auto& m : legal_moves(s)) g.add_edge(s, m, moved(s, m));
  }
  return g;
}

std::optional<std::vector<Move>> search(const StateGraph& graph, const HanoiState& goal,
                                        const HanoiState& current) {
  const std::string goal_key = encode_pegstring(goal);
  const std::string start_key = encode_pegstring(current);
  if (!graph.nodes().contains(goal_key) || !graph.nodes().contains(start_key)) return std::nullopt;

  using Arc = std::pair<Move, std::string>;
  std::unordered_map<std::string, std::vector<Arc>> forward, reverse;
  for (const auto& [key, info] : graph.edges()) {
    forward[key.first].push_back({info.move, key.second});
    reverse[key.second].push_back({info.move, key.first});
  }

  std::unordered_map<std::string, int> dist{{goal_key, 0}};
  std::deque<std::string> frontier{goal_key};
  while (!frontier.empty() && !dist.contains(start_key)) {
    std::string node = std::move(frontier.front());
    frontier.pop_front();
    const int d = dist[node];
    for (const auto& [move, pred] : reverse[node]) {
      if (dist.emplace(pred, d + 1).second) frontier.push_back(pred);
    }
  }
  auto found = dist.find(start_key);
  if (found == dist.end()) return std::nullopt;

  // Descend the distance field, lowest move first.
  std::vector<Move> path;
  std::string node = start_key;
  for (int d = found->second; d > 0; --d) {
    const Arc* best = nullptr;
    for (const auto& arc : forward[node]) {
      auto it = dist.find(arc.second);
      if (it != dist.end() && it->second == d - 1 && (!best || arc.first < best->first)) best = &arc;
    }
    path.push_back(best->first);
    node = best->second;
  }
  return path;
}

GraphSolveResult solve(const StateGraph& graph, const HanoiMdp& mdp) {
  GraphSolveResult result;
  auto path = search(graph, mdp.goal_state(), mdp.initial_state());
  if (!path) return result;
  HanoiState s = mdp.initial_state();
  for (std::size_t i = 0; i < path->size(); ++i) {
    const Move& m = (*path)[i];
    if (!is_legal(s, m)) {
      throw CorruptedGraph("step " + std::to_string(i) + ": recorded " + to_string(m) + " does not replay");
    }
    s = moved(s, m);
  }
  if (!is_goal(s, mdp)) throw CorruptedGraph("replayed path does not end at the goal");
  result.plan = std::move(*path);
  result.solved = true;
  return result;
}

}  // namespace hanoi
