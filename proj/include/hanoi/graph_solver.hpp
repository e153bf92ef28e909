#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hanoi/core.hpp"

namespace hanoi {

/// Transition graph recorded while exploring. Nodes are keyed by peg-string;
/// repeated traversals of one edge are collapsed into a count.
class StateGraph {
public:
  struct EdgeInfo {
    Move move;
    std::uint64_t traversals = 0;
  };
  using EdgeKey = std::pair<std::string, std::string>;

  StateGraph() = default;
  explicit StateGraph(int n_disks) : n_disks_(n_disks) {}

  int n_disks() const noexcept { return n_disks_; }

  void visit(const HanoiState& s);
  /// Records a traversal and visits both endpoints. Throws IllegalMove if the
  /// move is not legal in `from` or does not lead to `to`.
  void add_edge(const HanoiState& from, const Move& move, const HanoiState& to);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool contains(const HanoiState& s) const;
  std::uint64_t visits(const HanoiState& s) const;

  const std::map<std::string, std::uint64_t>& nodes() const noexcept { return nodes_; }
  const std::map<EdgeKey, EdgeInfo>& edges() const noexcept { return edges_; }

  /// One edge per line: "from to move(dX,f->t)".
  void dump(std::ostream& os) const;
  /// Inverse of dump. Throws ParseError on malformed lines and CorruptedGraph
  /// on edges that are not legal moves.
  static StateGraph parse(std::istream& is);

private:
  int n_disks_ = 0;
  std::map<std::string, std::uint64_t> nodes_;
  std::map<EdgeKey, EdgeInfo> edges_;
};

/// Random walk of exactly `steps` uniformly chosen legal moves from the
/// initial state, restarting there whenever the goal is reached.
StateGraph explore(const HanoiMdp& mdp, std::uint64_t steps, std::uint64_t seed);

/// Every legal transition of the full state space.
StateGraph explore_exhaustive(const HanoiMdp& mdp, int cap = kDefaultStateCap);

/// Shortest recorded path current -> goal, found by breadth-first search from
/// the goal over reversed edges. Ties go to the lowest move. nullopt when
/// the two states are not connected in the recorded graph.
std::optional<std::vector<Move>> search(const StateGraph& graph, const HanoiState& goal,
                                        const HanoiState& current);

struct GraphSolveResult {
  std::vector<Move> plan;
  bool solved = false;
};

/// Searches from the initial state and replays the path through the MDP.
/// Throws CorruptedGraph if a recorded edge does not replay.
GraphSolveResult solve(const StateGraph& graph, const HanoiMdp& mdp);

}  // namespace hanoi
