#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hanoi {

inline constexpr int kPegs = 3;
inline constexpr int kDefaultStateCap = 12;

using BitVector = std::vector<std::uint8_t>;

/// Disk -> peg assignment. Disk 0 is the largest; on any peg the disks are
/// stacked by size, so every assignment is a physically valid configuration.
class HanoiState {
public:
  HanoiState() = default;
  /// Throws InvalidArgument if any entry is outside [0, kPegs).
  explicit HanoiState(std::vector<int> disk_pegs);

  static HanoiState all_on(int n_disks, int peg);

  int n_disks() const noexcept { return static_cast<int>(pegs_.size()); }
  int peg_of(int disk) const { return pegs_.at(static_cast<std::size_t>(disk)); }
  std::span<const int> disk_pegs() const noexcept { return pegs_; }

  /// Smallest disk on `peg` (highest index), or nullopt if empty.
  std::optional<int> top_disk(int peg) const noexcept;
  /// Disks on `peg`, bottom to top.
  std::vector<int> stack(int peg) const;

  friend auto operator<=>(const HanoiState&, const HanoiState&) = default;
  friend bool operator==(const HanoiState&, const HanoiState&) = default;

private:
  std::vector<int> pegs_;
};

struct Move {
  int disk = 0;
  int from_peg = 0;
  int to_peg = 0;

  friend auto operator<=>(const Move&, const Move&) = default;
  friend bool operator==(const Move&, const Move&) = default;
};

std::string to_string(const Move& m);

enum class RewardPreset { per_move_penalty, valid_invalid_goal };

struct RewardModel {
  RewardPreset preset = RewardPreset::valid_invalid_goal;
  double step_reward = 1.0;
  double invalid_reward = -1.0;
  double goal_reward = 10.0;

  /// -1 per move, goal adds 0 on top of the step cost; illegal moves are rejected.
  static RewardModel per_move_penalty();
  /// +1 valid move, -1 invalid (no-op), +10 for the move that reaches the goal.
  static RewardModel valid_invalid_goal();

  bool allows_invalid() const noexcept { return preset == RewardPreset::valid_invalid_goal; }
  /// Reward of a legal move, given whether it lands on the goal.
  double legal_reward(bool reaches_goal) const noexcept;
};

std::string_view preset_name(RewardPreset p) noexcept;
RewardPreset parse_preset(std::string_view name);

struct HanoiMdp {
  int n_disks = 0;
  RewardModel reward;
  int source_peg = 0;
  int target_peg = kPegs - 1;

  HanoiMdp() = default;
  /// Throws InvalidArgument on bad pegs or negative disk count.
  HanoiMdp(int n, RewardModel r = RewardModel::valid_invalid_goal(), int source = 0,
           int target = kPegs - 1);

  HanoiState initial_state() const { return HanoiState::all_on(n_disks, source_peg); }
  HanoiState goal_state() const { return HanoiState::all_on(n_disks, target_peg); }
};

struct Transition {
  HanoiState next;
  double reward = 0.0;
  bool done = false;
  bool legal = true;
};

bool is_legal(const HanoiState& state, const Move& move) noexcept;

/// All legal moves, sorted lexicographically by (disk, from, to).
std::vector<Move> legal_moves(const HanoiState& state);

/// Successor of a legal move. Throws IllegalMove otherwise.
HanoiState moved(const HanoiState& state, const Move& move);

/// One MDP step. Illegal moves are a no-op with `invalid_reward` under
/// valid_invalid_goal and throw IllegalMove under per_move_penalty.
Transition apply(const HanoiMdp& mdp, const HanoiState& state, const Move& move);

bool is_goal(const HanoiState& state, const HanoiMdp& mdp) noexcept;

// Encodings ------------------------------------------------------------------

/// One-hot peg per disk: bits [3i, 3i+3) encode disk i.
BitVector encode_bits(const HanoiState& state);
HanoiState decode_bits(std::span<const std::uint8_t> bits);

/// "[12,00,00]" style. Each peg lists its disks as labels (1 = smallest,
/// n = largest), smallest first, left-padded with '0' to n characters.
/// Labels above 9 use 'a'..'z'.
std::string encode_pegstring(const HanoiState& state);
HanoiState parse_pegstring(std::string_view text);

// State indexing --------------------------------------------------------------

/// Base-3 index with disk 0 as the most significant digit; in [0, 3^n).
std::size_t state_index(const HanoiState& state) noexcept;
HanoiState state_from_index(std::size_t index, int n_disks);
std::size_t state_count(int n_disks);

/// All 3^n states in index order. Throws CapExceeded when n > cap.
std::vector<HanoiState> enumerate_states(int n_disks, int cap = kDefaultStateCap);

}  // namespace hanoi

template <>
struct std::hash<hanoi::HanoiState> {
  std::size_t operator()(const hanoi::HanoiState& s) const noexcept {
    return hanoi::state_index(s) * 31U + static_cast<std::size_t>(s.n_disks());
  }
};
