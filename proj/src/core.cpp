#include "hanoi/core.hpp"

#include <algorithm>

#include "hanoi/error.hpp"

namespace hanoi {

namespace {

bool valid_peg(int p) noexcept { return p >= 0 && p < kPegs; }

char label_char(int label) {
  if (label < 10) return static_cast<char>('0' + label);
  return static_cast<char>('a' + (label - 10));
}

int label_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

}  // namespace

HanoiState::HanoiState(std::vector<int> disk_pegs) : pegs_(std::move(disk_pegs)) {
  for (int p : pegs_) {
    if (!valid_peg(p)) throw InvalidArgument("peg index out of range: " + std::to_string(p));
  }
}

HanoiState HanoiState::all_on(int n_disks, int peg) {
  if (n_disks < 0) throw InvalidArgument("negative disk count");
  return HanoiState(std::vector<int>(static_cast<std::size_t>(n_disks), peg));
}

std::optional<int> HanoiState::top_disk(int peg) const noexcept {
  for (int d = n_disks() - 1; d >= 0; --d) {
    if (pegs_[static_cast<std::size_t>(d)] == peg) return d;
  }
  return std::nullopt;
}

std::vector<int> HanoiState::stack(int peg) const {
  std::vector<int> out;
  for (int d = 0; d < n_disks(); ++d) {
    if (pegs_[static_cast<std::size_t>(d)] == peg) out.push_back(d);
  }
  return out;
}

std::string to_string(const Move& m) {
  return "move(d" + std::to_string(m.disk) + "," + std::to_string(m.from_peg) + "->" +
         std::to_string(m.to_peg) + ")";
}

RewardModel RewardModel::per_move_penalty() {
  return {RewardPreset::per_move_penalty, -1.0, -1.0, 0.0};
}

RewardModel RewardModel::valid_invalid_goal() {
  return {RewardPreset::valid_invalid_goal, 1.0, -1.0, 10.0};
}

double RewardModel::legal_reward(bool reaches_goal) const noexcept {
  if (!reaches_goal) return step_reward;
  // The penalty preset charges the step and adds the (zero) terminal bonus;
  // the Table-II style preset pays the goal reward in place of the step reward.
  return preset == RewardPreset::per_move_penalty ? step_reward + goal_reward : goal_reward;
}

std::string_view preset_name(RewardPreset p) noexcept {
  return p == RewardPreset::per_move_penalty ? "per_move_penalty" : "valid_invalid_goal";
}

RewardPreset parse_preset(std::string_view name) {
  if (name == "per_move_penalty") return RewardPreset::per_move_penalty;
  if (name == "valid_invalid_goal") return RewardPreset::valid_invalid_goal;
  throw InvalidArgument("unknown reward preset: " + std::string(name));
}

HanoiMdp::HanoiMdp(int n, RewardModel r, int source, int target)
    : n_disks(n), reward(r), source_peg(source), target_peg(target) {
  if (n < 0) throw InvalidArgument("negative disk count");
  if (!valid_peg(source) || !valid_peg(target)) throw InvalidArgument("peg index out of range");
  if (source == target) throw InvalidArgument("source and target peg must differ");
}

bool is_legal(const HanoiState& state, const Move& move) noexcept {
  if (move.disk < 0 || move.disk >= state.n_disks()) return false;
  if (!valid_peg(move.from_peg) || !valid_peg(move.to_peg)) return false;
  if (move.from_peg == move.to_peg) return false;
  if (state.peg_of(move.disk) != move.from_peg) return false;
  if (state.top_disk(move.from_peg) != move.disk) return false;
  auto target_top = state.top_disk(move.to_peg);
  return !target_top || *target_top < move.disk;
}

std::vector<Move> legal_moves(const HanoiState& state) {
  std::vector<Move> out;
  for (int from = 0; from < kPegs; ++from) {
    auto top = state.top_disk(from);
    if (!top) continue;
    for (int to = 0; to < kPegs; ++to) {
      if (to == from) continue;
      auto other = state.top_disk(to);
      if (!other || *other < *top) out.push_back({*top, from, to});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

HanoiState moved(const HanoiState& state, const Move& move) {
  if (!is_legal(state, move)) throw IllegalMove("illegal " + to_string(move));
  std::vector<int> pegs(state.disk_pegs().begin(), state.disk_pegs().end());
  pegs[static_cast<std::size_t>(move.disk)] = move.to_peg;
  return HanoiState(std::move(pegs));
}

Transition apply(const HanoiMdp& mdp, const HanoiState& state, const Move& move) {
  if (!is_legal(state, move)) {
    if (!mdp.reward.allows_invalid()) {
      throw IllegalMove("illegal " + to_string(move) + " under per_move_penalty preset");
    }
    return {state, mdp.reward.invalid_reward, false, false};
  }
  HanoiState next = moved(state, move);
  bool done = is_goal(next, mdp);
  double r = mdp.reward.legal_reward(done);
  return {std::move(next), r, done, true};
}

bool is_goal(const HanoiState& state, const HanoiMdp& mdp) noexcept {
  return std::all_of(state.disk_pegs().begin(), state.disk_pegs().end(),
                     [&](int p) { return p == mdp.target_peg; });
}

BitVector encode_bits(const HanoiState& state) {
  BitVector bits(static_cast<std::size_t>(kPegs * state.n_disks()), 0);
  for (int d = 0; d < state.n_disks(); ++d) {
    bits[static_cast<std::size_t>(kPegs * d + state.peg_of(d))] = 1;
  }
  return bits;
}

HanoiState decode_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() % kPegs != 0) {
    throw MalformedEncoding("bit vector length " + std::to_string(bits.size()) +
                            " is not a multiple of 3");
  }
  std::vector<int> pegs;
  for (std::size_t g = 0; g < bits.size() / kPegs; ++g) {
    int hot = -1;
    for (int p = 0; p < kPegs; ++p) {
      auto b = bits[g * kPegs + static_cast<std::size_t>(p)];
      if (b > 1) throw MalformedEncoding("non-binary entry in group " + std::to_string(g));
      if (b == 1) {
        if (hot >= 0) throw MalformedEncoding("group " + std::to_string(g) + " is not one-hot");
        hot = p;
      }
    }
    if (hot < 0) throw MalformedEncoding("group " + std::to_string(g) + " is not one-hot");
    pegs.push_back(hot);
  }
  return HanoiState(std::move(pegs));
}

std::string encode_pegstring(const HanoiState& state) {
  const int n = state.n_disks();
  std::string out = "[";
  for (int p = 0; p < kPegs; ++p) {
    if (p > 0) out += ',';
    auto disks = state.stack(p);
    out.append(static_cast<std::size_t>(n) - disks.size(), '0');
    // stack() is bottom-to-top (largest first); labels print smallest first.
    for (auto it = disks.rbegin(); it != disks.rend(); ++it) out += label_char(n - *it);
  }
  out += ']';
  return out;
}

HanoiState parse_pegstring(std::string_view text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw MalformedEncoding("peg-string must be bracketed: " + std::string(text));
  }
  std::string_view body = text.substr(1, text.size() - 2);
  std::vector<std::string_view> groups;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',') {
      groups.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  if (groups.size() != kPegs) throw MalformedEncoding("peg-string needs exactly 3 pegs");
  const std::size_t n = groups[0].size();
  std::vector<int> pegs(n, -1);
  for (int p = 0; p < kPegs; ++p) {
    auto g = groups[static_cast<std::size_t>(p)];
    if (g.size() != n) throw MalformedEncoding("peg groups must have equal width");
    int prev = 0;
    for (char c : g) {
      int label = label_value(c);
      if (label < 0 || label > static_cast<int>(n)) {
        throw MalformedEncoding(std::string("bad disk label '") + c + "'");
      }
      if (label == 0) {
        if (prev != 0) throw MalformedEncoding("padding must precede disk labels");
        continue;
      }
      if (label <= prev) throw MalformedEncoding("disk labels must increase within a peg");
      prev = label;
      auto disk = n - static_cast<std::size_t>(label);
      if (pegs[disk] != -1) throw MalformedEncoding("disk label repeated");
      pegs[disk] = p;
    }
  }
  if (std::find(pegs.begin(), pegs.end(), -1) != pegs.end()) {
    throw MalformedEncoding("some disk label is missing");
  }
  return HanoiState(std::move(pegs));
}

std::size_t state_index(const HanoiState& state) noexcept {
  std::size_t idx = 0;
  for (int p : state.disk_pegs()) idx = idx * kPegs + static_cast<std::size_t>(p);
  return idx;
}

HanoiState state_from_index(std::size_t index, int n_disks) {
  if (n_disks < 0) throw InvalidArgument("negative disk count");
  std::vector<int> pegs(static_cast<std::size_t>(n_disks));
  for (int d = n_disks - 1; d >= 0; --d) {
    pegs[static_cast<std::size_t>(d)] = static_cast<int>(index % kPegs);
    index /= kPegs;
  }
  if (index != 0) throw InvalidArgument("state index out of range");
  return HanoiState(std::move(pegs));
}

std::size_t state_count(int n_disks) {
  std::size_t c = 1;
  for (int i = 0; i < n_disks; ++i) c *= kPegs;
  return c;
}

std::vector<HanoiState> enumerate_states(int n_disks, int cap) {
  if (n_disks < 0) throw InvalidArgument("negative disk count");
  if (n_disks > cap) {
    throw CapExceeded("enumerate_states: n=" + std::to_string(n_disks) + " exceeds cap " +
                      std::to_string(cap));
  }
  const std::size_t count = state_count(n_disks);
  std::vector<HanoiState> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(state_from_index(i, n_disks));
  return out;
}

}  // namespace hanoi
