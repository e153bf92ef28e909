#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hanoi/core.hpp"
#include "hanoi/error.hpp"

using namespace hanoi;

namespace {

// Independent legality check: a disk may move iff no smaller disk (higher
// index) sits on its peg and no smaller disk sits on the destination.
bool oracle_legal(const std::vector<int>& pegs, int disk, int to) {
  const int from = pegs[static_cast<std::size_t>(disk)];
  if (from == to) return false;
  for (std::size_t j = static_cast<std::size_t>(disk) + 1; j < pegs.size(); ++j) {
    if (pegs[j] == from || pegs[j] == to) return false;
  }
  return true;
}

std::size_t pow3(int n) {
  std::size_t r = 1;
  while (n-- > 0) r *= 3;
  return r;
}

}  // namespace

TEST_CASE("legal moves from the two-disk initial state") {
  HanoiState s = HanoiState::all_on(2, 0);
  auto moves = legal_moves(s);
  std::vector<Move> expected{{1, 0, 1}, {1, 0, 2}};
  CHECK(moves == expected);
}

TEST_CASE("legal moves in the two-disk intermediate configuration") {
  // Large disk on peg 0, small disk on peg 1.
  HanoiState s({0, 1});
  auto moves = legal_moves(s);
  CHECK(moves.size() == 3);
  std::vector<Move> expected{{0, 0, 2}, {1, 1, 0}, {1, 1, 2}};
  CHECK(moves == expected);
}

TEST_CASE("a single disk always has two legal moves") {
  for (int p = 0; p < kPegs; ++p) CHECK(legal_moves(HanoiState::all_on(1, p)).size() == 2);
}

TEST_CASE("legal move count: 2 when stacked on one peg, 3 otherwise (n <= 6)") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& s : enumerate_states(n)) {
      std::vector<int> pegs(s.disk_pegs().begin(), s.disk_pegs().end());
      std::set<Move> oracle;
      for (int d = 0; d < n; ++d) {
        for (int to = 0; to < kPegs; ++to) {
          if (oracle_legal(pegs, d, to)) oracle.insert({d, pegs[static_cast<std::size_t>(d)], to});
        }
      }
      auto moves = legal_moves(s);
      CHECK(std::set<Move>(moves.begin(), moves.end()) == oracle);
      bool one_peg = std::set<int>(pegs.begin(), pegs.end()).size() == 1;
      CHECK(moves.size() == (one_peg ? 2U : 3U));
    }
  }
}

TEST_CASE("apply follows the two-disk walkthrough") {
  HanoiMdp mdp(2);
  auto t = apply(mdp, mdp.initial_state(), {1, 0, 1});
  CHECK(t.next == HanoiState({0, 1}));
  CHECK(t.legal);
  CHECK_FALSE(t.done);
  CHECK(t.reward == 1.0);
}

TEST_CASE("final legal move pays the goal reward") {
  HanoiMdp mdp(2);
  HanoiState s({2, 0});
  auto t = apply(mdp, s, {1, 0, 2});
  CHECK(t.done);
  CHECK(t.reward == 10.0);
  CHECK(is_goal(t.next, mdp));
}

TEST_CASE("illegal move under valid_invalid_goal is a penalised no-op") {
  HanoiMdp mdp(2);
  HanoiState s({0, 1});
  auto t = apply(mdp, s, {0, 0, 1});  // large onto small
  CHECK(t.next == s);
  CHECK(t.reward == -1.0);
  CHECK_FALSE(t.done);
  CHECK_FALSE(t.legal);
  // Moving a covered disk is also illegal.
  auto t2 = apply(mdp, mdp.initial_state(), {0, 0, 2});
  CHECK(t2.next == mdp.initial_state());
  CHECK(t2.reward == -1.0);
}

TEST_CASE("illegal move under per_move_penalty is rejected") {
  HanoiMdp mdp(2, RewardModel::per_move_penalty());
  CHECK_THROWS_AS(apply(mdp, mdp.initial_state(), {0, 0, 2}), IllegalMove);
  auto t = apply(mdp, HanoiState({2, 0}), {1, 0, 2});
  CHECK(t.done);
  CHECK(t.reward == -1.0);
  CHECK(apply(mdp, mdp.initial_state(), {1, 0, 1}).reward == -1.0);
}

TEST_CASE("legal moves are reversible") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& s : enumerate_states(n)) {
      for (const auto& m : legal_moves(s)) {
        HanoiState t = moved(s, m);
        Move back{m.disk, m.to_peg, m.from_peg};
        REQUIRE(is_legal(t, back));
        CHECK(moved(t, back) == s);
      }
    }
  }
}

TEST_CASE("goal test") {
  HanoiMdp mdp(3);
  CHECK(is_goal(HanoiState::all_on(3, 2), mdp));
  CHECK_FALSE(is_goal(mdp.initial_state(), mdp));
  CHECK(is_goal(HanoiState(), HanoiMdp(0)));
}

TEST_CASE("mdp rejects equal source and target") {
  CHECK_THROWS_AS(HanoiMdp(2, RewardModel::valid_invalid_goal(), 1, 1), InvalidArgument);
  CHECK_THROWS_AS(HanoiState({0, 3}), InvalidArgument);
}

TEST_CASE("bit encoding") {
  CHECK(encode_bits(HanoiState::all_on(2, 0)) == BitVector{1, 0, 0, 1, 0, 0});
  CHECK(encode_bits(HanoiState::all_on(2, 2)) == BitVector{0, 0, 1, 0, 0, 1});
  BitVector init{1, 0, 0, 1, 0, 0};
  BitVector goal{0, 0, 1, 0, 0, 1};
  CHECK(decode_bits(init) == HanoiState::all_on(2, 0));
  CHECK(decode_bits(goal) == HanoiState::all_on(2, 2));
  BitVector bad{1, 1, 0, 1, 0, 0};
  CHECK_THROWS_AS(decode_bits(bad), MalformedEncoding);
  BitVector empty_group{0, 0, 0};
  CHECK_THROWS_AS(decode_bits(empty_group), MalformedEncoding);
  BitVector short_vec{1, 0};
  CHECK_THROWS_AS(decode_bits(short_vec), MalformedEncoding);
}

TEST_CASE("bit and peg-string encodings round-trip exhaustively (n <= 6)") {
  for (int n = 0; n <= 6; ++n) {
    std::set<std::string> seen;
    for (const auto& s : enumerate_states(n)) {
      CHECK(decode_bits(encode_bits(s)) == s);
      auto text = encode_pegstring(s);
      CHECK(parse_pegstring(text) == s);
      seen.insert(text);
    }
    CHECK(seen.size() == pow3(n));
  }
}

TEST_CASE("peg-string format") {
  CHECK(encode_pegstring(HanoiState::all_on(2, 0)) == "[12,00,00]");
  CHECK(encode_pegstring(HanoiState::all_on(2, 2)) == "[00,00,12]");
  CHECK(encode_pegstring(HanoiState::all_on(3, 0)) == "[123,000,000]");
  // Disk labels: 1 = smallest. [023,000,001] -> [003,002,001] moves disk label 2.
  HanoiState before = parse_pegstring("[023,000,001]");
  HanoiState after = parse_pegstring("[003,002,001]");
  CHECK(before == HanoiState({0, 0, 2}));
  Move m{1, 0, 1};
  REQUIRE(is_legal(before, m));
  CHECK(moved(before, m) == after);
  CHECK_THROWS_AS(parse_pegstring("[12,00]"), MalformedEncoding);
  CHECK_THROWS_AS(parse_pegstring("[21,00,00]"), MalformedEncoding);
  CHECK_THROWS_AS(parse_pegstring("[12,01,00]"), MalformedEncoding);
  CHECK_THROWS_AS(parse_pegstring("12,00,00"), MalformedEncoding);
}

TEST_CASE("peg-strings beyond nine disks use letters") {
  HanoiState s = HanoiState::all_on(11, 1);
  auto text = encode_pegstring(s);
  CHECK(text == "[00000000000,123456789ab,00000000000]");
  CHECK(parse_pegstring(text) == s);
}

TEST_CASE("state enumeration") {
  CHECK(enumerate_states(1).size() == 3);
  CHECK(enumerate_states(2).size() == 9);
  CHECK(enumerate_states(4).size() == 81);
  for (int n = 0; n <= 6; ++n) {
    auto states = enumerate_states(n);
    CHECK(states.size() == pow3(n));
    CHECK(std::set<HanoiState>(states.begin(), states.end()).size() == pow3(n));
    for (std::size_t i = 0; i < states.size(); ++i) CHECK(state_index(states[i]) == i);
  }
  CHECK_THROWS_AS(enumerate_states(13), CapExceeded);
  CHECK_THROWS_AS(enumerate_states(5, 4), CapExceeded);
}
