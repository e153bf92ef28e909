#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <sstream>
#include <string>

#include "hanoi/bench.hpp"
#include "hanoi/core.hpp"
#include "hanoi/exact_solver.hpp"
#include "hanoi/graph_solver.hpp"
#include "hanoi/plan_io.hpp"
#include "hanoi/rl.hpp"
#include "hanoi/strips.hpp"

namespace fs = std::filesystem;
using namespace hanoi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Brute-force distance table: BFS from the goal over explicitly generated moves.
std::map<std::vector<int>, int> distance_table(int n) {
  std::map<std::vector<int>, int> dist;
  std::vector<int> goal(static_cast<std::size_t>(n), kPegs - 1);
  std::queue<std::vector<int>> q;
  dist[goal] = 0;
  q.push(goal);
  while (!q.empty()) {
    auto s = q.front();
    q.pop();
    for (int d = 0; d < n; ++d) {
      bool top = true;
      for (int e = d + 1; e < n; ++e) top &= s[static_cast<std::size_t>(e)] != s[static_cast<std::size_t>(d)];
      if (!top) continue;
      for (int to = 0; to < kPegs; ++to) {
        if (to == s[static_cast<std::size_t>(d)]) continue;
        bool fits = true;
        for (int e = d + 1; e < n; ++e) fits &= s[static_cast<std::size_t>(e)] != to;
        if (!fits) continue;
        auto t = s;
        t[static_cast<std::size_t>(d)] = to;
        if (dist.emplace(t, dist[s] + 1).second) q.push(t);
      }
    }
  }
  return dist;
}

bool replay_reaches_goal(const HanoiMdp& mdp, HanoiState s, const std::vector<Move>& plan) {
  for (const auto& m : plan) {
    if (!is_legal(s, m)) return false;
    s = moved(s, m);
  }
  return s == mdp.goal_state();
}

using Result = std::pair<bool, std::string>;

Result optimality_law() {
  auto t = Clock::now();
  std::ostringstream detail;
  bool ok = true;
  for (int n = 1; n <= 10; ++n) {
    auto plan = bfs_shortest_plan(HanoiMdp(n));
    ok &= plan.size() == (std::size_t{1} << n) - 1;
  }
  double elapsed = seconds_since(t);
  detail << "n=1..10 plan length 2^n-1, " << elapsed << " s";
  return {ok && elapsed < 5.0, detail.str()};
}

Result value_iteration_oracle() {
  bool ok = true;
  std::size_t starts = 0;
  for (int n = 1; n <= 6; ++n) {
    HanoiMdp mdp(n, RewardModel::per_move_penalty());
    auto table = value_iteration(mdp, 1.0);
    auto dist = distance_table(n);
    for (const auto& s : enumerate_states(n)) {
      auto plan = extract_plan(table, mdp, s);
      std::vector<int> key(s.disk_pegs().begin(), s.disk_pegs().end());
      ok &= replay_reaches_goal(mdp, s, plan) && static_cast<int>(plan.size()) == dist.at(key);
      ++starts;
    }
  }
  return {ok, std::to_string(starts) + " start states, n<=6"};
}

Result state_space_size() {
  bool ok = true;
  for (int n = 1; n <= 6; ++n) {
    std::size_t expected = 1;
    for (int i = 0; i < n; ++i) expected *= 3;
    ok &= enumerate_states(n).size() == expected;
    ok &= explore_exhaustive(HanoiMdp(n)).node_count() == expected;
  }
  return {ok, "enumerate_states and exhaustive exploration give 3^n, n<=6"};
}

Result neurosolver_reproduction() {
  auto t = Clock::now();
  HanoiMdp mdp(4);
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto r = solve(explore(mdp, 10'000, seed), mdp);
    if (r.solved && r.plan.size() == 15 && replay_reaches_goal(mdp, mdp.initial_state(), r.plan)) ++solved;
  }
  double elapsed = seconds_since(t);
  std::ostringstream detail;
  detail << solved << "/20 seeds give a 15-move plan, " << elapsed << " s";
  return {solved >= 18 && elapsed < 30.0, detail.str()};
}

Result rl_solvability(const fs::path& out_dir) {
  bool ok = true;
  std::ostringstream detail;
  HanoiMdp mdp(2);
  for (const char* name : {"ddqn", "fbrl"}) {
    auto t = Clock::now();
    int solved = 0;
    bool all_legal = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      AgentConfig cfg;
      cfg.seed = seed;
      cfg.max_steps = 30'000;
      auto trained = std::string(name) == "ddqn" ? ddqn_train(mdp, cfg) : fbrl_train(mdp, cfg);
      auto roll = greedy_rollout(trained.net, mdp, 50);
      HanoiState s = mdp.initial_state();
      for (const auto& m : roll.plan) {
        all_legal &= is_legal(s, m);
        if (!is_legal(s, m)) break;
        s = moved(s, m);
      }
      if (roll.solved && roll.plan.size() == 3 && s == mdp.goal_state()) ++solved;
    }
    double elapsed = seconds_since(t);
    ok &= solved >= 8 && all_legal && elapsed < 120.0;
    detail << name << " " << solved << "/10 (" << elapsed << " s); ";
  }

  // n=3 comparison curves are emitted, not asserted.
  bench::ExperimentConfig cfg;
  cfg.instances = {bench::disk_instance(3)};
  cfg.solvers = {bench::choose_solver("ddqn"), bench::choose_solver("fbrl")};
  cfg.output_dir = out_dir;
  cfg.write_csv = cfg.write_markdown = false;
  auto result = bench::run_experiment(cfg);
  bench::write_outputs(cfg, result);
  for (const auto& run : result.runs) {
    ok &= run.reward_curve.size() == 30'000;
    if (!run.reward_curve.empty()) {
      detail << "n=3 " << run.report.solver << " final avg reward " << run.reward_curve.back() << "; ";
    }
  }
  detail << "curves in " << (out_dir / "curves").string();
  return {ok, detail.str()};
}

Result strips_recovery() {
  using strips::Predicate;
  strips::StripsOperator table_op{"move", {"disc", "from", "to"},
                                  {Predicate("clear", {"disc"}), Predicate("on", {"disc", "from"}),
                                   Predicate("clear", {"to"}), Predicate("smaller", {"to", "disc"})},
                                  {Predicate("on", {"from", "disc"})},
                                  {Predicate("on", {"disc", "to"}), Predicate("clear", {"from"})},
                                  {Predicate("on", {"disc", "from"}), Predicate("clear", {"to"})}};
  auto learned = strips::learn_operator(strips::collect_exhaustive(3));
  bool ok = strips::prune_entailed(learned.op, 3) == strips::prune_entailed(table_op, 3);

  HanoiMdp mdp(3);
  auto dist = bfs_distances(mdp);
  int solved = 0;
  for (const auto& s : enumerate_states(3)) {
    auto plan = strips::plan_forward({learned.op}, strips::state_to_predicates(s),
                                     strips::dynamic_facts(mdp.goal_state()));
    if (!plan) continue;
    std::vector<Move> moves;
    HanoiState cur = s;
    bool legal = true;
    for (const auto& a : *plan) {
      Move m = strips::to_move(cur, a);
      legal &= is_legal(cur, m);
      if (!legal) break;
      moves.push_back(m);
      cur = moved(cur, m);
    }
    if (legal && cur == mdp.goal_state() && static_cast<int>(moves.size()) == dist[state_index(s)]) ++solved;
  }
  ok &= solved == 27;
  return {ok, "pruned operators equal, " + std::to_string(solved) + "/27 starts solved optimally"};
}

Result validator_soundness() {
  std::size_t plans = 0, accepted = 0, mutations = 0, rejected = 0;
  for (int n = 1; n <= 4; ++n) {
    HanoiMdp mdp(n);
    for (const auto& start : enumerate_states(n)) {
      auto moves = bfs_shortest_plan(mdp, start);
      auto doc = planio::make_problem(mdp, start);
      auto plan = planio::plan_from_moves(start, moves);
      ++plans;
      if (planio::validate_plan(doc, plan).valid) ++accepted;

      HanoiState s = start;
      for (std::size_t k = 0; k < moves.size(); ++k) {
        for (int d = 0; d < n; ++d) {
          for (int to = 0; to < kPegs; ++to) {
            Move alt{d, s.peg_of(d), to};
            if (to == alt.from_peg || alt == moves[k]) continue;
            auto mutated = plan;
            mutated.steps[k] = strips::ground_move(s, alt);
            auto verdict = planio::validate_plan(doc, mutated);
            ++mutations;
            if (!verdict.valid && verdict.failing_step && !verdict.failing_step->reason.empty() &&
                verdict.failing_step->index >= k) {
              ++rejected;
            }
          }
        }
        s = moved(s, moves[k]);
      }
    }
  }
  std::ostringstream detail;
  detail << accepted << "/" << plans << " exact plans accepted, " << rejected << "/" << mutations
         << " single-move mutations rejected with a failing step";
  return {accepted == plans && rejected == mutations && mutations >= 200, detail.str()};
}

Result metric_sanity() {
  std::vector<std::string> plan{"move", "d1", "d2", "peg3", "move", "d2", "d3", "peg2"};
  std::vector<std::string> other{"a", "b", "c", "d", "e", "f", "g", "h"};
  std::vector<std::string> ref{"a", "b", "c", "d"}, cand{"a", "c"};
  bool ok = planio::rouge_l(plan, plan) == 1.0 && planio::bleu(plan, plan) == 1.0;
  ok &= planio::rouge_l(plan, other) == 0.0 && planio::bleu(plan, other) == 0.0;
  double f = planio::rouge_l(ref, cand);
  ok &= std::abs(f - 2.0 / 3.0) < 1e-12;
  return {ok, "identical 1.0, disjoint 0.0, ROUGE-L(abcd, ac) = " + std::to_string(f)};
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(HANOI_CLI) + " " + args + " > /dev/null";
  return std::system(cmd.c_str());
}

// Reads a CSV file and drops the named column.
std::vector<std::vector<std::string>> without_column(const fs::path& path, const std::string& column) {
  auto rows = bench::parse_csv(planio::read_file(path));
  if (rows.empty()) return rows;
  auto it = std::find(rows[0].begin(), rows[0].end(), column);
  if (it == rows[0].end()) return rows;
  auto k = static_cast<std::size_t>(it - rows[0].begin());
  for (auto& r : rows) {
    if (k < r.size()) r.erase(r.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return rows;
}

Result table_reproduction(const fs::path& config, const fs::path& out) {
  if (run_cli("bench --config " + config.string() + " --out " + out.string()) != 0) return {false, "bench failed"};
  auto table = bench::parse_csv(planio::read_file(out / "table.csv"));
  std::map<std::string, std::map<std::string, std::string>> cell;
  for (std::size_t r = 1; r < table.size(); ++r) {
    for (std::size_t c = 1; c < table[r].size(); ++c) cell[table[0][c]][table[r][0]] = table[r][c];
  }
  auto labels = [&](const std::string& s, const std::string& access, const std::string& space) {
    return cell[s]["Access Level"] == access && cell[s]["State Space"] == space;
  };
  bool ok = labels("fbrl", "Gen.", "RSG") && labels("graph", "Gen.", "CSF") && labels("strips_learner", "Analytic", "CSF");
  for (const auto* s : {"exact", "graph", "strips_learner"}) ok &= cell[s]["Validity"] == "100%";

  auto reports = bench::parse_csv(planio::read_file(out / "reports.csv"));
  std::size_t checked = 0;
  for (std::size_t r = 1; r < reports.size(); ++r) {
    std::map<std::string, std::string> row;
    for (std::size_t c = 0; c < reports[0].size(); ++c) row[reports[0][c]] = reports[r][c];
    if (row["solver"] == "fbrl") continue;
    ok &= std::stoi(row["n_disks"]) <= 4 && row["validity_percent"] == "100";
    ++checked;
  }
  return {ok && checked > 0, "labels match; " + std::to_string(checked) + " exact/graph/strips runs at 100% validity"};
}

Result determinism(const fs::path& config, const fs::path& first, const fs::path& second) {
  if (run_cli("bench --config " + config.string() + " --out " + second.string()) != 0) return {false, "bench failed"};
  bool ok = without_column(first / "reports.csv", "wall_time_seconds") ==
            without_column(second / "reports.csv", "wall_time_seconds");
  auto a = bench::parse_csv(planio::read_file(first / "table.csv"));
  auto b = bench::parse_csv(planio::read_file(second / "table.csv"));
  std::erase_if(a, [](const auto& r) { return !r.empty() && r[0] == "Time"; });
  std::erase_if(b, [](const auto& r) { return !r.empty() && r[0] == "Time"; });
  ok &= a == b;
  return {ok, "reports.csv and table.csv identical without timing"};
}

}  // namespace

int main(int argc, char** argv) {
  fs::path out = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "hanoi_acceptance";
  fs::remove_all(out);
  fs::create_directories(out);
  fs::path config = out / "bench.json";
  std::ofstream(config) << R"({
  "version": 1,
  "instances": [2, 3, 4],
  "seeds": [1, 2],
  "solvers": [
    "exact",
    {"name": "graph", "params": {"steps": 10000}},
    "lnn",
    {"name": "fbrl", "params": {"max_steps": 1000, "learning_starts": 100, "backward_warmup": 200}}
  ],
  "output": {"formats": ["csv", "md"], "curves": false}
}
)";

  std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"optimality law", optimality_law},
      {"value iteration oracle equivalence", value_iteration_oracle},
      {"state space size", state_space_size},
      {"graph solver reproduction", neurosolver_reproduction},
      {"RL solvability", [&] { return rl_solvability(out / "rl"); }},
      {"STRIPS operator recovery", strips_recovery},
      {"validator soundness", validator_soundness},
      {"metric sanity", metric_sanity},
      {"table reproduction", [&] { return table_reproduction(config, out / "bench1"); }},
      {"determinism", [&] { return determinism(config, out / "bench1", out / "bench2"); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += r.first ? 0 : 1;
    std::cout << (r.first ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << r.second
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
