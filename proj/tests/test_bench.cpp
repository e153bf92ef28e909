#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hanoi/bench.hpp"
#include "hanoi/error.hpp"

using namespace hanoi;
using namespace hanoi::bench;

namespace {

// Replays a plan with the core rules only and reports whether it reaches the goal.
bool replay_reaches_goal(const HanoiMdp& mdp, const std::vector<Move>& plan) {
  HanoiState s = mdp.initial_state();
  for (const auto& m : plan) {
    if (s.peg_of(m.disk) != m.from_peg) return false;
    if (s.top_disk(m.from_peg) != m.disk) return false;
    auto top = s.top_disk(m.to_peg);
    if (top && *top > m.disk) return false;
    std::vector<int> pegs(s.disk_pegs().begin(), s.disk_pegs().end());
    pegs[static_cast<std::size_t>(m.disk)] = m.to_peg;
    s = HanoiState(pegs);
  }
  return s == mdp.goal_state();
}

std::string strip_time(const std::vector<SolverReport>& reports) {
  std::ostringstream os;
  write_reports_csv(os, reports, false);
  return os.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() / ("hanoi_bench_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("solver classification") {
  CHECK(canonical_solver("neurosolver") == "graph");
  CHECK(canonical_solver("lnn") == "strips_learner");
  CHECK(canonical_solver("plansformer") == "plan_corpus");
  CHECK_THROWS_AS(canonical_solver("astar"), UnknownSolver);

  auto fbrl = classify("fbrl");
  CHECK(fbrl.access == AccessLevel::generative);
  CHECK(fbrl.category == StateSpaceCategory::rsg);
  CHECK(classify("neurosolver").category == StateSpaceCategory::csf);
  CHECK(classify("lnn").access == AccessLevel::analytic);
  CHECK(classify("plansformer").access == AccessLevel::structured);
  CHECK(classify("plansformer").category == StateSpaceCategory::ps);
  CHECK_FALSE(classify("ncm").implemented);
  CHECK(access_label(AccessLevel::generative) == "Gen.");
  CHECK(access_label(AccessLevel::structured) == "Str.");
  CHECK(known_solvers().size() == 8);
}

TEST_CASE("solver parameters are checked") {
  CHECK(choose_solver("lnn", {{"budget", 50}}).name == "strips_learner");
  CHECK_THROWS_AS(choose_solver("graph", {{"budget", 50}}), InvalidArgument);
  CHECK_THROWS_AS(choose_solver("nope"), InvalidArgument);
  CHECK_THROWS_AS(choose_solver("exact", nlohmann::json::array()), InvalidArgument);
}

TEST_CASE("config parsing") {
  auto cfg = parse_config(R"({
    "version": 1,
    "instances": [2, 3, {"name": "shop", "components": ["db", "api", "ui"]}],
    "seeds": [4, 5],
    "reward": "per_move_penalty",
    "solvers": ["exact", {"name": "graph", "params": {"steps": 500}}],
    "output": {"dir": "out", "formats": ["md"], "curves": false},
    "workers": 2
  })");
  REQUIRE(cfg.instances.size() == 3);
  CHECK(cfg.instances[0].label == "n2");
  CHECK(cfg.instances[2].label == "shop");
  CHECK(cfg.instances[2].mdp.n_disks == 3);
  CHECK(cfg.instances[2].migration.has_value());
  CHECK(cfg.instances[0].mdp.reward.preset == RewardPreset::per_move_penalty);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{4, 5});
  CHECK(cfg.solvers[1].params["steps"] == 500);
  CHECK(cfg.output_dir == "out");
  CHECK_FALSE(cfg.write_csv);
  CHECK(cfg.write_markdown);
  CHECK_FALSE(cfg.write_curves);
  CHECK(cfg.workers == 2);

  CHECK_THROWS_AS(parse_config("{"), InvalidArgument);
  CHECK_THROWS_AS(parse_config("[]"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"version": 2, "instances": [2], "solvers": ["exact"]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"version": 1, "instances": [], "solvers": ["exact"]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"version": 1, "instances": [2], "solvers": []})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"version": 1, "instances": [2], "solvers": ["x"]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"version": 1, "instances": [0], "solvers": ["exact"]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"version": 1, "instances": [2], "solvers": ["exact"], "extra": 1})"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"version": 1, "instances": [2], "solvers": ["exact"], "seeds": "a"})"),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_config(R"({"version": 1, "instances": [{"components": []}], "solvers": ["exact"]})"),
                  InvalidArgument);
}

TEST_CASE("validity agrees with an independent replay") {
  const std::vector<std::pair<std::string, nlohmann::json>> solvers{
      {"exact", {}},
      {"value_iteration", {}},
      {"graph", {{"steps", 300}}},
      {"graph", {{"steps", 5}}},
      {"strips_learner", {}},
      {"ddqn", {{"max_steps", 300}, {"learning_starts", 50}}},
  };
  for (const auto& [name, params] : solvers) {
    for (int n : {2, 3}) {
      auto inst = disk_instance(n);
      auto out = run_solver(choose_solver(name, params), inst, 7);
      CAPTURE(name);
      CAPTURE(n);
      const auto& r = out.report;
      CHECK_FALSE(r.error.has_value());
      REQUIRE(r.validity_percent.has_value());
      CHECK(r.plans_emitted == 1);
      bool ok = !out.plan.empty() && replay_reaches_goal(inst.mdp, out.plan);
      CHECK(*r.validity_percent == (ok ? 100.0 : 0.0));
      CHECK(r.plans_valid == (ok ? 1u : 0u));
      if (ok) CHECK(r.optimal == (out.plan.size() == (std::size_t{1} << n) - 1));
    }
  }
}

TEST_CASE("analytic solvers are optimal, also on migration instances") {
  std::vector<std::string> names{"db", "api", "ui", "cache"};
  auto inst = migration_instance("m", make_edge_cloud_problem(names));
  for (auto solver : {"exact", "value_iteration", "lnn"}) {
    auto r = run_solver(choose_solver(solver), inst, 1).report;
    CAPTURE(solver);
    CHECK(r.validity_percent == 100.0);
    CHECK(r.optimal);
    CHECK(r.plan_length == 15u);
  }
}

TEST_CASE("metadata-only solvers") {
  auto r = run_solver(choose_solver("ncm"), disk_instance(3), 1).report;
  CHECK_FALSE(r.implemented);
  CHECK_FALSE(r.validity_percent.has_value());
  CHECK(r.plans_emitted == 0);
  auto p = run_solver(choose_solver("plansformer"), disk_instance(3), 1).report;
  CHECK_FALSE(p.implemented);
}

TEST_CASE("solver failures are captured") {
  auto r = run_solver(choose_solver("plan_corpus", {{"corpus", "/nonexistent/dir"}}), disk_instance(2), 1).report;
  CHECK(r.error.has_value());
  CHECK(r.validity_percent == 0.0);
}

TEST_CASE("table shape and N/A cells") {
  ExperimentConfig cfg;
  cfg.instances = {disk_instance(2)};
  cfg.seeds = {1, 2};
  cfg.solvers = {choose_solver("exact"), choose_solver("graph", {{"steps", 400}}), choose_solver("ncm")};
  auto result = run_experiment(cfg);
  REQUIRE(result.runs.size() == 6);
  CHECK(result.runs[0].report.solver == "exact");
  CHECK(result.runs[1].report.seed == 2);
  CHECK(result.runs[5].report.solver == "ncm");

  auto table = render_table(result.reports());
  auto rows = parse_csv(table.csv);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"", "exact", "graph", "ncm"});
  CHECK(rows[1] == std::vector<std::string>{"Access Level", "Analytic", "Gen.", "Str."});
  CHECK(rows[2][0] == "Time");
  CHECK(rows[2][3] == "N/A");
  CHECK(rows[3] == std::vector<std::string>{"Steps (Epochs)", "N/A", "400", "N/A"});
  CHECK(rows[4] == std::vector<std::string>{"Validity", "100%", "100%", "N/A"});
  CHECK(rows[5] == std::vector<std::string>{"State Space", "RSG", "CSF", "RSG"});
  CHECK(table.markdown.find("| Validity | 100% | 100% | N/A |") != std::string::npos);
  CHECK(table.markdown.rfind("| | exact | graph | ncm |\n|---|---|---|---|\n", 0) == 0);
}

TEST_CASE("validity aggregates emitted plans") {
  SolverReport a{.solver = "graph", .plans_emitted = 1, .plans_valid = 1};
  a.validity_percent = 100.0;
  SolverReport b = a;
  b.plans_valid = 0;
  b.validity_percent = 0.0;
  SolverReport c = b;
  auto rows = parse_csv(render_table({a, b, c}).csv);
  CHECK(rows[4][1] == "33.33%");
  SolverReport big{.solver = "ddqn", .steps_or_epochs = 30000};
  CHECK(parse_csv(render_table({big}).csv)[3][1] == "30,000");
}

TEST_CASE("CSV round trip") {
  SolverReport r{.solver = "exact", .instance = "a,\"b\"", .n_disks = 3, .seed = 9};
  r.error = "line one\nline two";
  r.validity_percent = 12.5;
  std::ostringstream os;
  write_reports_csv(os, {r});
  auto rows = parse_csv(os.str());
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[0].size() == rows[1].size());
  CHECK(rows[0].front() == "solver");
  CHECK(rows[1][1] == "a,\"b\"");
  CHECK(rows[1][2] == "3");
  CHECK(rows[1][9] == "12.5");
  CHECK(rows[1].back() == "line one\nline two");
  CHECK_THROWS_AS(parse_csv("\"open"), InvalidArgument);
}

TEST_CASE("runs are deterministic apart from the time column") {
  ExperimentConfig cfg;
  cfg.instances = {disk_instance(2), disk_instance(3)};
  cfg.seeds = {1, 2, 3};
  cfg.solvers = {choose_solver("graph", {{"steps", 200}}), choose_solver("lnn", {{"budget", 200}}),
                 choose_solver("fbrl", {{"max_steps", 300}, {"learning_starts", 50}, {"backward_warmup", 100}})};
  cfg.workers = 4;
  auto a = strip_time(run_experiment(cfg).reports());
  cfg.workers = 1;
  auto b = strip_time(run_experiment(cfg).reports());
  CHECK(a == b);
  CHECK(a.find("wall_time") == std::string::npos);
}

TEST_CASE("outputs are written") {
  TempDir dir("out");
  ExperimentConfig cfg;
  cfg.instances = {disk_instance(2)};
  cfg.solvers = {choose_solver("exact"), choose_solver("ddqn", {{"max_steps", 200}, {"curve_window", 50}})};
  cfg.output_dir = dir.path;
  write_outputs(cfg, run_experiment(cfg));
  CHECK(std::filesystem::exists(dir.path / "reports.csv"));
  CHECK(std::filesystem::exists(dir.path / "table.csv"));
  CHECK(std::filesystem::exists(dir.path / "table.md"));
  auto curve = dir.path / "curves" / "ddqn_n2_seed1.csv";
  REQUIRE(std::filesystem::exists(curve));
  std::ifstream f(curve);
  std::string header;
  std::getline(f, header);
  CHECK(header == "step,average_reward");
  std::size_t lines = 0;
  for (std::string line; std::getline(f, line);) ++lines;
  CHECK(lines == 200);
}
