#include "hanoi/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "hanoi/error.hpp"
#include "hanoi/exact_solver.hpp"
#include "hanoi/graph_solver.hpp"
#include "hanoi/plan_io.hpp"
#include "hanoi/rl.hpp"
#include "hanoi/strips.hpp"

namespace hanoi::bench {

using nlohmann::json;

// Taxonomy -----------------------------------------------------------------------

std::string_view access_name(AccessLevel a) noexcept {
  switch (a) {
    case AccessLevel::continuing: return "Continuing";
    case AccessLevel::episodic: return "Episodic";
    case AccessLevel::generative: return "Generative";
    case AccessLevel::analytic: return "Analytic";
    case AccessLevel::structured: return "Structured";
  }
  return "?";
}

std::string_view access_label(AccessLevel a) noexcept {
  switch (a) {
    case AccessLevel::continuing: return "Cont.";
    case AccessLevel::episodic: return "Epis.";
    case AccessLevel::generative: return "Gen.";
    case AccessLevel::analytic: return "Analytic";
    case AccessLevel::structured: return "Str.";
  }
  return "?";
}

std::string_view category_name(StateSpaceCategory c) noexcept {
  switch (c) {
    case StateSpaceCategory::ps: return "PS";
    case StateSpaceCategory::rsg: return "RSG";
    case StateSpaceCategory::csf: return "CSF";
  }
  return "?";
}

namespace {

struct SolverInfo {
  const char* name;
  Classification cls;
  std::vector<std::string> params;
};

const std::vector<std::string> kAgentParams{
    "discount",       "learning_rate",       "epsilon_start",    "epsilon_end",
    "epsilon_decay_steps", "target_sync",    "batch_size",       "buffer_capacity",
    "max_steps",      "max_episode_steps",   "learning_starts",  "hidden_units",
    "generator",      "backward_warmup",     "backward_horizon", "backward_hidden_units",
    "backward_learning_rate", "snap_margin", "rollout_steps",    "curve_window",
    "curve_stride"};

const std::vector<SolverInfo>& solver_table() {
  using A = AccessLevel;
  using C = StateSpaceCategory;
  static const std::vector<SolverInfo> table{
      {"exact", {A::analytic, C::rsg, true}, {}},
      {"value_iteration", {A::analytic, C::rsg, true}, {"discount", "tolerance", "max_sweeps"}},
      {"ddqn", {A::episodic, C::rsg, true}, kAgentParams},
      {"fbrl", {A::generative, C::rsg, true}, kAgentParams},
      {"graph", {A::generative, C::csf, true}, {"steps", "exhaustive"}},
      {"strips_learner", {A::analytic, C::csf, true}, {"budget"}},
      {"plan_corpus", {A::structured, C::ps, true}, {"corpus"}},
      {"ncm", {A::structured, C::rsg, false}, {}},
  };
  return table;
}

const SolverInfo& info(std::string_view canonical) {
  for (const auto& s : solver_table()) {
    if (s.name == canonical) return s;
  }
  throw UnknownSolver("unknown solver '" + std::string(canonical) + "'");
}

}  // namespace

std::string canonical_solver(std::string_view name) {
  if (name == "neurosolver") return "graph";
  if (name == "lnn") return "strips_learner";
  if (name == "plansformer") return "plan_corpus";
  return info(name).name;
}

Classification classify(std::string_view solver) { return info(canonical_solver(solver)).cls; }

std::vector<std::string> known_solvers() {
  std::vector<std::string> out;
  for (const auto& s : solver_table()) out.emplace_back(s.name);
  return out;
}

// Instances and configuration ---------------------------------------------------------

Instance disk_instance(int n_disks, RewardModel reward) {
  if (n_disks < 1) throw InvalidArgument("instances need at least one disk");
  return {"n" + std::to_string(n_disks), HanoiMdp(n_disks, reward), std::nullopt};
}

Instance migration_instance(std::string label, const MigrationProblem& problem, RewardModel reward) {
  return {std::move(label), to_hanoi(problem, reward), problem};
}

SolverChoice choose_solver(std::string_view name, json params) {
  SolverChoice choice;
  try {
    choice.name = canonical_solver(name);
  } catch (const UnknownSolver& e) {
    throw InvalidArgument(e.what());
  }
  if (params.is_null()) params = json::object();
  if (!params.is_object()) throw InvalidArgument("params of solver '" + choice.name + "' must be an object");
  const auto& allowed = info(choice.name).params;
  for (const auto& [key, value] : params.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw InvalidArgument("solver '" + choice.name + "' has no parameter '" + key + "'");
    }
  }
  choice.params = std::move(params);
  return choice;
}

void ExperimentConfig::validate() const {
  if (instances.empty()) throw InvalidArgument("config needs at least one instance");
  if (seeds.empty()) throw InvalidArgument("config needs at least one seed");
  if (solvers.empty()) throw InvalidArgument("config needs at least one solver");
}

namespace {

template <typename T>
T get(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("config key '") + key + "' has the wrong type");
  }
}

MigrationProblem parse_migration(const json& j) {
  MigrationProblem p;
  const auto& comps = j.at("components");
  if (!comps.is_array() || comps.empty()) throw InvalidArgument("migration components must be a non-empty array");
  std::vector<std::string> names;
  bool ranked = false;
  for (const auto& c : comps) {
    if (c.is_string()) {
      names.push_back(c.get<std::string>());
    } else if (c.is_object()) {
      ranked = true;
      p.components.push_back({c.at("name").get<std::string>(), c.at("rank").get<int>()});
    } else {
      throw InvalidArgument("a migration component is a name or {name, rank}");
    }
  }
  if (ranked && !names.empty()) throw InvalidArgument("mix of ranked and unranked components");
  if (!ranked) p = make_edge_cloud_problem(names);
  if (auto tiers = j.find("tiers"); tiers != j.end()) {
    p.tiers.clear();
    for (const auto& t : *tiers) p.tiers.push_back({t.at("name").get<std::string>(), parse_role(t.at("role").get<std::string>())});
  } else if (ranked) {
    p.tiers = make_edge_cloud_problem({}).tiers;
  }
  p.validate();
  return p;
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config must be a JSON object");
  if (get<int>(doc, "version", -1) != kConfigVersion) {
    throw InvalidArgument("config version must be " + std::to_string(kConfigVersion));
  }
  static const std::set<std::string> keys{"version", "instances", "seeds", "solvers", "reward", "output", "workers"};
  for (const auto& [key, value] : doc.items()) {
    if (!keys.contains(key)) throw InvalidArgument("unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  try {
    RewardModel reward = RewardModel::valid_invalid_goal();
    if (doc.contains("reward")) reward = parse_preset(doc["reward"].get<std::string>()) == RewardPreset::per_move_penalty
                                             ? RewardModel::per_move_penalty()
                                             : RewardModel::valid_invalid_goal();
    for (const auto& inst : doc.value("instances", json::array())) {
      if (inst.is_number_integer()) {
        cfg.instances.push_back(disk_instance(inst.get<int>(), reward));
      } else if (inst.is_object()) {
        auto problem = parse_migration(inst);
        std::string label = inst.value("name", "migration" + std::to_string(cfg.instances.size()));
        cfg.instances.push_back(migration_instance(label, problem, reward));
      } else {
        throw InvalidArgument("an instance is a disk count or a migration object");
      }
    }
    if (doc.contains("seeds")) cfg.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
    for (const auto& s : doc.value("solvers", json::array())) {
      if (s.is_string()) {
        cfg.solvers.push_back(choose_solver(s.get<std::string>()));
      } else {
        cfg.solvers.push_back(choose_solver(s.at("name").get<std::string>(), s.value("params", json::object())));
      }
    }
    cfg.workers = doc.value("workers", 0u);
    if (auto out = doc.find("output"); out != doc.end()) {
      cfg.output_dir = out->value("dir", std::string());
      auto formats = out->value("formats", std::vector<std::string>{"csv", "md"});
      cfg.write_csv = std::find(formats.begin(), formats.end(), "csv") != formats.end();
      cfg.write_markdown = std::find(formats.begin(), formats.end(), "md") != formats.end();
      for (const auto& f : formats) {
        if (f != "csv" && f != "md") throw InvalidArgument("unknown output format '" + f + "'");
      }
      cfg.write_curves = out->value("curves", true);
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) { return parse_config(planio::read_file(path)); }

// Running -------------------------------------------------------------------------------

namespace {

AgentConfig agent_config(const json& p, std::uint64_t seed) {
  AgentConfig c;
  c.seed = seed;
  c.discount = get(p, "discount", c.discount);
  c.learning_rate = get(p, "learning_rate", c.learning_rate);
  c.epsilon_start = get(p, "epsilon_start", c.epsilon_start);
  c.epsilon_end = get(p, "epsilon_end", c.epsilon_end);
  c.epsilon_decay_steps = get(p, "epsilon_decay_steps", c.epsilon_decay_steps);
  c.target_sync = get(p, "target_sync", c.target_sync);
  c.batch_size = get(p, "batch_size", c.batch_size);
  c.buffer_capacity = get(p, "buffer_capacity", c.buffer_capacity);
  c.max_steps = get(p, "max_steps", c.max_steps);
  c.max_episode_steps = get(p, "max_episode_steps", c.max_episode_steps);
  c.learning_starts = get(p, "learning_starts", c.learning_starts);
  c.hidden_units = get(p, "hidden_units", c.hidden_units);
  c.backward_warmup = get(p, "backward_warmup", c.backward_warmup);
  c.backward_horizon = get(p, "backward_horizon", c.backward_horizon);
  c.backward_hidden_units = get(p, "backward_hidden_units", c.backward_hidden_units);
  c.backward_learning_rate = get(p, "backward_learning_rate", c.backward_learning_rate);
  c.snap_margin = get(p, "snap_margin", c.snap_margin);
  auto generator = get<std::string>(p, "generator", "learned");
  if (generator == "exact") {
    c.generator = BackwardGenerator::exact;
  } else if (generator != "learned") {
    throw InvalidArgument("generator must be 'learned' or 'exact'");
  }
  c.validate();
  return c;
}

// Grounds and validates a move sequence against the instance's problem document.
void record_plan(RunOutcome& out, const Instance& inst, std::vector<Move> moves, std::optional<std::size_t> optimal) {
  auto& r = out.report;
  r.plans_emitted = 1;
  r.plan_length = moves.size();
  out.plan = std::move(moves);
  planio::PlanDocument plan;
  HanoiState s = inst.mdp.initial_state();
  try {
    for (const auto& m : out.plan) {
      plan.steps.push_back(strips::ground_move(s, m));
      if (!is_legal(s, m)) break;
      s = moved(s, m);
    }
  } catch (const InvalidArgument&) {
    r.validity_percent = 0.0;  // a move that does not even name the disc's peg
    return;
  }
  auto verdict = planio::validate_plan(planio::make_problem(inst.mdp), plan, optimal);
  r.plans_valid = verdict.valid ? 1 : 0;
  r.optimal = verdict.optimal;
  r.validity_percent = verdict.valid ? 100.0 : 0.0;
}

std::vector<double> curve(const TrainingLog& log, const json& p) {
  auto window = get<std::size_t>(p, "curve_window", 1000);
  return log.average_reward_curve(window);
}

}  // namespace

RunOutcome run_solver(const SolverChoice& choice, const Instance& inst, std::uint64_t seed) {
  RunOutcome out;
  auto& r = out.report;
  const auto cls = classify(choice.name);
  r.solver = choice.name;
  r.instance = inst.label;
  r.n_disks = inst.mdp.n_disks;
  r.seed = seed;
  r.access = cls.access;
  r.category = cls.category;
  r.implemented = cls.implemented;
  if (!cls.implemented) return out;

  const auto& p = choice.params;
  const auto start = std::chrono::steady_clock::now();
  try {
    std::optional<std::size_t> optimal;
    if (inst.mdp.n_disks <= kDefaultStateCap) {
      optimal = static_cast<std::size_t>(bfs_distances(inst.mdp)[state_index(inst.mdp.initial_state())]);
    }
    if (choice.name == "exact") {
      record_plan(out, inst, bfs_shortest_plan(inst.mdp), optimal);
    } else if (choice.name == "value_iteration") {
      HanoiMdp mdp = inst.mdp;
      mdp.reward = RewardModel::per_move_penalty();
      ValueIterationOptions opts;
      opts.tolerance = get(p, "tolerance", opts.tolerance);
      opts.max_sweeps = get(p, "max_sweeps", opts.max_sweeps);
      auto table = value_iteration(mdp, get(p, "discount", 1.0), opts);
      r.steps_or_epochs = static_cast<long long>(table.residuals.size());
      record_plan(out, inst, extract_plan(table, mdp, mdp.initial_state()), optimal);
    } else if (choice.name == "graph") {
      const auto steps = get<std::uint64_t>(p, "steps", 10'000);
      StateGraph g = get(p, "exhaustive", false) ? explore_exhaustive(inst.mdp) : explore(inst.mdp, steps, seed);
      if (!get(p, "exhaustive", false)) r.steps_or_epochs = static_cast<long long>(steps);
      auto solved = solve(g, inst.mdp);
      if (solved.solved) {
        record_plan(out, inst, std::move(solved.plan), optimal);
      } else {
        r.plans_emitted = 1;  // no route found counts as a failed plan
        r.validity_percent = 0.0;
      }
    } else if (choice.name == "ddqn" || choice.name == "fbrl") {
      auto cfg = agent_config(p, seed);
      auto trained = choice.name == "ddqn" ? ddqn_train(inst.mdp, cfg) : fbrl_train(inst.mdp, cfg);
      r.steps_or_epochs = cfg.max_steps;
      const int rollout = get(p, "rollout_steps", std::max(100, 4 << inst.mdp.n_disks));
      auto roll = greedy_rollout(trained.net, inst.mdp, rollout);
      out.reward_curve = curve(trained.log, p);
      record_plan(out, inst, std::move(roll.plan), optimal);
    } else if (choice.name == "strips_learner") {
      const auto budget = get<std::uint64_t>(p, "budget", 0);
      auto examples = budget > 0 ? strips::collect_examples(inst.mdp, budget, seed)
                                 : strips::collect_exhaustive(inst.mdp.n_disks);
      auto learned = strips::learn_operator(examples);
      auto plan = strips::plan_forward({learned.op}, strips::state_to_predicates(inst.mdp.initial_state()),
                                       strips::dynamic_facts(inst.mdp.goal_state()));
      if (!plan) {
        r.plans_emitted = 1;
        r.validity_percent = 0.0;
      } else {
        std::vector<Move> moves;
        HanoiState s = inst.mdp.initial_state();
        for (const auto& a : *plan) {
          Move m = strips::to_move(s, a);
          moves.push_back(m);
          if (!is_legal(s, m)) break;
          s = moved(s, m);
        }
        record_plan(out, inst, std::move(moves), optimal);
      }
    } else if (choice.name == "plan_corpus") {
      auto dir = get<std::string>(p, "corpus", "");
      if (dir.empty()) {
        r.implemented = false;  // metadata-only without a corpus
      } else {
        auto report = planio::score_corpus(dir);
        r.plans_emitted = report.count();
        r.plans_valid = report.valid();
        r.validity_percent = report.validity_percent();
      }
    }
  } catch (const std::exception& e) {
    r.error = e.what();
    r.validity_percent = 0.0;
  }
  r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<SolverReport> ExperimentResult::reports() const {
  std::vector<SolverReport> out;
  for (const auto& run : runs) out.push_back(run.report);
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  struct Job {
    const SolverChoice* solver;
    const Instance* instance;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& s : config.solvers) {
    for (const auto& i : config.instances) {
      for (auto seed : config.seeds) jobs.push_back({&s, &i, seed});
    }
  }
  ExperimentResult result;
  result.runs.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      result.runs[k] = run_solver(*jobs[k].solver, *jobs[k].instance, jobs[k].seed);
    }
  };
  unsigned n = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, jobs.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  return result;
}

// Output --------------------------------------------------------------------------------

namespace {

std::string trim_number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

std::string thousands(long long v) {
  std::string digits = std::to_string(v < 0 ? -v : v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return (v < 0 ? "-" : "") + out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  std::ostringstream os;
  os << *v;
  return os.str();
}

}  // namespace

RenderedTable render_table(const std::vector<SolverReport>& reports) {
  std::vector<std::string> columns;
  std::map<std::string, std::vector<const SolverReport*>> by_solver;
  for (const auto& r : reports) {
    if (!by_solver.contains(r.solver)) columns.push_back(r.solver);
    by_solver[r.solver].push_back(&r);
  }
  const std::vector<std::string> row_names{"Access Level", "Time", "Steps (Epochs)", "Validity", "State Space"};
  std::vector<std::vector<std::string>> cells(row_names.size());
  for (const auto& name : columns) {
    const auto& rs = by_solver[name];
    const auto* first = rs.front();
    std::vector<const SolverReport*> ran;
    for (const auto* r : rs) {
      if (r->implemented) ran.push_back(r);
    }
    cells[0].emplace_back(access_label(first->access));

    if (ran.empty()) {
      cells[1].emplace_back("N/A");
    } else {
      double t = 0.0;
      for (const auto* r : ran) t += r->wall_time_seconds;
      cells[1].push_back(trim_number(t / static_cast<double>(ran.size()), 3) + " s");
    }

    bool all_steps = !ran.empty();
    long double steps = 0;
    for (const auto* r : ran) {
      all_steps &= r->steps_or_epochs.has_value();
      if (r->steps_or_epochs) steps += *r->steps_or_epochs;
    }
    cells[2].push_back(all_steps ? thousands(std::llround(static_cast<double>(steps / ran.size()))) : "N/A");

    std::size_t emitted = 0, valid = 0;
    bool any_validity = false;
    for (const auto* r : ran) {
      emitted += r->plans_emitted;
      valid += r->plans_valid;
      any_validity |= r->validity_percent.has_value();
    }
    cells[3].push_back(any_validity ? trim_number(emitted ? 100.0 * static_cast<double>(valid) / static_cast<double>(emitted) : 0.0, 2) + "%"
                                    : "N/A");
    cells[4].emplace_back(category_name(first->category));
  }

  RenderedTable out;
  out.markdown = "| |";
  out.csv = "";
  for (const auto& c : columns) {
    out.markdown += " " + c + " |";
    out.csv += "," + csv_field(c);
  }
  out.markdown += "\n|---|";
  for (std::size_t i = 0; i < columns.size(); ++i) out.markdown += "---|";
  out.markdown += "\n";
  out.csv += "\n";
  for (std::size_t row = 0; row < row_names.size(); ++row) {
    out.markdown += "| " + row_names[row] + " |";
    out.csv += csv_field(row_names[row]);
    for (const auto& cell : cells[row]) {
      out.markdown += " " + cell + " |";
      out.csv += "," + csv_field(cell);
    }
    out.markdown += "\n";
    out.csv += "\n";
  }
  return out;
}

void write_reports_csv(std::ostream& os, const std::vector<SolverReport>& reports, bool include_time) {
  os << "solver,instance,n_disks,seed,access_level,state_space,implemented,";
  if (include_time) os << "wall_time_seconds,";
  os << "steps_or_epochs,validity_percent,plan_length,optimal,plans_emitted,plans_valid,error\n";
  for (const auto& r : reports) {
    os << csv_field(r.solver) << ',' << csv_field(r.instance) << ',' << r.n_disks << ',' << r.seed << ','
       << access_name(r.access) << ',' << category_name(r.category) << ',' << r.implemented << ',';
    if (include_time) os << trim_number(r.wall_time_seconds, 6) << ',';
    os << opt(r.steps_or_epochs) << ',' << (r.validity_percent ? trim_number(*r.validity_percent, 2) : "") << ','
       << opt(r.plan_length) << ',' << r.optimal << ',' << r.plans_emitted << ',' << r.plans_valid << ','
       << csv_field(r.error.value_or("")) << '\n';
  }
}

void write_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  if (config.output_dir.empty()) return;
  fs::create_directories(config.output_dir);
  auto open = [](const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path.string());
    return f;
  };
  const auto reports = result.reports();
  {
    auto f = open(config.output_dir / "reports.csv");
    write_reports_csv(f, reports);
  }
  auto table = render_table(reports);
  if (config.write_csv) open(config.output_dir / "table.csv") << table.csv;
  if (config.write_markdown) open(config.output_dir / "table.md") << table.markdown;
  if (config.write_curves) {
    for (const auto& run : result.runs) {
      if (run.reward_curve.empty()) continue;
      fs::create_directories(config.output_dir / "curves");
      const auto& r = run.report;
      auto f = open(config.output_dir / "curves" /
                    (r.solver + "_" + r.instance + "_seed" + std::to_string(r.seed) + ".csv"));
      f << "step,average_reward\n";
      for (std::size_t i = 0; i < run.reward_curve.size(); ++i) {
        f << i + 1 << ',' << trim_number(run.reward_curve[i], 6) << '\n';
      }
    }
  }
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      row.push_back(std::move(field));
      rows.push_back(std::move(row));
      field.clear();
      row.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  if (quoted) throw InvalidArgument("unterminated quoted CSV field");
  return rows;
}

}  // namespace hanoi::bench
