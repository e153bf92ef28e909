#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hanoi/bench.hpp"
#include "hanoi/error.hpp"
#include "hanoi/migration.hpp"
#include "hanoi/plan_io.hpp"

namespace fs = std::filesystem;
using namespace hanoi;

namespace {

constexpr int kOk = 0;
constexpr int kInvalidInput = 1;
constexpr int kInternal = 2;

struct Options {
  std::string config;
  int disks = 3;
  std::string solver = "exact";
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "md";
  std::string problem;
  std::string plan;
  std::string corpus;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error("cannot write " + path.string());
}

int run_solve(const Options& o, CLI::App& cmd) {
  std::vector<bench::Instance> instances;
  bench::SolverChoice choice;
  std::uint64_t seed = o.seed.value_or(1);
  if (!o.config.empty()) {
    auto cfg = bench::load_config(o.config);
    instances = cfg.instances;
    if (cmd.count("--solver")) {
      choice = bench::choose_solver(o.solver);
      for (const auto& s : cfg.solvers) {
        if (s.name == choice.name) choice = s;
      }
    } else {
      choice = cfg.solvers.front();
    }
    if (!o.seed) seed = cfg.seeds.front();
  } else {
    instances.push_back(bench::disk_instance(o.disks));
    choice = bench::choose_solver(o.solver);
  }
  if (!bench::classify(choice.name).implemented) throw InvalidArgument("solver '" + choice.name + "' has no implementation");

  int status = kOk;
  for (const auto& inst : instances) {
    auto run = bench::run_solver(choice, inst, seed);
    const auto& r = run.report;
    std::cout << "# " << r.solver << " on " << r.instance << " (seed " << r.seed << ")\n";
    if (r.error) {
      std::cerr << "error: " << *r.error << '\n';
      status = kInternal;
      continue;
    }
    std::string plan_text;
    if (r.plans_valid > 0) {
      plan_text = planio::emit_plan(planio::plan_from_moves(inst.mdp.initial_state(), run.plan));
      if (inst.migration) {
        for (const auto& step : plan_to_migration_steps(*inst.migration, run.plan).steps) {
          std::cout << to_string(step) << '\n';
        }
      } else {
        std::cout << plan_text;
      }
    }
    std::cout << "# length " << (r.plan_length ? std::to_string(*r.plan_length) : "none") << ", valid "
              << (r.plans_valid > 0 ? "yes" : "no") << ", optimal " << (r.optimal ? "yes" : "no") << '\n';
    if (r.plans_valid == 0) {
      std::cerr << "error: " << r.solver << " produced no valid plan for " << r.instance << '\n';
      status = kInternal;
    } else if (!o.out.empty()) {
      write_file(fs::path(o.out) / (r.solver + "_" + r.instance + ".hanoi-plan"), plan_text);
      write_file(fs::path(o.out) / (r.instance + ".hanoi-problem"),
                 planio::emit_problem(planio::make_problem(inst.mdp)));
    }
  }
  return status;
}

int run_bench(const Options& o, CLI::App& cmd) {
  bench::ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = bench::load_config(o.config);
  } else {
    for (const auto& name : {"exact", "value_iteration", "graph", "strips_learner", "ddqn", "fbrl", "plan_corpus", "ncm"}) {
      cfg.solvers.push_back(bench::choose_solver(name));
    }
  }
  if (o.config.empty() || cmd.count("--disks")) cfg.instances = {bench::disk_instance(o.disks)};
  if (cmd.count("--solver")) cfg.solvers = {bench::choose_solver(o.solver)};
  if (o.seed) cfg.seeds = {*o.seed};
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (cmd.count("--format")) {
    cfg.write_csv = o.format == "csv";
    cfg.write_markdown = o.format == "md";
  }
  cfg.validate();

  auto result = bench::run_experiment(cfg);
  bench::write_outputs(cfg, result);
  const auto reports = result.reports();
  auto table = bench::render_table(reports);
  std::cout << (o.format == "csv" ? table.csv : table.markdown);
  for (const auto& r : reports) {
    if (r.error) std::cerr << "warning: " << r.solver << " on " << r.instance << " seed " << r.seed << ": " << *r.error << '\n';
  }
  return kOk;
}

int run_validate(const Options& o) {
  auto doc = planio::parse_problem(planio::read_file(o.problem));
  auto plan = planio::parse_plan(planio::read_file(o.plan));
  auto verdict = planio::validate_plan(doc, plan, planio::optimal_plan_length(doc));
  if (verdict.valid) {
    std::cout << "valid: " << plan.steps.size() << " steps, " << (verdict.optimal ? "optimal" : "not optimal");
    if (verdict.optimality_ratio) std::cout << " (ratio " << *verdict.optimality_ratio << ")";
    std::cout << '\n';
    return kOk;
  }
  const auto& f = *verdict.failing_step;
  if (f.index == plan.steps.size()) {
    std::cout << "invalid: after step " << f.index << ": " << f.reason << '\n';
  } else {
    std::cout << "invalid: step " << f.index + 1 << ": " << f.reason << '\n';
  }
  return kInvalidInput;
}

int run_score(const Options& o) {
  auto report = planio::score_corpus(o.corpus);
  std::ostringstream rows, summary;
  report.write_csv(rows);
  report.write_summary_csv(summary);
  if (!o.out.empty()) {
    write_file(fs::path(o.out) / "scores.csv", rows.str());
    write_file(fs::path(o.out) / "summary.csv", summary.str());
  }
  if (o.format == "csv") {
    std::cout << rows.str();
    return kOk;
  }
  auto fmt = [](std::optional<double> v) { return v ? std::to_string(*v) : std::string("N/A"); };
  std::cout << "| Files | Errors | Valid | Optimal | Validity | ROUGE-L | BLEU |\n|---|---|---|---|---|---|---|\n"
            << "| " << report.count() << " | " << report.errors() << " | " << report.valid() << " | "
            << report.optimal() << " | " << report.validity_percent() << "% | " << fmt(report.mean_rouge_l())
            << " | " << fmt(report.mean_bleu()) << " |\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Towers of Hanoi planners for edge-cloud service migration"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--disks", o.disks, "Number of disks / components")->check(CLI::Range(1, kDefaultStateCap));
    cmd->add_option("--solver", o.solver, "Solver name or alias");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--format", o.format, "Table format")->check(CLI::IsMember({"csv", "md"}));
  };
  auto* solve = app.add_subcommand("solve", "Solve one instance and print the plan");
  common(solve);
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment and print the comparison table");
  common(bench_cmd);
  auto* validate = app.add_subcommand("validate", "Validate a plan against a problem file");
  validate->add_option("problem", o.problem, "Problem file")->required()->check(CLI::ExistingFile);
  validate->add_option("plan", o.plan, "Plan file")->required()->check(CLI::ExistingFile);
  auto* score = app.add_subcommand("score", "Score a directory of problems and plans");
  score->add_option("dir", o.corpus, "Corpus directory")->required()->check(CLI::ExistingDirectory);
  score->add_option("--out", o.out, "Output directory");
  score->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "md"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*solve) return run_solve(o, *solve);
    if (*bench_cmd) return run_bench(o, *bench_cmd);
    if (*validate) return run_validate(o);
    return run_score(o);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const UnknownSolver& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
