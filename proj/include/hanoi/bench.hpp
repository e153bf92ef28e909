#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hanoi/core.hpp"
#include "hanoi/migration.hpp"

namespace hanoi::bench {

enum class AccessLevel { continuing, episodic, generative, analytic, structured };
enum class StateSpaceCategory { ps, rsg, csf };

std::string_view access_name(AccessLevel a) noexcept;
/// Abbreviated label as used in the comparison table ("Gen.", "Str.", ...).
std::string_view access_label(AccessLevel a) noexcept;
std::string_view category_name(StateSpaceCategory c) noexcept;

struct Classification {
  AccessLevel access = AccessLevel::analytic;
  StateSpaceCategory category = StateSpaceCategory::rsg;
  bool implemented = true;
};

/// Resolves aliases (neurosolver -> graph, lnn -> strips_learner,
/// plansformer -> plan_corpus). Throws UnknownSolver.
std::string canonical_solver(std::string_view name);
Classification classify(std::string_view solver);
std::vector<std::string> known_solvers();

struct Instance {
  std::string label;
  HanoiMdp mdp;
  std::optional<MigrationProblem> migration;
};

Instance disk_instance(int n_disks, RewardModel reward = RewardModel::valid_invalid_goal());
Instance migration_instance(std::string label, const MigrationProblem& problem,
                            RewardModel reward = RewardModel::valid_invalid_goal());

struct SolverChoice {
  std::string name;  // canonical
  nlohmann::json params = nlohmann::json::object();
};

/// Throws InvalidArgument for an unknown solver or parameter.
SolverChoice choose_solver(std::string_view name, nlohmann::json params = nlohmann::json::object());

struct ExperimentConfig {
  std::vector<Instance> instances;
  std::vector<std::uint64_t> seeds{1};
  std::vector<SolverChoice> solvers;
  std::filesystem::path output_dir;
  bool write_csv = true;
  bool write_markdown = true;
  bool write_curves = true;
  unsigned workers = 0;  // 0: one per hardware thread

  /// Throws InvalidArgument unless there is at least one instance, seed and solver.
  void validate() const;
};

inline constexpr int kConfigVersion = 1;

/// JSON document; see the README for the schema. Throws InvalidArgument.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct SolverReport {
  std::string solver;
  std::string instance;
  int n_disks = 0;
  std::uint64_t seed = 0;
  AccessLevel access = AccessLevel::analytic;
  StateSpaceCategory category = StateSpaceCategory::rsg;
  bool implemented = true;
  double wall_time_seconds = 0.0;
  std::optional<long long> steps_or_epochs;
  /// Share of emitted plans the validator accepted; absent for metadata-only rows.
  std::optional<double> validity_percent;
  std::optional<std::size_t> plan_length;
  bool optimal = false;
  std::size_t plans_emitted = 0;
  std::size_t plans_valid = 0;
  std::optional<std::string> error;
};

struct RunOutcome {
  SolverReport report;
  std::vector<Move> plan;
  /// Trailing average reward per training step, for learning solvers.
  std::vector<double> reward_curve;
};

/// Runs one solver on one instance; failures are captured in the report.
RunOutcome run_solver(const SolverChoice& choice, const Instance& instance, std::uint64_t seed);

struct ExperimentResult {
  std::vector<RunOutcome> runs;  // config order: solver, then instance, then seed

  std::vector<SolverReport> reports() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

struct RenderedTable {
  std::string markdown;
  std::string csv;
};

/// One column per solver (first-appearance order) and the rows Access Level,
/// Time, Steps (Epochs), Validity, State Space. Missing values read "N/A".
RenderedTable render_table(const std::vector<SolverReport>& reports);

/// Long form, one row per report.
void write_reports_csv(std::ostream& os, const std::vector<SolverReport>& reports, bool include_time = true);

/// Writes reports.csv, table.csv / table.md and curves/ under the output directory.
void write_outputs(const ExperimentConfig& config, const ExperimentResult& result);

/// RFC 4180 reader for the files written here.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace hanoi::bench
