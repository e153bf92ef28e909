#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanoi/core.hpp"
#include "hanoi/strips.hpp"

namespace hanoi::planio {

using strips::GroundAction;
using strips::Predicate;

struct Literal {
  Predicate predicate;
  bool negated = false;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct ActionSchema {
  std::string name;
  std::vector<std::string> parameters;
  /// Whether the <ACTION> header listed the parameters; emit preserves this.
  bool explicit_parameters = false;
  std::vector<Literal> pre;
  std::vector<Literal> effect;

  friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

/// <GOAL> and <INIT> predicate lists followed by one or more
/// <ACTION>/<PRE>/<EFFECT> blocks, predicates kept in input order.
struct ProblemDocument {
  std::vector<Predicate> goal;
  std::vector<Predicate> init;
  std::vector<ActionSchema> actions;

  friend bool operator==(const ProblemDocument&, const ProblemDocument&) = default;
};

/// Throws ParseError with the 1-based line and column of the offending token.
/// Without a parameter list in the header, parameters are the variables in
/// order of first use, except that {disc, from, to} keeps that order.
ProblemDocument parse_problem(std::string_view text);
std::string emit_problem(const ProblemDocument& doc);

strips::StripsOperator to_operator(const ActionSchema& action);
ActionSchema from_operator(const strips::StripsOperator& op);

/// Puzzle instance from `start` (default: the initial state) to the MDP goal,
/// with the move operator as its only action.
ProblemDocument make_problem(const HanoiMdp& mdp, std::optional<HanoiState> start = {});

struct PlanDocument {
  std::vector<GroundAction> steps;

  friend bool operator==(const PlanDocument&, const PlanDocument&) = default;
};

/// One grounded action per line; blank lines are skipped.
PlanDocument parse_plan(std::string_view text);
std::string emit_plan(const PlanDocument& plan);
/// Grounds a legal move sequence from `start`. Throws PlanValidationError at
/// the first move that is not legal.
PlanDocument plan_from_moves(const HanoiState& start, std::span<const Move> moves);

struct FailingStep {
  std::size_t index = 0;  // plan size when only the goal fails
  std::string reason;
};

struct ValidationVerdict {
  bool valid = false;
  std::optional<FailingStep> failing_step;
  bool optimal = false;
  /// optimal_length / plan_length; present when the plan is valid and an
  /// optimal length was supplied.
  std::optional<double> optimality_ratio;
};

ValidationVerdict validate_plan(const ProblemDocument& doc, const PlanDocument& plan,
                                std::optional<std::size_t> optimal_length = {});

/// Length of a shortest plan for the document, or nullopt if the goal is unreachable.
std::optional<std::size_t> optimal_plan_length(const ProblemDocument& doc);

// Metrics ------------------------------------------------------------------------

/// One token per action name and per argument.
std::vector<std::string> tokenize(const PlanDocument& plan);

/// LCS F-measure (beta = 1). Two empty sequences score 1.
double rouge_l(std::span<const std::string> reference, std::span<const std::string> candidate);

/// Geometric mean of clipped n-gram precisions times the brevity penalty,
/// without smoothing. Orders with no reference n-gram are skipped. An empty
/// candidate scores 0 unless the reference is empty too.
double bleu(std::span<const std::string> reference, std::span<const std::string> candidate, int max_n = 4);

// Corpus scoring -------------------------------------------------------------------

struct CorpusEntry {
  std::string name;
  std::optional<std::string> error;
  bool valid = false;
  bool optimal = false;
  std::optional<std::size_t> plan_length;
  std::optional<std::size_t> optimal_length;
  std::optional<FailingStep> failing_step;
  std::optional<double> rouge_l;
  std::optional<double> bleu;
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;

  std::size_t count() const noexcept { return entries.size(); }
  std::size_t errors() const noexcept;
  std::size_t valid() const noexcept;
  std::size_t optimal() const noexcept;
  double validity_percent() const noexcept;
  double optimality_percent() const noexcept;
  std::optional<double> mean_rouge_l() const noexcept;
  std::optional<double> mean_bleu() const noexcept;

  /// One row per problem.
  void write_csv(std::ostream& os) const;
  /// Header plus one aggregate row.
  void write_summary_csv(std::ostream& os) const;
};

/// Scores every X.hanoi-problem in `dir` against X.hanoi-plan, and against
/// X.ref.hanoi-plan when present. Unreadable or unparseable files become error
/// entries that count as invalid. Throws InvalidArgument if `dir` is not a directory.
CorpusReport score_corpus(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);

}  // namespace hanoi::planio
