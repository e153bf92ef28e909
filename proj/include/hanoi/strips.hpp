#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hanoi/core.hpp"

namespace hanoi::strips {

/// on/2, clear/1 or smaller/2 over object or variable names. smaller(a, b)
/// reads "b is smaller than a"; pegs are larger than every disc.
struct Predicate {
  std::string name;
  std::vector<std::string> args;

  Predicate() = default;
  /// Throws InvalidArgument on an unknown name or wrong arity.
  Predicate(std::string name, std::vector<std::string> args);

  friend auto operator<=>(const Predicate&, const Predicate&) = default;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Known predicate arity, or nullopt for an unknown name.
std::optional<std::size_t> arity(std::string_view name) noexcept;

/// "on(d1,peg1)".
std::string to_string(const Predicate& p);
/// "on d1 peg1".
std::string to_tokens(const Predicate& p);

using Facts = std::set<Predicate>;

/// d1 is the smallest disc, so disk index i of an n-disk state is "d{n-i}".
std::string disc_name(int disk, int n_disks);
std::string peg_name(int peg);
/// Disk index of a disc name, or nullopt if `name` is not a disc of an n-disk puzzle.
std::optional<int> disc_index(std::string_view name, int n_disks);
std::optional<int> peg_index(std::string_view name);

/// Complete on/clear/smaller description. smaller covers every peg over every
/// disc and every larger disc over every smaller one.
Facts state_to_predicates(const HanoiState& state);
/// Inverse of state_to_predicates, reading only on/2 facts. Throws
/// MalformedEncoding if they do not describe exactly one stack per peg.
HanoiState predicates_to_state(const Facts& facts, int n_disks);

/// Facts of `state` that can change: on and clear.
Facts dynamic_facts(const HanoiState& state);

struct GroundAction {
  std::string name;
  std::vector<std::string> args;

  friend auto operator<=>(const GroundAction&, const GroundAction&) = default;
  friend bool operator==(const GroundAction&, const GroundAction&) = default;
};

/// "move d1 peg1 peg3".
std::string to_string(const GroundAction& a);

/// move(disc, from, to): `from` is whatever the disc rests on, `to` is the top
/// disc of the destination peg or the peg itself. Works for illegal moves too.
GroundAction ground_move(const HanoiState& state, const Move& move);
/// Reads a move(disc, from, to) action against `state`. Throws InvalidArgument
/// if the names do not refer to the disc's support and a destination peg top.
Move to_move(const HanoiState& state, const GroundAction& action);

struct StripsOperator {
  std::string name;
  std::vector<std::string> parameters;
  Facts alpha;  // must hold
  Facts beta;   // must not hold
  Facts gamma;  // added
  Facts delta;  // deleted

  /// Throws InvalidArgument if an effect is both added and deleted or a
  /// literal uses a name that is not a parameter.
  void validate() const;

  friend bool operator==(const StripsOperator&, const StripsOperator&) = default;
};

/// Substitutes parameters by objects.
Facts bind(const Facts& schema, const std::vector<std::string>& parameters,
           const std::vector<std::string>& objects);

bool applicable(const StripsOperator& op, const Facts& state, const std::vector<std::string>& objects);
/// state - delta + gamma under the binding; does not check applicability.
Facts apply(const StripsOperator& op, const Facts& state, const std::vector<std::string>& objects);

/// move(disc, from, to), with the smaller(to, disc) precondition and
/// clear(to) deletion so that it is sound on its own.
StripsOperator move_operator();

/// "<ACTION> move disc from to" / "<PRE> ..." / "<EFFECT> ..." lines.
std::string format_operator(const StripsOperator& op);

// Planning --------------------------------------------------------------------

/// Shortest sequence of grounded operator applications from `init` to a state
/// containing every `goal` literal, found breadth-first. Objects are those named
/// in `init`; parameters bind to pairwise distinct objects. nullopt if unreachable.
std::optional<std::vector<GroundAction>> plan_forward(const std::vector<StripsOperator>& domain,
                                                      const Facts& init, const Facts& goal,
                                                      std::size_t max_states = 1'000'000);

// Learning --------------------------------------------------------------------

struct Example {
  Facts pre;
  GroundAction action;
  Facts next;

  friend auto operator<=>(const Example&, const Example&) = default;
  friend bool operator==(const Example&, const Example&) = default;
};

struct ExampleSet {
  std::set<Example> positives;
  std::set<Example> negatives;
};

/// A random agent picks a disc and a different destination peg `budget` times.
/// Legal attempts are positives and advance the walk (restarting at the goal);
/// illegal ones are negatives with the state unchanged.
ExampleSet collect_examples(const HanoiMdp& mdp, std::uint64_t budget, std::uint64_t seed);
/// Every state, disc and other destination peg.
ExampleSet collect_exhaustive(int n_disks, int cap = kDefaultStateCap);

enum class Component { alpha, beta, gamma, delta };
std::string_view component_name(Component c) noexcept;

/// head <- body, weighted by the fraction of positive examples consistent with it.
struct LogicalRule {
  Component head = Component::alpha;
  Facts body;
  double weight = 0.0;
};

struct LearnedOperator {
  StripsOperator op;
  std::vector<LogicalRule> rules;  // one per component, alpha..delta
};

/// Crisp ILP over lifted examples. Parameters are (disc, from, to) bound by the
/// action arguments. Throws InvalidArgument on an empty positive set and
/// LearningError naming the example that cannot be lifted.
LearnedOperator learn_operator(const ExampleSet& examples);

/// Fraction of positives consistent with a rule of the given component.
double rule_weight(Component head, const Facts& body, const ExampleSet& examples);

/// Drops precondition literals that every valid n-disk state already implies
/// given the remaining ones, alpha first, then beta, each in sorted order.
StripsOperator prune_entailed(const StripsOperator& op, int n_disks);

}  // namespace hanoi::strips
