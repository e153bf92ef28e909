#include "hanoi/strips.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <random>

#include "hanoi/error.hpp"

namespace hanoi::strips {

namespace {

bool subset(const Facts& a, const Facts& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool disjoint(const Facts& a, const Facts& b) {
  return std::none_of(a.begin(), a.end(), [&](const Predicate& p) { return b.contains(p); });
}

Facts difference(const Facts& a, const Facts& b) {
  Facts out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

Facts intersection(const Facts& a, const Facts& b) {
  Facts out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::optional<int> parse_suffix(std::string_view name, std::string_view prefix) {
  if (!name.starts_with(prefix) || name.size() == prefix.size()) return std::nullopt;
  int value = 0;
  auto tail = name.substr(prefix.size());
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
  if (ec != std::errc{} || ptr != tail.data() + tail.size() || tail.front() == '0') return std::nullopt;
  return value;
}

// Invokes f(objects) for every tuple of `k` pairwise distinct objects.
template <typename F>
void for_each_binding(const std::vector<std::string>& objects, std::size_t k, F&& f) {
  std::vector<std::string> tuple(k);
  std::vector<bool> used(objects.size(), false);
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == k) {
      f(tuple);
      return;
    }
    for (std::size_t i = 0; i < objects.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      tuple[depth] = objects[i];
      self(self, depth + 1);
      used[i] = false;
    }
  };
  rec(rec, 0);
}

std::vector<std::string> objects_of(const Facts& facts) {
  std::set<std::string> names;
  for (const auto& p : facts) names.insert(p.args.begin(), p.args.end());
  return {names.begin(), names.end()};
}

const std::vector<std::string> kMoveParameters{"disc", "from", "to"};

}  // namespace

// Predicates ------------------------------------------------------------------

std::optional<std::size_t> arity(std::string_view name) noexcept {
  if (name == "on" || name == "smaller") return 2;
  if (name == "clear") return 1;
  return std::nullopt;
}

Predicate::Predicate(std::string n, std::vector<std::string> a) : name(std::move(n)), args(std::move(a)) {
  auto expected = arity(name);
  if (!expected) throw InvalidArgument("unknown predicate '" + name + "'");
  if (args.size() != *expected) {
    throw InvalidArgument(name + " takes " + std::to_string(*expected) + " arguments, got " +
                          std::to_string(args.size()));
  }
}

std::string to_string(const Predicate& p) {
  std::string out = p.name + "(";
  for (std::size_t i = 0; i < p.args.size(); ++i) out += (i ? "," : "") + p.args[i];
  return out + ")";
}

std::string to_tokens(const Predicate& p) {
  std::string out = p.name;
  for (const auto& a : p.args) out += " " + a;
  return out;
}

std::string disc_name(int disk, int n_disks) { return "d" + std::to_string(n_disks - disk); }
std::string peg_name(int peg) { return "peg" + std::to_string(peg + 1); }

std::optional<int> disc_index(std::string_view name, int n_disks) {
  auto label = parse_suffix(name, "d");
  if (!label || *label > n_disks) return std::nullopt;
  return n_disks - *label;
}

std::optional<int> peg_index(std::string_view name) {
  auto label = parse_suffix(name, "peg");
  if (!label || *label > kPegs) return std::nullopt;
  return *label - 1;
}

Facts dynamic_facts(const HanoiState& state) {
  const int n = state.n_disks();
  Facts facts;
  for (int peg = 0; peg < kPegs; ++peg) {
    std::string below = peg_name(peg);
    for (int disk : state.stack(peg)) {
      std::string here = disc_name(disk, n);
      facts.insert({"on", {here, below}});
      below = std::move(here);
    }
    facts.insert({"clear", {below}});
  }
  return facts;
}

Facts state_to_predicates(const HanoiState& state) {
  const int n = state.n_disks();
  Facts facts = dynamic_facts(state);
  for (int peg = 0; peg < kPegs; ++peg) {
    for (int d = 0; d < n; ++d) facts.insert({"smaller", {peg_name(peg), disc_name(d, n)}});
  }
  for (int big = 0; big < n; ++big) {
    for (int small = big + 1; small < n; ++small) {
      facts.insert({"smaller", {disc_name(big, n), disc_name(small, n)}});
    }
  }
  return facts;
}

HanoiState predicates_to_state(const Facts& facts, int n_disks) {
  std::map<std::string, std::string> support;
  for (const auto& p : facts) {
    if (p.name != "on") continue;
    if (!support.emplace(p.args[0], p.args[1]).second) {
      throw MalformedEncoding(p.args[0] + " rests on more than one object");
    }
  }
  std::vector<int> pegs(static_cast<std::size_t>(n_disks));
  for (int d = 0; d < n_disks; ++d) {
    std::string at = disc_name(d, n_disks);
    for (int hops = 0;; ++hops) {
      auto it = support.find(at);
      if (it == support.end() || hops > n_disks) {
        throw MalformedEncoding(disc_name(d, n_disks) + " is not supported by a peg");
      }
      at = it->second;
      if (auto peg = peg_index(at)) {
        pegs[static_cast<std::size_t>(d)] = *peg;
        break;
      }
    }
  }
  HanoiState state(std::move(pegs));
  Facts on_facts;
  for (const auto& p : facts) {
    if (p.name == "on") on_facts.insert(p);
  }
  Facts expected;
  for (const auto& p : dynamic_facts(state)) {
    if (p.name == "on") expected.insert(p);
  }
  if (on_facts != expected) throw MalformedEncoding("on facts do not describe size-ordered stacks");
  return state;
}

// Actions ---------------------------------------------------------------------

std::string to_string(const GroundAction& a) {
  std::string out = a.name;
  for (const auto& arg : a.args) out += " " + arg;
  return out;
}

GroundAction ground_move(const HanoiState& state, const Move& move) {
  const int n = state.n_disks();
  if (move.disk < 0 || move.disk >= n || move.to_peg < 0 || move.to_peg >= kPegs) {
    throw InvalidArgument("move outside the puzzle: " + to_string(move));
  }
  if (state.peg_of(move.disk) != move.from_peg || move.from_peg == move.to_peg) {
    throw InvalidArgument(to_string(move) + " does not match the disc's position");
  }
  auto stack = state.stack(move.from_peg);
  auto pos = std::find(stack.begin(), stack.end(), move.disk);
  std::string from = pos == stack.begin() ? peg_name(move.from_peg) : disc_name(*(pos - 1), n);
  auto top = state.top_disk(move.to_peg);
  std::string to = top ? disc_name(*top, n) : peg_name(move.to_peg);
  return {"move", {disc_name(move.disk, n), std::move(from), std::move(to)}};
}

Move to_move(const HanoiState& state, const GroundAction& action) {
  if (action.name != "move" || action.args.size() != 3) {
    throw InvalidArgument("'" + to_string(action) + "' is not a move(disc, from, to) action");
  }
  auto disk = disc_index(action.args[0], state.n_disks());
  if (!disk) throw InvalidArgument("'" + action.args[0] + "' is not a disc");
  const int from = state.peg_of(*disk);
  for (int to = 0; to < kPegs; ++to) {
    if (to == from) continue;
    Move m{*disk, from, to};
    if (ground_move(state, m) == action) return m;
  }
  throw InvalidArgument("'" + to_string(action) + "' does not match the current state");
}

// Operators -------------------------------------------------------------------

void StripsOperator::validate() const {
  if (!disjoint(gamma, delta)) throw InvalidArgument("operator " + name + " adds and deletes the same literal");
  for (const Facts* part : {&alpha, &beta, &gamma, &delta}) {
    for (const auto& p : *part) {
      for (const auto& a : p.args) {
        if (std::find(parameters.begin(), parameters.end(), a) == parameters.end()) {
          throw InvalidArgument("operator " + name + " uses unbound variable '" + a + "'");
        }
      }
    }
  }
}

Facts bind(const Facts& schema, const std::vector<std::string>& parameters,
           const std::vector<std::string>& objects) {
  Facts out;
  for (const auto& p : schema) {
    Predicate g = p;
    for (auto& a : g.args) {
      auto it = std::find(parameters.begin(), parameters.end(), a);
      if (it != parameters.end()) a = objects.at(static_cast<std::size_t>(it - parameters.begin()));
    }
    out.insert(std::move(g));
  }
  return out;
}

bool applicable(const StripsOperator& op, const Facts& state, const std::vector<std::string>& objects) {
  return subset(bind(op.alpha, op.parameters, objects), state) &&
         disjoint(bind(op.beta, op.parameters, objects), state);
}

Facts apply(const StripsOperator& op, const Facts& state, const std::vector<std::string>& objects) {
  Facts next = difference(state, bind(op.delta, op.parameters, objects));
  for (auto& p : bind(op.gamma, op.parameters, objects)) next.insert(p);
  return next;
}

StripsOperator move_operator() {
  StripsOperator op;
  op.name = "move";
  op.parameters = kMoveParameters;
  op.alpha = {{"clear", {"disc"}}, {"on", {"disc", "from"}}, {"clear", {"to"}}, {"smaller", {"to", "disc"}}};
  op.beta = {{"on", {"from", "disc"}}};
  op.gamma = {{"on", {"disc", "to"}}, {"clear", {"from"}}};
  op.delta = {{"on", {"disc", "from"}}, {"clear", {"to"}}};
  return op;
}

std::string format_operator(const StripsOperator& op) {
  std::string out = "<ACTION> " + op.name;
  for (const auto& p : op.parameters) out += " " + p;
  auto list = [](const Facts& pos, const Facts& neg) {
    std::string s;
    for (const auto& p : pos) s += (s.empty() ? "" : ", ") + to_tokens(p);
    for (const auto& p : neg) s += (s.empty() ? "not " : ", not ") + to_tokens(p);
    return s;
  };
  out += "\n<PRE> " + list(op.alpha, op.beta);
  out += "\n<EFFECT> " + list(op.gamma, op.delta) + "\n";
  return out;
}

// Planning --------------------------------------------------------------------

std::optional<std::vector<GroundAction>> plan_forward(const std::vector<StripsOperator>& domain,
                                                      const Facts& init, const Facts& goal,
                                                      std::size_t max_states) {
  if (subset(goal, init)) return std::vector<GroundAction>{};
  const auto objects = objects_of(init);

  struct Parent {
    const Facts* from;
    GroundAction action;
  };
  std::map<Facts, Parent> seen{{init, {nullptr, {}}}};
  std::deque<const Facts*> frontier{&seen.begin()->first};

  while (!frontier.empty()) {
    const Facts* state = frontier.front();
    frontier.pop_front();
    for (const auto& op : domain) {
      std::optional<std::vector<GroundAction>> found;
      for_each_binding(objects, op.parameters.size(), [&](const std::vector<std::string>& binding) {
        if (found || !applicable(op, *state, binding)) return;
        Facts next = apply(op, *state, binding);
        auto [it, fresh] = seen.emplace(std::move(next), Parent{state, {op.name, binding}});
        if (!fresh) return;
        if (subset(goal, it->first)) {
          std::vector<GroundAction> plan;
          for (const Facts* at = &it->first; seen.at(*at).from; at = seen.at(*at).from) {
            plan.push_back(seen.at(*at).action);
          }
          std::reverse(plan.begin(), plan.end());
          found = std::move(plan);
          return;
        }
        frontier.push_back(&it->first);
      });
      if (found) return found;
    }
    if (seen.size() > max_states) throw CapExceeded("planner exceeded its state budget");
  }
  return std::nullopt;
}

// Example collection -----------------------------------------------------------

namespace {

Example make_example(const HanoiState& s, const Move& m) {
  const bool legal = is_legal(s, m);
  return {state_to_predicates(s), ground_move(s, m), state_to_predicates(legal ? moved(s, m) : s)};
}

}  // namespace

ExampleSet collect_examples(const HanoiMdp& mdp, std::uint64_t budget, std::uint64_t seed) {
  if (budget == 0) throw InvalidArgument("example budget must be positive");
  ExampleSet out;
  if (mdp.n_disks == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_disk(0, mdp.n_disks - 1);
  std::uniform_int_distribution<int> pick_offset(1, kPegs - 1);
  HanoiState s = mdp.initial_state();
  for (std::uint64_t i = 0; i < budget; ++i) {
    const int disk = pick_disk(rng);
    const int from = s.peg_of(disk);
    const Move m{disk, from, (from + pick_offset(rng)) % kPegs};
    if (is_legal(s, m)) {
      out.positives.insert(make_example(s, m));
      s = moved(s, m);
      if (is_goal(s, mdp)) s = mdp.initial_state();
    } else {
      out.negatives.insert(make_example(s, m));
    }
  }
  return out;
}

ExampleSet collect_exhaustive(int n_disks, int cap) {
  ExampleSet out;
  for (const auto& s : enumerate_states(n_disks, cap)) {
    for (int disk = 0; disk < n_disks; ++disk) {
      for (int to = 0; to < kPegs; ++to) {
        if (to == s.peg_of(disk)) continue;
        const Move m{disk, s.peg_of(disk), to};
        (is_legal(s, m) ? out.positives : out.negatives).insert(make_example(s, m));
      }
    }
  }
  return out;
}

// Learning --------------------------------------------------------------------

std::string_view component_name(Component c) noexcept {
  switch (c) {
    case Component::alpha: return "alpha";
    case Component::beta: return "beta";
    case Component::gamma: return "gamma";
    case Component::delta: return "delta";
  }
  return "?";
}

namespace {

struct Lifted {
  Facts pre;
  Facts adds;
  Facts dels;

  Facts next() const {
    Facts out = difference(pre, dels);
    out.insert(adds.begin(), adds.end());
    return out;
  }
};

// Replaces action arguments by parameter names and keeps the literals whose
// arguments are all bound. Effects must lift completely.
Lifted lift(const Example& ex, const std::string& action_name, const std::string& label) {
  const auto& args = ex.action.args;
  if (ex.action.name != action_name) {
    throw LearningError(label + ": action '" + ex.action.name + "' differs from '" + action_name + "'");
  }
  if (args.size() != kMoveParameters.size()) throw LearningError(label + ": expected three action arguments");
  std::map<std::string, std::string> binding;
  const auto objects = objects_of(ex.pre);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!binding.emplace(args[i], kMoveParameters[i]).second) {
      throw LearningError(label + ": argument '" + args[i] + "' is bound to two parameters");
    }
    if (!std::binary_search(objects.begin(), objects.end(), args[i])) {
      throw LearningError(label + ": argument '" + args[i] + "' does not occur in the state");
    }
  }
  auto lift_one = [&](const Predicate& p) -> std::optional<Predicate> {
    Predicate out = p;
    for (auto& a : out.args) {
      auto it = binding.find(a);
      if (it == binding.end()) return std::nullopt;
      a = it->second;
    }
    return out;
  };
  auto lift_all = [&](const Facts& facts, bool strict) {
    Facts out;
    for (const auto& p : facts) {
      if (auto l = lift_one(p)) {
        out.insert(*l);
      } else if (strict) {
        throw LearningError(label + ": effect " + to_string(p) + " mentions an object outside the action");
      }
    }
    return out;
  };
  return {lift_all(ex.pre, false), lift_all(difference(ex.next, ex.pre), true),
          lift_all(difference(ex.pre, ex.next), true)};
}

std::vector<Lifted> lift_set(const std::set<Example>& set, const std::string& action_name, const char* kind) {
  std::vector<Lifted> out;
  std::size_t k = 0;
  for (const auto& ex : set) {
    out.push_back(lift(ex, action_name, std::string(kind) + " example " + std::to_string(k) + " (" +
                                            to_string(ex.action) + ")"));
    ++k;
  }
  return out;
}

bool consistent(Component head, const Facts& body, const Lifted& ex) {
  switch (head) {
    case Component::alpha: return subset(body, ex.pre);
    case Component::beta: return disjoint(body, ex.pre);
    case Component::gamma: return subset(ex.adds, body) && subset(body, ex.next());
    case Component::delta: return subset(ex.dels, body) && disjoint(body, ex.next());
  }
  return false;
}

double weight_over(Component head, const Facts& body, const std::vector<Lifted>& positives) {
  if (positives.empty()) return 0.0;
  auto n = std::count_if(positives.begin(), positives.end(),
                         [&](const Lifted& ex) { return consistent(head, body, ex); });
  return static_cast<double>(n) / static_cast<double>(positives.size());
}

}  // namespace

double rule_weight(Component head, const Facts& body, const ExampleSet& examples) {
  if (examples.positives.empty()) return 0.0;
  return weight_over(head, body, lift_set(examples.positives, examples.positives.begin()->action.name, "positive"));
}

LearnedOperator learn_operator(const ExampleSet& examples) {
  if (examples.positives.empty()) throw InvalidArgument("learning needs at least one positive example");
  for (const auto& ex : examples.negatives) {
    if (examples.positives.contains(ex)) {
      throw LearningError("example (" + to_string(ex.action) + ") is both positive and negative");
    }
  }
  const std::string name = examples.positives.begin()->action.name;
  const auto pos = lift_set(examples.positives, name, "positive");
  const auto neg = lift_set(examples.negatives, name, "negative");

  StripsOperator op;
  op.name = name;
  op.parameters = kMoveParameters;

  op.alpha = pos.front().pre;
  Facts seen_in_positive;
  for (const auto& ex : pos) {
    op.alpha = intersection(op.alpha, ex.pre);
    seen_in_positive.insert(ex.pre.begin(), ex.pre.end());
    op.gamma.insert(ex.adds.begin(), ex.adds.end());
    op.delta.insert(ex.dels.begin(), ex.dels.end());
  }

  // Literals every negative shares cannot discriminate; those the effects
  // delete stay, since deleting them presupposes them.
  if (!neg.empty()) {
    Facts common = neg.front().pre;
    for (const auto& ex : neg) common = intersection(common, ex.pre);
    op.alpha = difference(op.alpha, difference(common, op.delta));
  }

  // Negatives still admitted by alpha must be blocked by a literal no positive has.
  std::vector<Facts> blockers;
  for (std::size_t k = 0; k < neg.size(); ++k) {
    if (!subset(op.alpha, neg[k].pre)) continue;
    Facts candidates = difference(neg[k].pre, seen_in_positive);
    if (candidates.empty()) {
      throw LearningError("negative example " + std::to_string(k) + " is indistinguishable from a positive one");
    }
    blockers.push_back(std::move(candidates));
  }
  while (!blockers.empty()) {
    std::map<Predicate, int> cover;
    for (const auto& b : blockers) {
      for (const auto& p : b) ++cover[p];
    }
    auto best = std::max_element(cover.begin(), cover.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; });
    op.beta.insert(best->first);
    std::erase_if(blockers, [&](const Facts& b) { return b.contains(best->first); });
  }
  op.validate();

  LearnedOperator out{op, {}};
  for (auto [c, body] : {std::pair{Component::alpha, &op.alpha}, std::pair{Component::beta, &op.beta},
                         std::pair{Component::gamma, &op.gamma}, std::pair{Component::delta, &op.delta}}) {
    out.rules.push_back({c, *body, weight_over(c, *body, pos)});
  }
  return out;
}

StripsOperator prune_entailed(const StripsOperator& op, int n_disks) {
  std::vector<Facts> states;
  for (const auto& s : enumerate_states(n_disks)) states.push_back(state_to_predicates(s));
  const auto objects = objects_of(states.front());

  // True if `literal` holds (or fails, for beta) whenever `candidate` applies.
  auto implied = [&](const StripsOperator& candidate, const Predicate& literal, bool must_hold) {
    bool ok = true;
    for (const auto& facts : states) {
      for_each_binding(objects, candidate.parameters.size(), [&](const std::vector<std::string>& b) {
        if (!ok || !applicable(candidate, facts, b)) return;
        bool holds = facts.contains(*bind({literal}, candidate.parameters, b).begin());
        if (holds != must_hold) ok = false;
      });
      if (!ok) break;
    }
    return ok;
  };

  StripsOperator out = op;
  for (const auto& literal : op.alpha) {
    StripsOperator trial = out;
    trial.alpha.erase(literal);
    if (implied(trial, literal, true)) out = std::move(trial);
  }
  for (const auto& literal : op.beta) {
    StripsOperator trial = out;
    trial.beta.erase(literal);
    if (implied(trial, literal, false)) out = std::move(trial);
  }
  return out;
}

}  // namespace hanoi::strips
