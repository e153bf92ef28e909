#include "hanoi/plan_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "hanoi/error.hpp"

namespace hanoi::planio {

namespace {

// Lexer ---------------------------------------------------------------------------

struct Token {
  enum Kind { section, word, comma, end } kind = end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (c == ',') {
      t.kind = Token::comma;
      t.text = ",";
      advance();
    } else if (c == '<') {
      std::size_t close = text.find('>', i);
      std::size_t newline = text.find('\n', i);
      if (close == std::string_view::npos || close > newline) throw ParseError(line, col, "unterminated section marker");
      t.kind = Token::section;
      t.text = std::string(text.substr(i + 1, close - i - 1));
      while (i <= close) advance();
    } else {
      t.kind = Token::word;
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',' &&
             text[i] != '<') {
        t.text += text[i];
        advance();
      }
    }
    out.push_back(std::move(t));
  }
  Token eof;
  eof.line = line;
  eof.column = col;
  out.push_back(eof);
  return out;
}

// Parser --------------------------------------------------------------------------

class Parser {
public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  ProblemDocument document() {
    ProblemDocument doc;
    expect_section("GOAL");
    doc.goal = predicates(false);
    expect_section("INIT");
    doc.init = predicates(false);
    if (peek().kind == Token::end) throw error(peek(), "missing <ACTION> section");
    while (peek().kind != Token::end) doc.actions.push_back(action());
    return doc;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  static ParseError error(const Token& t, const std::string& message) { return {t.line, t.column, message}; }

  void expect_section(const std::string& name) {
    const Token& t = peek();
    if (t.kind != Token::section || t.text != name) {
      if (t.kind == Token::section && !is_known(t.text)) throw error(t, "unknown section <" + t.text + ">");
      throw error(t, "missing <" + name + "> section");
    }
    ++pos_;
  }

  static bool is_known(const std::string& name) {
    return name == "GOAL" || name == "INIT" || name == "ACTION" || name == "PRE" || name == "EFFECT";
  }

  std::vector<Literal> literals(bool allow_not) {
    std::vector<Literal> out;
    if (peek().kind != Token::word) {
      if (peek().kind == Token::comma) throw error(peek(), "expected a predicate before ','");
      return out;
    }
    while (true) {
      out.push_back(literal(allow_not));
      if (peek().kind != Token::comma) break;
      ++pos_;
      if (peek().kind != Token::word) throw error(peek(), "expected a predicate after ','");
    }
    if (peek().kind == Token::section && !is_known(peek().text)) {
      throw error(peek(), "unknown section <" + peek().text + ">");
    }
    return out;
  }

  std::vector<Predicate> predicates(bool allow_not) {
    std::vector<Predicate> out;
    for (auto& l : literals(allow_not)) out.push_back(std::move(l.predicate));
    return out;
  }

  Literal literal(bool allow_not) {
    Literal l;
    const Token* head = &next();
    if (head->text == "not") {
      if (!allow_not) throw error(*head, "negation is only allowed in <PRE> and <EFFECT>");
      l.negated = true;
      if (peek().kind != Token::word) throw error(peek(), "expected a predicate after 'not'");
      head = &next();
    }
    auto expected = strips::arity(head->text);
    if (!expected) throw error(*head, "unknown predicate '" + head->text + "'");
    std::vector<std::string> args;
    while (peek().kind == Token::word) args.push_back(next().text);
    if (args.size() != *expected) {
      throw error(*head, head->text + " takes " + std::to_string(*expected) + " arguments, got " +
                             std::to_string(args.size()));
    }
    l.predicate = Predicate(head->text, std::move(args));
    return l;
  }

  ActionSchema action() {
    const Token& header = peek();
    expect_section("ACTION");
    ActionSchema a;
    if (peek().kind != Token::word) throw error(peek(), "<ACTION> needs a name");
    a.name = next().text;
    while (peek().kind == Token::word) a.parameters.push_back(next().text);
    if (peek().kind == Token::comma) throw error(peek(), "unexpected ',' in <ACTION> header");
    a.explicit_parameters = !a.parameters.empty();
    expect_section("PRE");
    a.pre = literals(true);
    expect_section("EFFECT");
    a.effect = literals(true);
    if (peek().kind != Token::end && !(peek().kind == Token::section && peek().text == "ACTION")) {
      if (peek().kind == Token::section) throw error(peek(), "unexpected <" + peek().text + "> section");
      throw error(peek(), "unexpected '" + peek().text + "'");
    }

    std::vector<std::string> used;
    for (const auto* list : {&a.pre, &a.effect}) {
      for (const auto& l : *list) {
        for (const auto& arg : l.predicate.args) {
          if (std::find(used.begin(), used.end(), arg) == used.end()) used.push_back(arg);
        }
      }
    }
    if (a.explicit_parameters) {
      std::set<std::string> declared(a.parameters.begin(), a.parameters.end());
      if (declared.size() != a.parameters.size()) throw error(header, "repeated parameter in <ACTION> " + a.name);
      for (const auto& v : used) {
        if (!declared.contains(v)) throw error(header, "variable '" + v + "' is not a parameter of " + a.name);
      }
    } else if (std::set<std::string>(used.begin(), used.end()) == std::set<std::string>{"disc", "from", "to"}) {
      a.parameters = {"disc", "from", "to"};
    } else {
      a.parameters = used;
    }
    return a;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<Literal>& list) {
  std::string s;
  for (const auto& l : list) {
    if (!s.empty()) s += ", ";
    if (l.negated) s += "not ";
    s += strips::to_tokens(l.predicate);
  }
  return s;
}

std::vector<Literal> positive(const std::vector<Predicate>& ps) {
  std::vector<Literal> out;
  for (const auto& p : ps) out.push_back({p, false});
  return out;
}

}  // namespace

ProblemDocument parse_problem(std::string_view text) { return Parser(text).document(); }

std::string emit_problem(const ProblemDocument& doc) {
  std::string out = "<GOAL> " + join(positive(doc.goal)) + "\n<INIT> " + join(positive(doc.init)) + "\n";
  for (const auto& a : doc.actions) {
    out += "<ACTION> " + a.name;
    if (a.explicit_parameters) {
      for (const auto& p : a.parameters) out += " " + p;
    }
    out += "\n<PRE> " + join(a.pre) + "\n<EFFECT> " + join(a.effect) + "\n";
  }
  return out;
}

strips::StripsOperator to_operator(const ActionSchema& action) {
  strips::StripsOperator op;
  op.name = action.name;
  op.parameters = action.parameters;
  for (const auto& l : action.pre) (l.negated ? op.beta : op.alpha).insert(l.predicate);
  for (const auto& l : action.effect) (l.negated ? op.delta : op.gamma).insert(l.predicate);
  op.validate();
  return op;
}

ActionSchema from_operator(const strips::StripsOperator& op) {
  ActionSchema a;
  a.name = op.name;
  a.parameters = op.parameters;
  a.explicit_parameters = true;
  for (const auto& p : op.alpha) a.pre.push_back({p, false});
  for (const auto& p : op.beta) a.pre.push_back({p, true});
  for (const auto& p : op.gamma) a.effect.push_back({p, false});
  for (const auto& p : op.delta) a.effect.push_back({p, true});
  return a;
}

ProblemDocument make_problem(const HanoiMdp& mdp, std::optional<HanoiState> start) {
  ProblemDocument doc;
  for (const auto& p : strips::dynamic_facts(mdp.goal_state())) doc.goal.push_back(p);
  for (const auto& p : strips::state_to_predicates(start.value_or(mdp.initial_state()))) doc.init.push_back(p);
  doc.actions.push_back(from_operator(strips::move_operator()));
  return doc;
}

// Plans ------------------------------------------------------------------------------

PlanDocument parse_plan(std::string_view text) {
  PlanDocument plan;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream fields(line);
    GroundAction a;
    if (!(fields >> a.name)) continue;
    for (std::string arg; fields >> arg;) a.args.push_back(arg);
    plan.steps.push_back(std::move(a));
  }
  return plan;
}

std::string emit_plan(const PlanDocument& plan) {
  std::string out;
  for (const auto& s : plan.steps) out += strips::to_string(s) + "\n";
  return out;
}

PlanDocument plan_from_moves(const HanoiState& start, std::span<const Move> moves) {
  PlanDocument plan;
  HanoiState s = start;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!is_legal(s, moves[i])) throw PlanValidationError(i, "illegal " + to_string(moves[i]));
    plan.steps.push_back(strips::ground_move(s, moves[i]));
    s = moved(s, moves[i]);
  }
  return plan;
}

ValidationVerdict validate_plan(const ProblemDocument& doc, const PlanDocument& plan,
                                std::optional<std::size_t> optimal_length) {
  ValidationVerdict v;
  auto fail = [&](std::size_t i, std::string reason) {
    v.failing_step = FailingStep{i, std::move(reason)};
    return v;
  };
  strips::Facts state(doc.init.begin(), doc.init.end());
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& step = plan.steps[i];
    auto it = std::find_if(doc.actions.begin(), doc.actions.end(),
                           [&](const ActionSchema& a) { return a.name == step.name; });
    if (it == doc.actions.end()) return fail(i, "unknown action '" + step.name + "'");
    if (step.args.size() != it->parameters.size()) {
      return fail(i, step.name + " takes " + std::to_string(it->parameters.size()) + " arguments, got " +
                         std::to_string(step.args.size()));
    }
    auto ground = [&](const Predicate& p) {
      return *strips::bind({p}, it->parameters, step.args).begin();
    };
    for (const auto& l : it->pre) {
      Predicate g = ground(l.predicate);
      if (state.contains(g) == l.negated) {
        return fail(i, std::string("precondition ") + (l.negated ? "not " : "") + strips::to_string(g) +
                           " does not hold");
      }
    }
    for (const auto& l : it->effect) {
      if (l.negated) state.erase(ground(l.predicate));
    }
    for (const auto& l : it->effect) {
      if (!l.negated) state.insert(ground(l.predicate));
    }
  }
  for (const auto& g : doc.goal) {
    if (!state.contains(g)) return fail(plan.steps.size(), "goal " + strips::to_string(g) + " is not reached");
  }
  v.valid = true;
  if (optimal_length) {
    v.optimal = plan.steps.size() == *optimal_length;
    v.optimality_ratio = plan.steps.empty() ? 1.0
                                            : static_cast<double>(*optimal_length) /
                                                  static_cast<double>(plan.steps.size());
  }
  return v;
}

std::optional<std::size_t> optimal_plan_length(const ProblemDocument& doc) {
  std::vector<strips::StripsOperator> domain;
  for (const auto& a : doc.actions) domain.push_back(to_operator(a));
  auto plan = strips::plan_forward(domain, {doc.init.begin(), doc.init.end()}, {doc.goal.begin(), doc.goal.end()});
  if (!plan) return std::nullopt;
  return plan->size();
}

// Metrics ----------------------------------------------------------------------------

std::vector<std::string> tokenize(const PlanDocument& plan) {
  std::vector<std::string> out;
  for (const auto& s : plan.steps) {
    out.push_back(s.name);
    out.insert(out.end(), s.args.begin(), s.args.end());
  }
  return out;
}

double rouge_l(std::span<const std::string> reference, std::span<const std::string> candidate) {
  if (reference.empty() && candidate.empty()) return 1.0;
  if (reference.empty() || candidate.empty()) return 0.0;
  std::vector<std::size_t> prev(candidate.size() + 1, 0), cur(candidate.size() + 1, 0);
  for (const auto& r : reference) {
    for (std::size_t j = 1; j <= candidate.size(); ++j) {
      cur[j] = r == candidate[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  const double lcs = static_cast<double>(prev.back());
  if (lcs == 0.0) return 0.0;
  const double precision = lcs / static_cast<double>(candidate.size());
  const double recall = lcs / static_cast<double>(reference.size());
  return 2.0 * precision * recall / (precision + recall);
}

double bleu(std::span<const std::string> reference, std::span<const std::string> candidate, int max_n) {
  if (max_n < 1) throw InvalidArgument("bleu needs max_n >= 1");
  if (candidate.empty()) return reference.empty() ? 1.0 : 0.0;
  using Gram = std::vector<std::string>;
  auto grams = [](std::span<const std::string> seq, std::size_t n) {
    std::map<Gram, std::size_t> counts;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) ++counts[Gram(seq.begin() + i, seq.begin() + i + n)];
    return counts;
  };
  double log_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= max_n; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (reference.size() < un) continue;  // no reference n-grams
    if (candidate.size() < un) return 0.0;
    auto ref = grams(reference, un);
    std::size_t clipped = 0;
    for (const auto& [g, c] : grams(candidate, un)) {
      auto it = ref.find(g);
      if (it != ref.end()) clipped += std::min(c, it->second);
    }
    if (clipped == 0) return 0.0;
    log_sum += std::log(static_cast<double>(clipped) / static_cast<double>(candidate.size() - un + 1));
    ++orders;
  }
  if (orders == 0) return 0.0;
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double brevity = c > r ? 1.0 : std::exp(1.0 - r / c);
  return brevity * std::exp(log_sum / orders);
}

// Corpus -------------------------------------------------------------------------------

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t CorpusReport::errors() const noexcept {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](auto& e) { return e.error.has_value(); }));
}
std::size_t CorpusReport::valid() const noexcept {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](auto& e) { return e.valid; }));
}
std::size_t CorpusReport::optimal() const noexcept {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](auto& e) { return e.optimal; }));
}
double CorpusReport::validity_percent() const noexcept {
  return entries.empty() ? 0.0 : 100.0 * static_cast<double>(valid()) / static_cast<double>(count());
}
double CorpusReport::optimality_percent() const noexcept {
  return entries.empty() ? 0.0 : 100.0 * static_cast<double>(optimal()) / static_cast<double>(count());
}

namespace {

std::optional<double> mean_of(const std::vector<CorpusEntry>& entries, std::optional<double> CorpusEntry::*field) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& e : entries) {
    if (e.*field) {
      sum += *(e.*field);
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

std::string csv_field(std::string s) {
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

std::optional<double> CorpusReport::mean_rouge_l() const noexcept { return mean_of(entries, &CorpusEntry::rouge_l); }
std::optional<double> CorpusReport::mean_bleu() const noexcept { return mean_of(entries, &CorpusEntry::bleu); }

void CorpusReport::write_csv(std::ostream& os) const {
  os << "name,status,valid,optimal,plan_length,optimal_length,failing_step,reason,rouge_l,bleu\n";
  for (const auto& e : entries) {
    os << csv_field(e.name) << ',' << (e.error ? "error" : "ok") << ',' << e.valid << ',' << e.optimal << ','
       << opt(e.plan_length) << ',' << opt(e.optimal_length) << ','
       << (e.failing_step ? std::to_string(e.failing_step->index) : "") << ','
       << csv_field(e.error ? *e.error : e.failing_step ? e.failing_step->reason : "") << ',' << opt(e.rouge_l)
       << ',' << opt(e.bleu) << '\n';
  }
}

void CorpusReport::write_summary_csv(std::ostream& os) const {
  os << "files,errors,valid,optimal,validity_percent,optimality_percent,mean_rouge_l,mean_bleu\n";
  os << count() << ',' << errors() << ',' << valid() << ',' << optimal() << ',' << validity_percent() << ','
     << optimality_percent() << ',' << opt(mean_rouge_l()) << ',' << opt(mean_bleu()) << '\n';
}

CorpusReport score_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InvalidArgument(dir.string() + " is not a directory");
  const std::string ext = ".hanoi-problem";
  std::vector<std::string> stems;
  for (const auto& f : fs::directory_iterator(dir)) {
    const std::string name = f.path().filename().string();
    if (f.is_regular_file() && name.size() > ext.size() && name.ends_with(ext)) {
      stems.push_back(name.substr(0, name.size() - ext.size()));
    }
  }
  std::sort(stems.begin(), stems.end());

  CorpusReport report;
  for (const auto& stem : stems) {
    CorpusEntry e;
    e.name = stem;
    try {
      auto doc = parse_problem(read_file(dir / (stem + ext)));
      auto plan = parse_plan(read_file(dir / (stem + ".hanoi-plan")));
      std::optional<PlanDocument> ref;
      if (fs::exists(dir / (stem + ".ref.hanoi-plan"))) ref = parse_plan(read_file(dir / (stem + ".ref.hanoi-plan")));
      try {
        e.optimal_length = optimal_plan_length(doc);
      } catch (const CapExceeded&) {
        if (ref && validate_plan(doc, *ref).valid) e.optimal_length = ref->steps.size();
      }
      auto verdict = validate_plan(doc, plan, e.optimal_length);
      e.valid = verdict.valid;
      e.optimal = verdict.optimal;
      e.plan_length = plan.steps.size();
      e.failing_step = verdict.failing_step;
      if (ref) {
        auto rt = tokenize(*ref);
        auto ct = tokenize(plan);
        e.rouge_l = rouge_l(rt, ct);
        e.bleu = bleu(rt, ct);
      }
    } catch (const Error& err) {
      e = CorpusEntry{};
      e.name = stem;
      e.error = err.what();
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace hanoi::planio
