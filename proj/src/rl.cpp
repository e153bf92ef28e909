#include "hanoi/rl.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "hanoi/error.hpp"

namespace hanoi {

namespace {

Eigen::VectorXd to_vector(const BitVector& bits) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) v(static_cast<Eigen::Index>(i)) = bits[i];
  return v;
}

Eigen::MatrixXd state_columns(std::span<const TransitionSample* const> batch, bool successor) {
  const auto rows = static_cast<Eigen::Index>(batch.front()->s.size());
  Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto& bits = successor ? batch[j]->s_next : batch[j]->s;
    for (Eigen::Index i = 0; i < rows; ++i) m(i, static_cast<Eigen::Index>(j)) = bits[static_cast<std::size_t>(i)];
  }
  return m;
}

int argmax_action(const Eigen::VectorXd& q, const HanoiState* legal_in) {
  int best = -1;
  for (int a = 0; a < kActionCount; ++a) {
    if (legal_in && !action_legal(*legal_in, a)) continue;
    if (best < 0 || q(a) > q(best)) best = a;
  }
  return best;
}

std::vector<int> legal_actions(const HanoiState& s) {
  std::vector<int> out;
  for (int a = 0; a < kActionCount; ++a) {
    if (action_legal(s, a)) out.push_back(a);
  }
  return out;
}

/// Online/target pair with an Adam optimiser; one squared-TD step per call.
class QLearner {
public:
  QLearner(int n_disks, const AgentConfig& cfg, Rng& rng)
      : online_(n_disks, cfg.hidden_units, rng),
        target_(online_),
        opt_(online_.mlp().params(), cfg.learning_rate),
        cfg_(cfg) {}

  const QNetwork& online() const noexcept { return online_; }

  double update(std::span<const TransitionSample* const> batch, bool legal_only) {
    const Eigen::MatrixXd x = state_columns(batch, false);
    Mlp<double>::Cache cache;
    const Eigen::MatrixXd& q = online_.mlp().forward(x, cache);
    const Eigen::VectorXd y =
        td_targets(online_, target_, batch, cfg_.discount, TargetRule::double_q, legal_only);

    const auto b = static_cast<double>(batch.size());
    Eigen::MatrixXd d_out = Eigen::MatrixXd::Zero(q.rows(), q.cols());
    double loss = 0.0;
    for (std::size_t j = 0; j < batch.size(); ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      const double diff = q(batch[j]->a, col) - y(col);
      loss += diff * diff;
      d_out(batch[j]->a, col) = 2.0 * diff / b;
    }
    auto grads = online_.mlp().gradients(x, cache, d_out);
    opt_.step(online_.mlp().params(), grads);
    if (++updates_ % cfg_.target_sync == 0) target_ = online_;
    return loss / b;
  }

private:
  QNetwork online_;
  QNetwork target_;
  Adam<double> opt_;
  const AgentConfig& cfg_;
  long updates_ = 0;
};

class BackwardLearner {
public:
  BackwardLearner(int n_disks, const AgentConfig& cfg, Rng& rng)
      : model_(n_disks, cfg.backward_hidden_units, rng),
        opt_(model_.mlp().params(), cfg.backward_learning_rate) {}

  const BackwardModel& model() const noexcept { return model_; }

  /// One cross-entropy step on the given (state-changing) samples.
  double update(std::span<const TransitionSample* const> batch) {
    const auto rows = static_cast<Eigen::Index>(batch.front()->s.size());
    const auto cols = static_cast<Eigen::Index>(batch.size());
    Eigen::MatrixXd x(rows + kActionCount, cols);
    Eigen::MatrixXd t(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& sample = *batch[static_cast<std::size_t>(j)];
      x.col(j) = backward_input(sample.s_next, sample.a);
      t.col(j) = to_vector(sample.s);
    }
    Mlp<double>::Cache cache;
    const Eigen::MatrixXd& p = model_.mlp().forward(x, cache);
    Eigen::MatrixXd d_out = (p - t) / static_cast<double>(cols);
    auto grads = model_.mlp().gradients(x, cache, d_out);
    opt_.step(model_.mlp().params(), grads);
    constexpr double eps = 1e-12;
    double ce = -(t.array() * (p.array() + eps).log() +
                  (1.0 - t.array()) * (1.0 - p.array() + eps).log())
                     .mean();
    return ce;
  }

private:
  BackwardModel model_;
  Adam<double> opt_;
};

/// Walks backwards from the goal, emitting imagined transitions.
class Imaginer {
public:
  Imaginer(const HanoiMdp& mdp, const AgentConfig& cfg)
      : mdp_(mdp), cfg_(cfg), cur_(mdp.goal_state()), observed_(state_count(mdp.n_disks), 0) {}

  /// Records that `action` led into `s_next` in real experience.
  void observe(const BitVector& s_next, int action) {
    observed_[state_index(decode_bits(s_next))] |= static_cast<std::uint8_t>(1U << action);
  }

  std::optional<TransitionSample> step(const BackwardModel* model, Rng& rng) {
    if (depth_ >= cfg_.backward_horizon) reset();
    std::optional<std::pair<HanoiState, int>> pred;
    if (cfg_.generator == BackwardGenerator::exact) {
      auto options = exact_predecessors(cur_);
      if (!options.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
        pred = options[pick(rng)];
      }
    } else {
      // Only reverse actions that real experience has shown can lead into cur_.
      std::vector<int> candidates;
      const auto mask = observed_[state_index(cur_)];
      for (int a = 0; a < kActionCount; ++a) {
        if (mask & (1U << a)) candidates.push_back(a);
      }
      if (!candidates.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        int a = candidates[pick(rng)];
        auto s = model->predict_state(encode_bits(cur_), a, cfg_.snap_margin);
        if (s && *s != cur_) pred = std::make_pair(*s, a);
      }
    }
    if (!pred) {
      reset();
      return std::nullopt;
    }
    const bool done = is_goal(cur_, mdp_);
    TransitionSample sample{encode_bits(pred->first), pred->second,
                            mdp_.reward.legal_reward(done), encode_bits(cur_), done,
                            SampleOrigin::imagined};
    cur_ = pred->first;
    ++depth_;
    if (is_goal(cur_, mdp_)) reset();
    return sample;
  }

private:
  void reset() {
    cur_ = mdp_.goal_state();
    depth_ = 0;
  }

  const HanoiMdp& mdp_;
  const AgentConfig& cfg_;
  HanoiState cur_;
  int depth_ = 0;
  std::vector<std::uint8_t> observed_;  // per state index: bitmask of actions seen leading into it
};

std::vector<const TransitionSample*> gather(const ReplayBuffer& buf, std::span<const std::size_t> idx) {
  std::vector<const TransitionSample*> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(&buf[i]);
  return out;
}

double imagined_fraction(const ReplayBuffer& buf) {
  return buf.size() == 0 ? 0.0
                         : static_cast<double>(buf.count(SampleOrigin::imagined)) /
                               static_cast<double>(buf.size());
}

TrainingResult train(const HanoiMdp& mdp, const AgentConfig& cfg, bool forward_backward) {
  cfg.validate();
  if (mdp.n_disks < 1) throw InvalidArgument("training needs at least one disk");
  Rng rng(cfg.seed);
  const bool legal_only = !mdp.reward.allows_invalid();

  QLearner learner(mdp.n_disks, cfg, rng);
  std::optional<BackwardLearner> backward;
  std::optional<Imaginer> imaginer;
  if (forward_backward) {
    backward.emplace(mdp.n_disks, cfg, rng);
    imaginer.emplace(mdp, cfg);
  }
  ReplayBuffer buffer(static_cast<std::size_t>(cfg.buffer_capacity));
  const auto batch = static_cast<std::size_t>(cfg.batch_size);

  TrainingResult result;
  TrainingLog& log = result.log;
  log.step_rewards.reserve(static_cast<std::size_t>(cfg.max_steps));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  HanoiState state = mdp.initial_state();
  int episode = 0;
  int episode_steps = 0;
  double episode_return = 0.0;

  for (int step = 0; step < cfg.max_steps; ++step) {
    int action;
    if (unit(rng) < cfg.epsilon_at(step)) {
      if (legal_only) {
        auto legal = legal_actions(state);
        std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
        action = legal[pick(rng)];
      } else {
        std::uniform_int_distribution<int> pick(0, kActionCount - 1);
        action = pick(rng);
      }
    } else {
      action = argmax_action(learner.online().q_values(encode_bits(state)),
                             legal_only ? &state : nullptr);
    }

    Transition t = step_action(mdp, state, action);
    buffer.push({encode_bits(state), action, t.reward, encode_bits(t.next), t.done, SampleOrigin::real});
    ++result.real_samples;
    if (imaginer && t.legal) imaginer->observe(encode_bits(t.next), action);
    log.step_rewards.push_back(t.reward);
    episode_return += t.reward;
    ++episode_steps;

    bool logged = false;
    if (buffer.count(SampleOrigin::real) >= static_cast<std::size_t>(cfg.learning_starts)) {
      auto idx = buffer.sample(batch, rng, SampleOrigin::real);
      auto ptrs = gather(buffer, idx);
      double loss = learner.update(ptrs, legal_only);
      log.rows.push_back({step, episode, t.reward, UpdatePhase::forward, loss, imagined_fraction(buffer)});
      logged = true;

      if (forward_backward) {
        std::vector<const TransitionSample*> changed;
        for (auto* p : ptrs) {
          if (p->s != p->s_next) changed.push_back(p);
        }
        if (!changed.empty() && cfg.generator == BackwardGenerator::learned) backward->update(changed);

        if (step >= cfg.backward_warmup) {
          if (auto imagined = imaginer->step(&backward->model(), rng)) {
            buffer.push(std::move(*imagined));
            ++result.imagined_samples;
          }
          if (buffer.count(SampleOrigin::imagined) > 0) {
            auto bidx = buffer.sample(batch, rng, SampleOrigin::imagined);
            double bloss = learner.update(gather(buffer, bidx), legal_only);
            log.rows.push_back({step, episode, t.reward, UpdatePhase::backward, bloss, imagined_fraction(buffer)});
          }
        }
      }
    }
    if (!logged) log.rows.push_back({step, episode, t.reward, UpdatePhase::none, 0.0, imagined_fraction(buffer)});

    state = t.next;
    if (t.done || episode_steps >= cfg.max_episode_steps) {
      log.episode_returns.push_back(episode_return);
      ++episode;
      episode_steps = 0;
      episode_return = 0.0;
      state = mdp.initial_state();
    }
  }
  result.net = learner.online();
  return result;
}

}  // namespace

int action_index(int from_peg, int to_peg) {
  for (int a = 0; a < kActionCount; ++a) {
    if (kActionPegs[static_cast<std::size_t>(a)] == std::pair{from_peg, to_peg}) return a;
  }
  throw InvalidArgument("no action for peg pair");
}

std::optional<Move> action_move(const HanoiState& state, int action) {
  if (action < 0 || action >= kActionCount) throw InvalidArgument("action index out of range");
  auto [from, to] = kActionPegs[static_cast<std::size_t>(action)];
  auto disk = state.top_disk(from);
  if (!disk) return std::nullopt;
  return Move{*disk, from, to};
}

bool action_legal(const HanoiState& state, int action) {
  auto m = action_move(state, action);
  return m && is_legal(state, *m);
}

Transition step_action(const HanoiMdp& mdp, const HanoiState& state, int action) {
  auto m = action_move(state, action);
  if (!m) {
    if (!mdp.reward.allows_invalid()) throw IllegalMove("action from an empty peg");
    return {state, mdp.reward.invalid_reward, false, false};
  }
  return apply(mdp, state, *m);
}

// ReplayBuffer ----------------------------------------------------------------

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw InvalidArgument("replay buffer capacity must be positive");
  data_.reserve(capacity);
  position_.reserve(capacity);
}

void ReplayBuffer::push(TransitionSample sample) {
  const std::size_t cls = slot_class(sample.origin);
  std::size_t slot;
  if (data_.size() < capacity_) {
    slot = data_.size();
    data_.push_back(std::move(sample));
    position_.push_back(0);
  } else {
    slot = next_;
    // Evict the oldest entry from its class list (swap-remove).
    auto& old_list = slots_[slot_class(data_[slot].origin)];
    const std::size_t pos = position_[slot];
    old_list[pos] = old_list.back();
    position_[old_list[pos]] = pos;
    old_list.pop_back();
    data_[slot] = std::move(sample);
  }
  position_[slot] = slots_[cls].size();
  slots_[cls].push_back(slot);
  next_ = (slot + 1) % capacity_;
}

std::vector<std::size_t> ReplayBuffer::sample(std::size_t batch, Rng& rng,
                                              std::optional<SampleOrigin> only) const {
  std::vector<std::size_t> out;
  out.reserve(batch);
  if (only) {
    const auto& list = slots_[slot_class(*only)];
    if (list.empty()) throw InvalidArgument("no samples of the requested origin");
    std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
    for (std::size_t i = 0; i < batch; ++i) out.push_back(list[pick(rng)]);
  } else {
    if (data_.empty()) throw InvalidArgument("replay buffer is empty");
    std::uniform_int_distribution<std::size_t> pick(0, data_.size() - 1);
    for (std::size_t i = 0; i < batch; ++i) out.push_back(pick(rng));
  }
  return out;
}

// Networks --------------------------------------------------------------------

QNetwork::QNetwork(int n_disks, int hidden, Rng& rng)
    : n_disks_(n_disks), mlp_(kPegs * n_disks, hidden, kActionCount, OutputActivation::linear, rng) {}

Eigen::VectorXd QNetwork::q_values(const BitVector& bits) const {
  if (static_cast<int>(bits.size()) != kPegs * n_disks_) throw InvalidArgument("state width mismatch");
  return mlp_.forward(to_vector(bits)).col(0);
}

BackwardModel::BackwardModel(int n_disks, int hidden, Rng& rng)
    : n_disks_(n_disks),
      mlp_(kPegs * n_disks + kActionCount, hidden, kPegs * n_disks, OutputActivation::sigmoid, rng) {}

Eigen::VectorXd backward_input(const BitVector& s_next, int action) {
  if (action < 0 || action >= kActionCount) throw InvalidArgument("action index out of range");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s_next.size()) + kActionCount);
  x.head(static_cast<Eigen::Index>(s_next.size())) = to_vector(s_next);
  x(static_cast<Eigen::Index>(s_next.size()) + action) = 1.0;
  return x;
}

Eigen::VectorXd BackwardModel::predict(const BitVector& s_next, int action) const {
  if (static_cast<int>(s_next.size()) != kPegs * n_disks_) throw InvalidArgument("state width mismatch");
  return mlp_.forward(backward_input(s_next, action)).col(0);
}

std::optional<HanoiState> BackwardModel::predict_state(const BitVector& s_next, int action,
                                                      double margin) const {
  return snap_predecessor(predict(s_next, action), margin);
}

std::optional<HanoiState> snap_predecessor(const Eigen::VectorXd& probs, double margin) {
  if (probs.size() % kPegs != 0) throw InvalidArgument("probability vector width is not a multiple of 3");
  std::vector<int> pegs;
  for (Eigen::Index g = 0; g < probs.size() / kPegs; ++g) {
    Eigen::Vector3d p = probs.segment<3>(g * kPegs);
    int on = 0;
    int hot = 0;
    for (int i = 0; i < kPegs; ++i) {
      if (p(i) >= 0.5) {
        ++on;
        hot = i;
      }
    }
    if (on != 1) {
      Eigen::Index best;
      double top = p.maxCoeff(&best);
      double second = -1.0;
      for (int i = 0; i < kPegs; ++i) {
        if (i != best) second = std::max(second, p(i));
      }
      if (top - second < margin) return std::nullopt;
      hot = static_cast<int>(best);
    }
    pegs.push_back(hot);
  }
  return HanoiState(std::move(pegs));
}

double backward_cross_entropy(const BackwardModel& model, std::span<const TransitionSample> samples) {
  constexpr double eps = 1e-12;
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& s : samples) {
    if (s.s == s.s_next) continue;
    Eigen::VectorXd p = model.predict(s.s_next, s.a);
    Eigen::VectorXd t = to_vector(s.s);
    total -= (t.array() * (p.array() + eps).log() + (1.0 - t.array()) * (1.0 - p.array() + eps).log()).sum();
    count += static_cast<std::size_t>(t.size());
  }
  if (count == 0) throw InvalidArgument("no state-changing samples");
  return total / static_cast<double>(count);
}

std::vector<std::pair<HanoiState, int>> exact_predecessors(const HanoiState& s_next) {
  std::vector<std::pair<HanoiState, int>> out;
  for (int a = 0; a < kActionCount; ++a) {
    auto [from, to] = kActionPegs[static_cast<std::size_t>(a)];
    auto disk = s_next.top_disk(to);
    if (!disk) continue;
    auto under = s_next.top_disk(from);
    if (under && *under > *disk) continue;  // would have sat on a smaller disk
    std::vector<int> pegs(s_next.disk_pegs().begin(), s_next.disk_pegs().end());
    pegs[static_cast<std::size_t>(*disk)] = from;
    out.emplace_back(HanoiState(std::move(pegs)), a);
  }
  return out;
}

// Config and logs ---------------------------------------------------------------

void AgentConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0)) throw InvalidArgument(std::string(name) + " must be positive");
  };
  if (!(discount > 0 && discount <= 1)) throw InvalidArgument("discount must lie in (0, 1]");
  positive(learning_rate, "learning_rate");
  positive(backward_learning_rate, "backward_learning_rate");
  if (epsilon_start < 0 || epsilon_start > 1 || epsilon_end < 0 || epsilon_end > 1) {
    throw InvalidArgument("epsilon must lie in [0, 1]");
  }
  positive(epsilon_decay_steps, "epsilon_decay_steps");
  positive(target_sync, "target_sync");
  positive(batch_size, "batch_size");
  positive(buffer_capacity, "buffer_capacity");
  positive(max_steps, "max_steps");
  positive(max_episode_steps, "max_episode_steps");
  positive(learning_starts, "learning_starts");
  positive(hidden_units, "hidden_units");
  positive(backward_hidden_units, "backward_hidden_units");
  positive(backward_horizon, "backward_horizon");
  positive(backward_epochs, "backward_epochs");
  if (backward_warmup < 0) throw InvalidArgument("backward_warmup must be non-negative");
  if (snap_margin < 0) throw InvalidArgument("snap_margin must be non-negative");
}

double AgentConfig::epsilon_at(int step) const noexcept {
  if (step >= epsilon_decay_steps) return epsilon_end;
  double frac = static_cast<double>(step) / static_cast<double>(epsilon_decay_steps);
  return epsilon_start + frac * (epsilon_end - epsilon_start);
}

std::string_view phase_name(UpdatePhase p) noexcept {
  switch (p) {
    case UpdatePhase::forward: return "forward";
    case UpdatePhase::backward: return "backward";
    case UpdatePhase::none: break;
  }
  return "none";
}

std::vector<double> TrainingLog::average_reward_curve(std::size_t window) const {
  if (window == 0) throw InvalidArgument("window must be positive");
  std::vector<double> out;
  out.reserve(step_rewards.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < step_rewards.size(); ++i) {
    sum += step_rewards[i];
    if (i >= window) sum -= step_rewards[i - window];
    out.push_back(sum / static_cast<double>(std::min(i + 1, window)));
  }
  return out;
}

void TrainingLog::write_csv(std::ostream& os) const {
  os << "step,episode,reward,phase,loss,imagined_fraction\n";
  auto old = os.precision(10);
  for (const auto& r : rows) {
    os << r.step << ',' << r.episode << ',' << r.reward << ',' << phase_name(r.phase) << ',';
    if (r.phase != UpdatePhase::none) os << r.loss;
    os << ',' << r.imagined_fraction << '\n';
  }
  os.precision(old);
}

// Training ---------------------------------------------------------------------

Eigen::VectorXd td_targets(const QNetwork& online, const QNetwork& target,
                           std::span<const TransitionSample* const> batch, double discount,
                           TargetRule rule, bool legal_only) {
  const Eigen::MatrixXd next = state_columns(batch, true);
  const Eigen::MatrixXd q_target = target.q_batch(next);
  Eigen::MatrixXd q_select = rule == TargetRule::double_q ? online.q_batch(next) : q_target;
  Eigen::VectorXd y(static_cast<Eigen::Index>(batch.size()));
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    const auto& sample = *batch[j];
    if (sample.done) {
      y(col) = sample.r;
      continue;
    }
    std::optional<HanoiState> next_state;
    if (legal_only) next_state = decode_bits(sample.s_next);
    int a = argmax_action(q_select.col(col), next_state ? &*next_state : nullptr);
    y(col) = sample.r + discount * q_target(a, col);
  }
  return y;
}

TrainingResult ddqn_train(const HanoiMdp& mdp, const AgentConfig& config) {
  return train(mdp, config, false);
}

TrainingResult fbrl_train(const HanoiMdp& mdp, const AgentConfig& config) {
  return train(mdp, config, true);
}

BackwardModel backward_model_train(std::span<const TransitionSample> samples, const AgentConfig& config) {
  config.validate();
  std::vector<const TransitionSample*> changed;
  for (const auto& s : samples) {
    if (s.a < 0 || s.a >= kActionCount) throw InvalidArgument("sample action index out of range");
    if (s.s != s.s_next) changed.push_back(&s);
  }
  if (changed.empty()) throw InvalidArgument("backward_model_train needs state-changing samples");
  const int n = static_cast<int>(changed.front()->s.size()) / kPegs;
  Rng rng(config.seed);
  BackwardLearner learner(n, config, rng);
  const auto batch = static_cast<std::size_t>(config.batch_size);
  for (int epoch = 0; epoch < config.backward_epochs; ++epoch) {
    std::shuffle(changed.begin(), changed.end(), rng);
    for (std::size_t start = 0; start < changed.size(); start += batch) {
      auto len = std::min(batch, changed.size() - start);
      learner.update(std::span<const TransitionSample* const>(changed).subspan(start, len));
    }
  }
  return learner.model();
}

RolloutResult greedy_rollout(const QFunction& q, const HanoiMdp& mdp, int max_steps,
                             std::optional<HanoiState> start) {
  RolloutResult out;
  HanoiState s = start.value_or(mdp.initial_state());
  for (int i = 0; i < max_steps && !is_goal(s, mdp); ++i) {
    int a = argmax_action(q(encode_bits(s)), &s);
    Move m = *action_move(s, a);
    out.plan.push_back(m);
    s = moved(s, m);
  }
  out.solved = is_goal(s, mdp);
  return out;
}

RolloutResult greedy_rollout(const QNetwork& net, const HanoiMdp& mdp, int max_steps,
                             std::optional<HanoiState> start) {
  return greedy_rollout([&net](const BitVector& b) { return net.q_values(b); }, mdp, max_steps,
                        std::move(start));
}

}  // namespace hanoi
