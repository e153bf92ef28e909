#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hanoi/core.hpp"
#include "hanoi/mlp.hpp"

namespace hanoi {

using Rng = std::mt19937_64;

// Action space ---------------------------------------------------------------

inline constexpr int kActionCount = 6;

/// Ordered (from, to) peg pairs. Action k moves the top disk of first onto second.
inline constexpr std::array<std::pair<int, int>, kActionCount> kActionPegs{
    {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};

int action_index(int from_peg, int to_peg);
/// The move an action requests, or nullopt if its source peg is empty.
std::optional<Move> action_move(const HanoiState& state, int action);
bool action_legal(const HanoiState& state, int action);
/// Environment step for a peg-pair action. Empty-source actions count as illegal.
Transition step_action(const HanoiMdp& mdp, const HanoiState& state, int action);

// Experience -----------------------------------------------------------------

enum class SampleOrigin : std::uint8_t { real, imagined };

struct TransitionSample {
  BitVector s;
  int a = 0;
  double r = 0.0;
  BitVector s_next;
  bool done = false;
  SampleOrigin origin = SampleOrigin::real;

  friend bool operator==(const TransitionSample&, const TransitionSample&) = default;
};

/// Bounded FIFO with uniform sampling (with replacement), optionally restricted
/// to one origin class.
class ReplayBuffer {
public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(TransitionSample sample);

  std::size_t size() const noexcept { return data_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t count(SampleOrigin p) const noexcept { return slots_[slot_class(p)].size(); }
  const TransitionSample& operator[](std::size_t slot) const { return data_.at(slot); }

  /// Slot indices drawn uniformly. Throws InvalidArgument if the requested class is empty.
  std::vector<std::size_t> sample(std::size_t batch, Rng& rng,
                                  std::optional<SampleOrigin> only = std::nullopt) const;

private:
  static std::size_t slot_class(SampleOrigin p) noexcept { return p == SampleOrigin::real ? 0 : 1; }

  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<TransitionSample> data_;
  std::array<std::vector<std::size_t>, 2> slots_;
  std::vector<std::size_t> position_;  // slot -> index inside its class list
};

// Networks -------------------------------------------------------------------

/// 3n input bits -> hidden ReLU layer -> one Q value per peg-pair action.
class QNetwork {
public:
  QNetwork() = default;
  QNetwork(int n_disks, int hidden, Rng& rng);

  int n_disks() const noexcept { return n_disks_; }
  Eigen::VectorXd q_values(const BitVector& bits) const;
  Eigen::MatrixXd q_batch(const Eigen::MatrixXd& inputs) const { return mlp_.forward(inputs); }

  Mlp<double>& mlp() noexcept { return mlp_; }
  const Mlp<double>& mlp() const noexcept { return mlp_; }

private:
  int n_disks_ = 0;
  Mlp<double> mlp_;
};

/// (3n successor bits + action one-hot) -> per-bit probability of the predecessor bits.
class BackwardModel {
public:
  BackwardModel() = default;
  BackwardModel(int n_disks, int hidden, Rng& rng);

  int n_disks() const noexcept { return n_disks_; }
  /// Throws InvalidArgument on a malformed state or an action outside [0, 6).
  Eigen::VectorXd predict(const BitVector& s_next, int action) const;
  /// Thresholded, snapped predecessor; nullopt when some disk group is ambiguous.
  std::optional<HanoiState> predict_state(const BitVector& s_next, int action, double margin = 0.1) const;

  Mlp<double>& mlp() noexcept { return mlp_; }
  const Mlp<double>& mlp() const noexcept { return mlp_; }

private:
  int n_disks_ = 0;
  Mlp<double> mlp_;
};

Eigen::VectorXd backward_input(const BitVector& s_next, int action);

/// Per-disk snapping of predecessor probabilities. A group that already
/// thresholds to one-hot is kept; otherwise it snaps to its most probable peg
/// unless the top two probabilities are within `margin`.
std::optional<HanoiState> snap_predecessor(const Eigen::VectorXd& probs, double margin = 0.1);

/// Mean per-bit binary cross-entropy of the model on the state-changing samples.
double backward_cross_entropy(const BackwardModel& model, std::span<const TransitionSample> samples);

/// Predecessors of `s_next` under each action, reversing the true dynamics.
std::vector<std::pair<HanoiState, int>> exact_predecessors(const HanoiState& s_next);

// Configuration --------------------------------------------------------------

enum class BackwardGenerator { learned, exact };

struct AgentConfig {
  double discount = 0.8;
  double learning_rate = 1e-3;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  int epsilon_decay_steps = 10'000;
  int target_sync = 500;
  int batch_size = 32;
  int buffer_capacity = 10'000;
  int max_steps = 30'000;
  int max_episode_steps = 100;
  int learning_starts = 200;
  int hidden_units = 100;
  std::uint64_t seed = 1;

  // Backward (imagination) side.
  BackwardGenerator generator = BackwardGenerator::learned;
  int backward_warmup = 1'000;
  int backward_horizon = 8;
  int backward_hidden_units = 100;
  double backward_learning_rate = 1e-3;
  int backward_epochs = 300;
  double snap_margin = 0.1;

  /// Throws InvalidArgument on non-positive sizes or out-of-range rates.
  void validate() const;
  double epsilon_at(int step) const noexcept;
};

// Training -------------------------------------------------------------------

enum class UpdatePhase : std::uint8_t { none, forward, backward };
std::string_view phase_name(UpdatePhase p) noexcept;

struct LogRow {
  int step = 0;
  int episode = 0;
  double reward = 0.0;
  UpdatePhase phase = UpdatePhase::none;
  double loss = 0.0;
  double imagined_fraction = 0.0;  // of the buffer at this step
};

struct TrainingLog {
  std::vector<LogRow> rows;
  std::vector<double> episode_returns;
  std::vector<double> step_rewards;  // one per environment step

  /// Trailing moving average of the per-step reward.
  std::vector<double> average_reward_curve(std::size_t window = 1000) const;
  void write_csv(std::ostream& os) const;
};

struct TrainingResult {
  QNetwork net;
  TrainingLog log;
  std::size_t real_samples = 0;
  std::size_t imagined_samples = 0;
};

enum class TargetRule { double_q, max_q };

/// TD targets r + gamma * (1 - done) * Q_target(s', a*) for a batch. With
/// double_q, a* is the online argmax; with max_q, the target-network argmax.
/// `legal_only` restricts the argmax to legal actions in s'.
Eigen::VectorXd td_targets(const QNetwork& online, const QNetwork& target,
                           std::span<const TransitionSample* const> batch, double discount,
                           TargetRule rule, bool legal_only);

TrainingResult ddqn_train(const HanoiMdp& mdp, const AgentConfig& config);
TrainingResult fbrl_train(const HanoiMdp& mdp, const AgentConfig& config);

/// Offline training of the backward model on the state-changing samples.
BackwardModel backward_model_train(std::span<const TransitionSample> samples, const AgentConfig& config);

// Evaluation -----------------------------------------------------------------

struct RolloutResult {
  std::vector<Move> plan;
  bool solved = false;
};

using QFunction = std::function<Eigen::VectorXd(const BitVector&)>;

/// Greedy policy with the argmax masked to legal actions.
RolloutResult greedy_rollout(const QFunction& q, const HanoiMdp& mdp, int max_steps,
                             std::optional<HanoiState> start = {});
RolloutResult greedy_rollout(const QNetwork& net, const HanoiMdp& mdp, int max_steps,
                             std::optional<HanoiState> start = {});

}  // namespace hanoi
