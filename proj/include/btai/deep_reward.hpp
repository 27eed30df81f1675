#pragma once

// Deep reward task: from S_0 the agent picks one of n good paths or m bad
// actions. Each good path k has L_k pleasant states and a single action that
// stays on it; every other action falls into the absorbing bad state S_b. Only
// the end of the longest path leads to the absorbing goal S_g.

#include <string>
#include <vector>

#include "btai/agent.hpp"

namespace btai::deep_reward {

inline constexpr Index kPleasant = 0;
inline constexpr Index kUnpleasant = 1;
inline constexpr Index kNumObservations = 2;

inline constexpr Index kInitialState = 0;
inline constexpr Index kBadState = 1;
inline constexpr Index kGoalState = 2;

struct Config {
  int n_good = 2;
  int m_bad = 5;
  std::vector<int> lengths{5, 8};

  /// Throws ConfigError on structural problems. Returns warnings for tasks
  /// that are not well posed (several paths share the maximal length).
  std::vector<std::string> validate() const;

  Index num_states() const;
  Index num_actions() const { return n_good + m_bad; }
  int max_length() const;
  /// True when path i (1-based) has maximal length and therefore ends at S_g.
  bool leads_to_goal(int path) const;
};

/// Index of S^path_depth, both 1-based: 3 + sum of earlier lengths + depth - 1.
Index path_state(const Config& config, int path, int depth);

enum class Preference { pleasant, unpleasant };

/// Exact A, B, C, D for the task. C = [s, 1 - s] for `Preference::pleasant`
/// and the mirror image otherwise.
AgentModel build_model(const Config& config, double preference_strength = 0.9, PlannerConfig planner = {},
                       Preference preferred = Preference::pleasant);

class Environment final : public btai::Environment {
 public:
  explicit Environment(Config config);

  Index reset() override;
  Index execute(Action action) override;
  EnvStatus status() const override { return status_; }
  Index num_observations() const override { return kNumObservations; }
  Index num_actions() const override { return config_.num_actions(); }

  Index current_state() const;
  const Config& config() const noexcept { return config_; }

 private:
  enum class Place { start, path, bad, goal };

  Config config_;
  Place place_ = Place::start;
  int path_ = 0;   // 1-based, valid on a path
  int depth_ = 0;  // 1-based, valid on a path
  EnvStatus status_ = EnvStatus::ongoing;
};

}  // namespace btai::deep_reward
