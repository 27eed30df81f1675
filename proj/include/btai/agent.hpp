#pragma once

// The action-perception cycle: integrate evidence, plan with N tree
// expansions, act, then re-root on the empirical prior.

#include <functional>
#include <string_view>
#include <vector>

#include "btai/categorical.hpp"
#include "btai/planning_tree.hpp"

namespace btai {

/// A, B, C, D plus planner settings. Dimensions are checked on construction.
struct AgentModel {
  AgentModel(LikelihoodMatrixD likelihood, TransitionTensorD transition, CategoricalD preferences,
             CategoricalD initial_prior, PlannerConfig planner = {});

  LikelihoodMatrixD likelihood;   // A
  TransitionTensorD transition;   // B
  CategoricalD preferences;       // C, strictly positive
  CategoricalD initial_prior;     // D
  PlannerConfig planner;

  Index num_states() const noexcept { return likelihood.num_states(); }
  Index num_observations() const noexcept { return likelihood.num_observations(); }
  Index num_actions() const noexcept { return transition.num_actions(); }
};

enum class EnvStatus { ongoing, goal, bad };

/// Anything the agent can act in.
class Environment {
 public:
  virtual ~Environment() = default;

  /// Puts the environment back at its start and returns the first observation.
  virtual Index reset() = 0;
  virtual Index execute(Action action) = 0;
  virtual EnvStatus status() const = 0;

  virtual Index num_observations() const = 0;
  virtual Index num_actions() const = 0;
};

enum class Outcome { goal, bad, timeout };

std::string_view to_string(Outcome outcome);

struct CycleRecord {
  int cycle_index = 0;
  Index observation = 0;  // observation that produced this cycle's root
  Action chosen_action = kNoAction;
  CategoricalD root_beliefs;
  double planning_duration = 0.0;  // seconds
};

struct TrialResult {
  Outcome outcome = Outcome::timeout;
  int cycles = 0;
  double total_planning_seconds = 0.0;
  double wall_seconds = 0.0;
  std::vector<CycleRecord> records;
};

/// Root of the first tree: Bayes update of D with the initial observation.
PlanningTree perceive_initial(const AgentModel& model, Index observation);

/// Runs the configured number of select/expand/backpropagate iterations on `tree`
/// and returns the root child with the lowest average cost.
Action plan(const AgentModel& model, PlanningTree& tree);

/// Fresh one-node tree whose beliefs are the old root's beliefs pushed through
/// B(., ., action) and conditioned on the new observation.
PlanningTree transition_root(const AgentModel& model, const PlanningTree& old_tree, Action action,
                             Index observation);

/// Called after each planning phase with the cycle index and the planned tree.
using PlanObserver = std::function<void(int cycle, const PlanningTree& tree)>;

/// Resets `env` and runs up to `max_cycles` cycles, stopping on a terminal status.
TrialResult run_trial(const AgentModel& model, Environment& env, int max_cycles,
                      const PlanObserver& observer = {});

}  // namespace btai
