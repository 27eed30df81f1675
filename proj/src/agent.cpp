#include "btai/agent.hpp"

#include <chrono>

namespace btai {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

AgentModel::AgentModel(LikelihoodMatrixD likelihood_, TransitionTensorD transition_, CategoricalD preferences_,
                       CategoricalD initial_prior_, PlannerConfig planner_)
    : likelihood(std::move(likelihood_)),
      transition(std::move(transition_)),
      preferences(std::move(preferences_)),
      initial_prior(std::move(initial_prior_)),
      planner(planner_) {
  if (transition.num_states() != likelihood.num_states()) {
    throw ContractViolation("transition tensor and likelihood disagree on the number of states");
  }
  if (preferences.size() != likelihood.num_observations()) {
    throw ContractViolation("preferences must have one entry per observation");
  }
  if (initial_prior.size() != likelihood.num_states()) {
    throw ContractViolation("initial prior must have one entry per state");
  }
  if ((preferences.probs().array() <= 0.0).any()) {
    throw ContractViolation("preferences must be strictly positive");
  }
  planner.validate();
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::goal:
      return "goal";
    case Outcome::bad:
      return "bad";
    case Outcome::timeout:
      return "timeout";
  }
  return "unknown";
}

PlanningTree perceive_initial(const AgentModel& model, Index observation) {
  return PlanningTree(bayes_update(observation, model.likelihood, model.initial_prior));
}

Action plan(const AgentModel& model, PlanningTree& tree) {
  const auto iterations = static_cast<std::size_t>(model.planner.planning_iterations);
  tree.reserve(tree.size() + iterations * static_cast<std::size_t>(model.num_actions()));
  for (int i = 0; i < model.planner.planning_iterations; ++i) {
    const NodeId leaf = select_node(tree, model.planner.exploration_constant);
    expand_children(tree, leaf, model.transition, model.likelihood, model.preferences);
    backpropagate(tree, leaf);
  }
  return best_action(tree);
}

PlanningTree transition_root(const AgentModel& model, const PlanningTree& old_tree, Action action,
                             Index observation) {
  const CategoricalD empirical_prior =
      predict_state(model.transition.slice(action), old_tree.node(old_tree.root()).beliefs);
  return PlanningTree(bayes_update(observation, model.likelihood, empirical_prior), action);
}

TrialResult run_trial(const AgentModel& model, Environment& env, int max_cycles, const PlanObserver& observer) {
  if (env.num_observations() != model.num_observations() || env.num_actions() != model.num_actions()) {
    throw ConfigError("model", "environment and model disagree on observation or action counts");
  }
  const auto trial_start = Clock::now();
  TrialResult result;

  Index observation = env.reset();
  PlanningTree tree = perceive_initial(model, observation);
  for (int cycle = 0; cycle < max_cycles && env.status() == EnvStatus::ongoing; ++cycle) {
    const auto plan_start = Clock::now();
    const Action action = plan(model, tree);
    const double planning = seconds_since(plan_start);
    if (observer) observer(cycle, tree);

    result.records.push_back(CycleRecord{cycle, observation, action, tree.node(tree.root()).beliefs, planning});
    result.total_planning_seconds += planning;
    result.cycles = cycle + 1;

    observation = env.execute(action);
    tree = transition_root(model, tree, action, observation);
  }

  switch (env.status()) {
    case EnvStatus::goal:
      result.outcome = Outcome::goal;
      break;
    case EnvStatus::bad:
      result.outcome = Outcome::bad;
      break;
    case EnvStatus::ongoing:
      result.outcome = Outcome::timeout;
      break;
  }
  result.wall_seconds = seconds_since(trial_start);
  return result;
}

}  // namespace btai
