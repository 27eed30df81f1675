#include "btai/deep_reward.hpp"

#include <algorithm>
#include <numeric>

namespace btai::deep_reward {

std::vector<std::string> Config::validate() const {
  if (n_good < 1) throw ConfigError("n_good", "must be at least 1");
  if (m_bad < 1) throw ConfigError("m_bad", "must be at least 1");
  if (static_cast<int>(lengths.size()) != n_good) {
    throw ConfigError("lengths", "expected " + std::to_string(n_good) + " path lengths, got " +
                                     std::to_string(lengths.size()));
  }
  if (std::any_of(lengths.begin(), lengths.end(), [](int l) { return l < 1; })) {
    throw ConfigError("lengths", "every path length must be at least 1");
  }
  std::vector<std::string> warnings;
  const int longest = max_length();
  if (std::count(lengths.begin(), lengths.end(), longest) > 1) {
    warnings.push_back("several good paths share the maximal length " + std::to_string(longest) +
                       "; each of them leads to the goal");
  }
  return warnings;
}

Index Config::num_states() const { return 3 + std::accumulate(lengths.begin(), lengths.end(), Index{0}); }

int Config::max_length() const { return lengths.empty() ? 0 : *std::max_element(lengths.begin(), lengths.end()); }

bool Config::leads_to_goal(int path) const { return lengths.at(static_cast<std::size_t>(path - 1)) == max_length(); }

Index path_state(const Config& config, int path, int depth) {
  if (path < 1 || path > static_cast<int>(config.lengths.size())) {
    throw ContractViolation("path index out of range");
  }
  if (depth < 1 || depth > config.lengths[static_cast<std::size_t>(path - 1)]) {
    throw ContractViolation("path depth out of range");
  }
  const Index offset = std::accumulate(config.lengths.begin(), config.lengths.begin() + (path - 1), Index{0});
  return 3 + offset + (depth - 1);
}

AgentModel build_model(const Config& config, double preference_strength, PlannerConfig planner,
                       Preference preferred) {
  config.validate();
  if (!(preference_strength > 0.5 && preference_strength < 1.0)) {
    throw ConfigError("preference_strength", "must lie strictly between 0.5 and 1");
  }
  const Index n_states = config.num_states();
  const Index n_actions = config.num_actions();

  Matrix<double> a = Matrix<double>::Zero(kNumObservations, n_states);
  a.row(kPleasant).setOnes();
  a(kPleasant, kBadState) = 0.0;
  a(kUnpleasant, kBadState) = 1.0;

  std::vector<Matrix<double>> b(static_cast<std::size_t>(n_actions), Matrix<double>::Zero(n_states, n_states));
  for (Index u = 0; u < n_actions; ++u) {
    Matrix<double>& slice = b[static_cast<std::size_t>(u)];
    slice(kBadState, kBadState) = 1.0;
    slice(kGoalState, kGoalState) = 1.0;
    slice(u < config.n_good ? path_state(config, static_cast<int>(u) + 1, 1) : kBadState, kInitialState) = 1.0;
    for (int i = 1; i <= config.n_good; ++i) {
      const int length = config.lengths[static_cast<std::size_t>(i - 1)];
      for (int j = 1; j < length; ++j) {
        slice(u == i - 1 ? path_state(config, i, j + 1) : kBadState, path_state(config, i, j)) = 1.0;
      }
      slice(config.leads_to_goal(i) ? kGoalState : kBadState, path_state(config, i, length)) = 1.0;
    }
  }

  const double s = preference_strength;
  CategoricalD c = preferred == Preference::pleasant ? CategoricalD{s, 1.0 - s} : CategoricalD{1.0 - s, s};
  return AgentModel(LikelihoodMatrixD(std::move(a)), TransitionTensorD(std::move(b)), std::move(c),
                    CategoricalD::one_hot(n_states, kInitialState), planner);
}

Environment::Environment(Config config) : config_(std::move(config)) { config_.validate(); }

Index Environment::reset() {
  place_ = Place::start;
  path_ = 0;
  depth_ = 0;
  status_ = EnvStatus::ongoing;
  return kPleasant;
}

Index Environment::execute(Action action) {
  if (action < 0 || action >= config_.num_actions()) throw ContractViolation("action index out of range");
  switch (place_) {
    case Place::start:
      if (action < config_.n_good) {
        place_ = Place::path;
        path_ = static_cast<int>(action) + 1;
        depth_ = 1;
      } else {
        place_ = Place::bad;
      }
      break;
    case Place::path:
      if (depth_ == config_.lengths[static_cast<std::size_t>(path_ - 1)]) {
        place_ = config_.leads_to_goal(path_) ? Place::goal : Place::bad;
      } else if (action == path_ - 1) {
        ++depth_;
      } else {
        place_ = Place::bad;
      }
      break;
    case Place::bad:
    case Place::goal:
      break;
  }
  if (place_ == Place::bad) status_ = EnvStatus::bad;
  if (place_ == Place::goal) status_ = EnvStatus::goal;
  return place_ == Place::bad ? kUnpleasant : kPleasant;
}

Index Environment::current_state() const {
  switch (place_) {
    case Place::start:
      return kInitialState;
    case Place::bad:
      return kBadState;
    case Place::goal:
      return kGoalState;
    case Place::path:
      break;
  }
  return path_state(config_, path_, depth_);
}

}  // namespace btai::deep_reward
