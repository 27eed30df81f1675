#include "btai/planning_tree.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace btai {

void PlannerConfig::validate() const {
  if (planning_iterations < 1) throw ConfigError("planning_iterations", "must be at least 1");
  if (!(exploration_constant >= 0.0) || !std::isfinite(exploration_constant)) {
    throw ConfigError("exploration_constant", "must be a finite nonnegative number");
  }
}

PlanningTree::PlanningTree(CategoricalD root_beliefs, Action root_action) {
  nodes_.push_back(TreeNode{std::move(root_beliefs), root_action});
}

NodeId PlanningTree::attach_children(NodeId parent, std::vector<CategoricalD> beliefs,
                                     std::span<const double> costs) {
  if (!node(parent).is_leaf()) throw ContractViolation("node has already been expanded");
  if (beliefs.empty() || beliefs.size() != costs.size()) {
    throw ContractViolation("children need one cost per belief vector");
  }
  const NodeId first = nodes_.size();
  for (std::size_t u = 0; u < beliefs.size(); ++u) {
    TreeNode child{std::move(beliefs[u]), static_cast<Action>(u), costs[u]};
    child.parent = parent;
    nodes_.push_back(std::move(child));
  }
  TreeNode& p = nodes_[parent];
  p.first_child = first;
  p.child_count = beliefs.size();
  return first;
}

void PlanningTree::reserve(std::size_t nodes) { nodes_.reserve(nodes); }

std::vector<NodeId> PlanningTree::path_to_root(NodeId id) const {
  std::vector<NodeId> path;
  for (NodeId k = id; k != kNoNode; k = node(k).parent) path.push_back(k);
  return path;
}

int PlanningTree::depth(NodeId id) const { return static_cast<int>(path_to_root(id).size()) - 1; }

double uct_score(double avg_cost, std::uint64_t parent_visits, std::uint64_t child_visits, double c_explore) {
  return -avg_cost + c_explore * std::sqrt(std::log(static_cast<double>(parent_visits)) /
                                           static_cast<double>(child_visits));
}

double average_cost(const TreeNode& node) { return node.cost_aggregate / static_cast<double>(node.visits); }

double expected_free_energy(const CategoricalD& beliefs, const LikelihoodMatrixD& likelihood,
                            const CategoricalD& preferences) {
  return kl_divergence(predict_observation(likelihood, beliefs), preferences) + ambiguity(likelihood, beliefs);
}

NodeId select_node(const PlanningTree& tree, double c_explore) {
  NodeId current = tree.root();
  while (!tree.node(current).is_leaf()) {
    const std::uint64_t parent_visits = tree.node(current).visits;
    NodeId best = kNoNode;
    double best_score = -std::numeric_limits<double>::infinity();
    for (NodeId child : tree.children(current)) {
      const TreeNode& c = tree.node(child);
      const double score = uct_score(average_cost(c), parent_visits, c.visits, c_explore);
      // Strict comparison keeps the lowest action on ties.
      if (best == kNoNode || score > best_score) {
        best = child;
        best_score = score;
      }
    }
    current = best;
  }
  return current;
}

std::vector<NodeId> expand_children(PlanningTree& tree, NodeId leaf, const TransitionTensorD& transition,
                                    const LikelihoodMatrixD& likelihood, const CategoricalD& preferences) {
  if (!tree.node(leaf).is_leaf()) throw ContractViolation("node has already been expanded");
  const Index n_actions = transition.num_actions();
  std::vector<CategoricalD> beliefs;
  std::vector<double> costs;
  beliefs.reserve(static_cast<std::size_t>(n_actions));
  costs.reserve(static_cast<std::size_t>(n_actions));
  {
    const CategoricalD& parent_beliefs = tree.node(leaf).beliefs;
    for (Index u = 0; u < n_actions; ++u) {
      beliefs.push_back(predict_state(transition.slice(u), parent_beliefs));
      costs.push_back(expected_free_energy(beliefs.back(), likelihood, preferences));
    }
  }
  const NodeId first = tree.attach_children(leaf, std::move(beliefs), costs);
  std::vector<NodeId> ids(static_cast<std::size_t>(n_actions));
  for (std::size_t u = 0; u < ids.size(); ++u) ids[u] = first + u;
  return ids;
}

void backpropagate(PlanningTree& tree, NodeId expanded) {
  const TreeNode& e = tree.node(expanded);
  if (e.is_leaf()) throw ContractViolation("backpropagate needs an expanded node");
  double best = std::numeric_limits<double>::infinity();
  for (NodeId child : tree.children(expanded)) best = std::min(best, tree.node(child).cost_aggregate);
  for (NodeId k = expanded; k != kNoNode; k = tree.node(k).parent) {
    TreeNode& n = tree.node(k);
    n.cost_aggregate += best;
    n.visits += 1;
  }
}

Action best_action(const PlanningTree& tree) {
  const TreeNode& root = tree.node(tree.root());
  if (root.is_leaf()) throw PlanningNeverRan("root has no children; run at least one planning iteration");
  NodeId best = kNoNode;
  double best_cost = std::numeric_limits<double>::infinity();
  for (NodeId child : tree.children(tree.root())) {
    const double cost = average_cost(tree.node(child));
    if (best == kNoNode || cost < best_cost) {
      best = child;
      best_cost = cost;
    }
  }
  return tree.node(best).action;
}

std::string to_dot(const PlanningTree& tree) {
  std::ostringstream out;
  out << "digraph planning_tree {\n";
  out << "  node [shape=box];\n";
  for (NodeId id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    out << "  n" << id << " [label=\"a=" << n.action << " n=" << n.visits << " Ḡ=" << std::fixed
        << std::setprecision(4) << average_cost(n) << "\"];\n";
  }
  for (NodeId id = 0; id < tree.size(); ++id) {
    for (NodeId child : tree.children(id)) out << "  n" << id << " -> n" << child << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace btai
