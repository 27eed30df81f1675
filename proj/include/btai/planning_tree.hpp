#pragma once

#include <cstdint>
#include <limits>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "btai/categorical.hpp"

namespace btai {

using Action = Index;

/// Action recorded on the root of the very first planning tree of a trial.
inline constexpr Action kNoAction = -1;

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct PlannerConfig {
  double exploration_constant = 2.0;
  int planning_iterations = 25;

  void validate() const;
};

/// One state S_I of the expandable future. Children of a node are created all at
/// once and occupy the contiguous id range [first_child, first_child + child_count),
/// ordered by action.
struct TreeNode {
  CategoricalD beliefs;
  Action action = kNoAction;
  double cost_aggregate = 0.0;
  std::uint64_t visits = 1;
  NodeId parent = kNoNode;
  NodeId first_child = kNoNode;
  std::size_t child_count = 0;

  bool is_leaf() const noexcept { return child_count == 0; }
};

/// Arena-backed tree. Node ids stay valid for the lifetime of the tree; references
/// returned by node() are invalidated by expansion.
class PlanningTree {
 public:
  explicit PlanningTree(CategoricalD root_beliefs, Action root_action = kNoAction);

  NodeId root() const noexcept { return 0; }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  TreeNode& node(NodeId id) { return nodes_.at(id); }
  std::size_t size() const noexcept { return nodes_.size(); }

  auto children(NodeId id) const {
    const TreeNode& n = node(id);
    const NodeId first = n.is_leaf() ? 0 : n.first_child;
    return std::views::iota(first, first + n.child_count);
  }

  /// Appends one child per entry of `beliefs` (in action order) below a leaf.
  /// Returns the id of the first child.
  NodeId attach_children(NodeId parent, std::vector<CategoricalD> beliefs, std::span<const double> costs);

  void reserve(std::size_t nodes);

  /// Ids from `id` up to and including the root.
  std::vector<NodeId> path_to_root(NodeId id) const;

  int depth(NodeId id) const;

 private:
  std::vector<TreeNode> nodes_;
};

/// -avg_cost + c * sqrt(ln(parent_visits) / child_visits).
double uct_score(double avg_cost, std::uint64_t parent_visits, std::uint64_t child_visits, double c_explore);

/// Aggregated cost divided by the visit count.
double average_cost(const TreeNode& node);

/// Risk (KL of predicted observations from preferences) plus ambiguity.
double expected_free_energy(const CategoricalD& beliefs, const LikelihoodMatrixD& likelihood,
                            const CategoricalD& preferences);

/// Walks down from the root along maximal-UCT children until a leaf.
NodeId select_node(const PlanningTree& tree, double c_explore);

/// Creates all |U| children of a leaf, predicting their beliefs and scoring them.
/// Returns the new ids in action order.
std::vector<NodeId> expand_children(PlanningTree& tree, NodeId leaf, const TransitionTensorD& transition,
                                    const LikelihoodMatrixD& likelihood, const CategoricalD& preferences);

/// Adds the cheapest child's cost and one visit to `expanded` and all its ancestors.
void backpropagate(PlanningTree& tree, NodeId expanded);

/// Root child with the lowest average cost; lowest action on ties.
Action best_action(const PlanningTree& tree);

/// Graphviz rendering; each node labelled "a=<action> n=<visits> Ḡ=<avg cost>".
std::string to_dot(const PlanningTree& tree);

}  // namespace btai
