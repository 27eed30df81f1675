#pragma once

// Exact arithmetic on categorical distributions: normalization, Bayes updates,
// linear prediction through likelihood/transition tensors, KL divergence and
// expected observation entropy. Everything is in probability space and nats.

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "btai/errors.hpp"

namespace btai {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Allowed deviation of a distribution's total mass from one.
inline constexpr double kSumTolerance = 1e-9;

namespace detail {

template <typename Derived>
bool is_column_stochastic(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if ((m.array() < Scalar(0)).any() || !m.allFinite()) return false;
  for (Index c = 0; c < m.cols(); ++c) {
    if (std::abs(m.col(c).sum() - Scalar(1)) > Scalar(kSumTolerance)) return false;
  }
  return true;
}

inline void require(bool condition, const char* what) {
  if (!condition) throw ContractViolation(what);
}

// x * ln(x) with the 0 ln 0 = 0 convention.
template <typename Scalar>
Scalar x_log_x(Scalar x) {
  return x > Scalar(0) ? x * std::log(x) : Scalar(0);
}

}  // namespace detail

/// Shannon entropy in nats.
template <typename Derived>
typename Derived::Scalar entropy(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  Scalar h(0);
  for (Index i = 0; i < p.size(); ++i) h -= detail::x_log_x(p(i));
  return h;
}

/// A normalized probability vector over the values of one discrete variable.
template <typename Scalar>
class Categorical {
 public:
  using VectorType = Vector<Scalar>;

  /// Validates nonnegativity and unit mass.
  explicit Categorical(VectorType probs) : probs_(std::move(probs)) {
    detail::require(probs_.size() > 0, "categorical distribution needs at least one entry");
    detail::require(detail::is_column_stochastic(probs_),
                    "categorical entries must be nonnegative and sum to 1");
  }

  Categorical(std::initializer_list<Scalar> probs)
      : Categorical(VectorType(Eigen::Map<const VectorType>(probs.begin(), Index(probs.size())))) {}

  static Categorical one_hot(Index size, Index hot) {
    detail::require(hot >= 0 && hot < size, "one-hot index out of range");
    VectorType v = VectorType::Zero(size);
    v(hot) = Scalar(1);
    return Categorical(std::move(v));
  }

  static Categorical uniform(Index size) {
    return Categorical(VectorType::Constant(size, Scalar(1) / Scalar(size)));
  }

  const VectorType& probs() const noexcept { return probs_; }
  Index size() const noexcept { return probs_.size(); }
  Scalar operator[](Index i) const { return probs_(i); }

  /// Index of the largest entry (lowest index on ties).
  Index argmax() const {
    Index best = 0;
    probs_.maxCoeff(&best);
    return best;
  }

 private:
  VectorType probs_;
};

/// P(O | S): one observation distribution per state column.
template <typename Scalar>
class LikelihoodMatrix {
 public:
  explicit LikelihoodMatrix(Matrix<Scalar> entries) : entries_(std::move(entries)) {
    detail::require(entries_.rows() > 0 && entries_.cols() > 0, "likelihood matrix is empty");
    detail::require(detail::is_column_stochastic(entries_),
                    "likelihood columns must be nonnegative and sum to 1");
    column_entropy_.resize(entries_.cols());
    for (Index s = 0; s < entries_.cols(); ++s) column_entropy_(s) = entropy(entries_.col(s));
  }

  const Matrix<Scalar>& entries() const noexcept { return entries_; }
  /// H[P(O | S = s)] for every state s.
  const Vector<Scalar>& column_entropy() const noexcept { return column_entropy_; }
  Index num_observations() const noexcept { return entries_.rows(); }
  Index num_states() const noexcept { return entries_.cols(); }
  Scalar operator()(Index obs, Index state) const { return entries_(obs, state); }

 private:
  Matrix<Scalar> entries_;
  Vector<Scalar> column_entropy_;
};

/// P(S' | S, U), stored as one |S| x |S| column-stochastic slice per action.
template <typename Scalar>
class TransitionTensor {
 public:
  explicit TransitionTensor(std::vector<Matrix<Scalar>> slices) : slices_(std::move(slices)) {
    detail::require(!slices_.empty(), "transition tensor needs at least one action");
    const Index n = slices_.front().rows();
    detail::require(n > 0, "transition tensor has no states");
    for (const auto& slice : slices_) {
      detail::require(slice.rows() == n && slice.cols() == n, "transition slices must be square and equal-sized");
      detail::require(detail::is_column_stochastic(slice),
                      "transition columns must be nonnegative and sum to 1");
    }
  }

  const Matrix<Scalar>& slice(Index action) const {
    detail::require(action >= 0 && action < num_actions(), "action index out of range");
    return slices_[static_cast<std::size_t>(action)];
  }

  Index num_states() const noexcept { return slices_.front().rows(); }
  Index num_actions() const noexcept { return static_cast<Index>(slices_.size()); }
  Scalar operator()(Index next, Index state, Index action) const { return slice(action)(next, state); }

 private:
  std::vector<Matrix<Scalar>> slices_;
};

/// v / sum(v). Throws ImpossibleEvidence when v has no mass or a negative entry.
template <typename Derived>
Categorical<typename Derived::Scalar> normalize(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  detail::require(v.cols() == 1 && v.size() > 0, "normalize expects a nonempty vector");
  if ((v.array() < Scalar(0)).any() || !v.allFinite()) {
    throw ImpossibleEvidence("cannot normalize a vector with negative or non-finite entries");
  }
  const Scalar total = v.sum();
  if (!(total > Scalar(0))) throw ImpossibleEvidence("observation has zero probability under the model");
  return Categorical<Scalar>(Vector<Scalar>(v / total));
}

/// Posterior over states after observing `obs`: normalize(A(obs, :) .* prior).
template <typename Scalar>
Categorical<Scalar> bayes_update(Index obs, const LikelihoodMatrix<Scalar>& likelihood,
                                 const Categorical<Scalar>& prior) {
  detail::require(obs >= 0 && obs < likelihood.num_observations(), "observation index out of range");
  detail::require(prior.size() == likelihood.num_states(), "prior size does not match likelihood");
  return normalize(likelihood.entries().row(obs).transpose().cwiseProduct(prior.probs()));
}

/// One prediction step through an action slice: B_u * beliefs.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Categorical<Scalar> predict_state(const Eigen::MatrixBase<Derived>& transition_slice,
                                  const Categorical<Scalar>& beliefs) {
  detail::require(transition_slice.rows() == beliefs.size() && transition_slice.cols() == beliefs.size(),
                  "transition slice does not match belief size");
  return Categorical<Scalar>(Vector<Scalar>(transition_slice * beliefs.probs()));
}

/// Predicted observation distribution A * beliefs.
template <typename Scalar>
Categorical<Scalar> predict_observation(const LikelihoodMatrix<Scalar>& likelihood,
                                        const Categorical<Scalar>& beliefs) {
  detail::require(beliefs.size() == likelihood.num_states(), "belief size does not match likelihood");
  return Categorical<Scalar>(Vector<Scalar>(likelihood.entries() * beliefs.probs()));
}

/// KL(p || q) in nats.
template <typename Scalar>
Scalar kl_divergence(const Categorical<Scalar>& p, const Categorical<Scalar>& q) {
  detail::require(p.size() == q.size(), "kl_divergence arguments differ in size");
  Scalar total(0);
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] <= Scalar(0)) continue;
    if (q[i] <= Scalar(0)) throw InfiniteDivergence("reference distribution is zero where p has mass");
    total += p[i] * std::log(p[i] / q[i]);
  }
  // Rounding can leave a tiny negative value for p ~= q.
  return total < Scalar(0) ? Scalar(0) : total;
}

/// Expected entropy of the observation given the state, under `beliefs`.
template <typename Scalar>
Scalar ambiguity(const LikelihoodMatrix<Scalar>& likelihood, const Categorical<Scalar>& beliefs) {
  detail::require(beliefs.size() == likelihood.num_states(), "belief size does not match likelihood");
  return beliefs.probs().dot(likelihood.column_entropy());
}

using CategoricalD = Categorical<double>;
using LikelihoodMatrixD = LikelihoodMatrix<double>;
using TransitionTensorD = TransitionTensor<double>;

}  // namespace btai
