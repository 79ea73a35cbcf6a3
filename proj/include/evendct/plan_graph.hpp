#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evendct/dense_matrix.hpp"
#include "evendct/exact_constant.hpp"

namespace evendct {

using NodeId = std::uint32_t;

enum class NodeKind { kInput, kAdd, kScale, kOutput };

/// One vertex of a linear flowgraph.
///   Input:  value = x[index]
///   Add:    value = node[a] + sign_b * node[b]
///   Scale:  value = constant * node[a]
///   Output: y[index] = node[a]
struct Node {
  NodeKind kind = NodeKind::kInput;
  std::uint32_t index = 0;
  NodeId a = 0;
  NodeId b = 0;
  int sign_b = 1;
  ExactConstant constant;
};

/// Operation count of a plan: general multiplications, additions (including
/// subtractions) and shifts (multiplications by +-2^k, k != 0).
struct OpCount {
  long long mu = 0;
  long long alpha = 0;
  long long sigma = 0;

  OpCount& operator+=(const OpCount& o) {
    mu += o.mu;
    alpha += o.alpha;
    sigma += o.sigma;
    return *this;
  }
  friend OpCount operator+(OpCount a, const OpCount& b) { return a += b; }
  friend OpCount operator-(const OpCount& a, const OpCount& b) {
    return {a.mu - b.mu, a.alpha - b.alpha, a.sigma - b.sigma};
  }
  friend bool operator==(const OpCount&, const OpCount&) = default;

  /// Cost order used by the optimizer: multiplications first, then shifts,
  /// then additions.
  friend std::strong_ordering cost_order(const OpCount& a, const OpCount& b) {
    if (auto c = a.mu <=> b.mu; c != 0) return c;
    if (auto c = a.sigma <=> b.sigma; c != 0) return c;
    return a.alpha <=> b.alpha;
  }

  std::string to_string() const;  // "mu,alpha,sigma"
};

/// An immutable directed acyclic linear flowgraph. Every node's sources precede
/// it in node order, each input index appears exactly once, and each output
/// index is written by exactly one Output node.
class PlanGraph {
 public:
  PlanGraph(std::size_t n_inputs, std::size_t n_outputs, std::vector<Node> nodes);

  std::size_t n_inputs() const { return n_inputs_; }
  std::size_t n_outputs() const { return n_outputs_; }
  std::span<const Node> nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }

  NodeId input_node(std::size_t index) const { return input_ids_.at(index); }
  NodeId output_node(std::size_t index) const { return output_ids_.at(index); }
  bool is_square() const { return n_inputs_ == n_outputs_; }

 private:
  std::size_t n_inputs_;
  std::size_t n_outputs_;
  std::vector<Node> nodes_;
  std::vector<NodeId> input_ids_;
  std::vector<NodeId> output_ids_;
};

/// Incremental construction of a PlanGraph. Input nodes 0..n_inputs-1 are
/// created up front and carry ids equal to their index.
class PlanBuilder {
 public:
  PlanBuilder(std::size_t n_inputs, std::size_t n_outputs);

  NodeId input(std::size_t index) const;
  NodeId add(NodeId a, NodeId b, int sign_b = 1);
  NodeId sub(NodeId a, NodeId b) { return add(a, b, -1); }
  NodeId scale(NodeId src, const ExactConstant& c);
  NodeId scale(NodeId src, double c) { return scale(src, ExactConstant::from_double(c)); }
  void output(std::size_t index, NodeId src);

  /// Splices `sub` into this builder with its inputs bound to `args`; returns
  /// the ids computing each of sub's outputs.
  std::vector<NodeId> append(const PlanGraph& sub, std::span<const NodeId> args);

  std::size_t size() const { return nodes_.size(); }
  PlanGraph finish() &&;

 private:
  NodeId push(Node n);

  std::size_t n_inputs_;
  std::size_t n_outputs_;
  std::vector<Node> nodes_;
};

/// Applies the plan to x in node order.
std::vector<double> evaluate(const PlanGraph& plan, std::span<const double> x);
/// Matrix of the plan, column i = evaluate(plan, e_i).
DenseMatrix to_matrix(const PlanGraph& plan);
/// Each Add costs one alpha; each Scale is charged by its constant class.
OpCount count_ops(const PlanGraph& plan);
/// Drops nodes that do not reach any output. Inputs are always kept.
PlanGraph prune(const PlanGraph& plan);
/// A plan wiring output i to input i.
PlanGraph identity_plan(std::size_t n);
/// Tellegen transposition: reverses every edge, so adds become fan-outs and
/// fan-outs become adds. For a square plan the operation count is unchanged.
PlanGraph transpose(const PlanGraph& plan);

}  // namespace evendct
