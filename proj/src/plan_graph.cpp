#include "evendct/plan_graph.hpp"

#include <cmath>
#include <stdexcept>

namespace evendct {
namespace {

[[noreturn]] void bad_plan(const std::string& msg) {
  throw std::invalid_argument("PlanGraph: " + msg);
}

constexpr NodeId kNone = static_cast<NodeId>(-1);

}  // namespace

std::string OpCount::to_string() const {
  return std::to_string(mu) + "," + std::to_string(alpha) + "," + std::to_string(sigma);
}

PlanGraph::PlanGraph(std::size_t n_inputs, std::size_t n_outputs, std::vector<Node> nodes)
    : n_inputs_(n_inputs),
      n_outputs_(n_outputs),
      nodes_(std::move(nodes)),
      input_ids_(n_inputs, kNone),
      output_ids_(n_outputs, kNone) {
  if (n_inputs == 0 || n_outputs == 0) bad_plan("input and output counts must be positive");
  std::vector<bool> consumed_output(nodes_.size(), false);
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    auto check_src = [&](NodeId src) {
      if (src >= id) bad_plan("node " + std::to_string(id) + " reads a later node " + std::to_string(src));
      if (nodes_[src].kind == NodeKind::kOutput)
        bad_plan("node " + std::to_string(id) + " reads output node " + std::to_string(src));
    };
    switch (n.kind) {
      case NodeKind::kInput:
        if (n.index >= n_inputs) bad_plan("input index out of range");
        if (input_ids_[n.index] != kNone) bad_plan("duplicate input " + std::to_string(n.index));
        input_ids_[n.index] = static_cast<NodeId>(id);
        break;
      case NodeKind::kAdd:
        check_src(n.a);
        check_src(n.b);
        if (n.sign_b != 1 && n.sign_b != -1) bad_plan("add sign must be +-1");
        break;
      case NodeKind::kScale:
        check_src(n.a);
        break;
      case NodeKind::kOutput:
        check_src(n.a);
        if (n.index >= n_outputs) bad_plan("output index out of range");
        if (output_ids_[n.index] != kNone) bad_plan("duplicate output " + std::to_string(n.index));
        output_ids_[n.index] = static_cast<NodeId>(id);
        break;
    }
  }
  for (std::size_t i = 0; i < n_inputs; ++i)
    if (input_ids_[i] == kNone) bad_plan("missing input " + std::to_string(i));
  for (std::size_t i = 0; i < n_outputs; ++i)
    if (output_ids_[i] == kNone) bad_plan("missing output " + std::to_string(i));
}

PlanBuilder::PlanBuilder(std::size_t n_inputs, std::size_t n_outputs)
    : n_inputs_(n_inputs), n_outputs_(n_outputs) {
  nodes_.reserve(n_inputs * 8);
  for (std::size_t i = 0; i < n_inputs; ++i) {
    Node n;
    n.kind = NodeKind::kInput;
    n.index = static_cast<std::uint32_t>(i);
    nodes_.push_back(n);
  }
}

NodeId PlanBuilder::input(std::size_t index) const {
  if (index >= n_inputs_) throw std::out_of_range("PlanBuilder: input index out of range");
  return static_cast<NodeId>(index);
}

NodeId PlanBuilder::push(Node n) {
  nodes_.push_back(n);
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId PlanBuilder::add(NodeId a, NodeId b, int sign_b) {
  Node n;
  n.kind = NodeKind::kAdd;
  n.a = a;
  n.b = b;
  n.sign_b = sign_b;
  return push(n);
}

NodeId PlanBuilder::scale(NodeId src, const ExactConstant& c) {
  Node n;
  n.kind = NodeKind::kScale;
  n.a = src;
  n.constant = c;
  return push(n);
}

void PlanBuilder::output(std::size_t index, NodeId src) {
  Node n;
  n.kind = NodeKind::kOutput;
  n.index = static_cast<std::uint32_t>(index);
  n.a = src;
  push(n);
}

std::vector<NodeId> PlanBuilder::append(const PlanGraph& sub, std::span<const NodeId> args) {
  if (args.size() != sub.n_inputs()) throw std::invalid_argument("PlanBuilder::append: arity mismatch");
  std::vector<NodeId> remap(sub.nodes().size(), kNone);
  std::vector<NodeId> outs(sub.n_outputs(), kNone);
  for (std::size_t id = 0; id < sub.nodes().size(); ++id) {
    const Node& n = sub.nodes()[id];
    switch (n.kind) {
      case NodeKind::kInput:
        remap[id] = args[n.index];
        break;
      case NodeKind::kAdd:
        remap[id] = add(remap[n.a], remap[n.b], n.sign_b);
        break;
      case NodeKind::kScale:
        remap[id] = scale(remap[n.a], n.constant);
        break;
      case NodeKind::kOutput:
        outs[n.index] = remap[n.a];
        break;
    }
  }
  return outs;
}

PlanGraph PlanBuilder::finish() && {
  return PlanGraph(n_inputs_, n_outputs_, std::move(nodes_));
}

std::vector<double> evaluate(const PlanGraph& plan, std::span<const double> x) {
  if (x.size() != plan.n_inputs())
    throw std::invalid_argument("evaluate: expected " + std::to_string(plan.n_inputs()) +
                                " inputs, got " + std::to_string(x.size()));
  for (double v : x)
    if (std::isnan(v)) throw std::invalid_argument("evaluate: NaN in input");
  const auto nodes = plan.nodes();
  std::vector<double> value(nodes.size(), 0.0);
  std::vector<double> y(plan.n_outputs(), 0.0);
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    switch (n.kind) {
      case NodeKind::kInput:
        value[id] = x[n.index];
        break;
      case NodeKind::kAdd:
        value[id] = n.sign_b > 0 ? value[n.a] + value[n.b] : value[n.a] - value[n.b];
        break;
      case NodeKind::kScale:
        value[id] = n.constant.value() * value[n.a];
        break;
      case NodeKind::kOutput:
        y[n.index] = value[n.a];
        break;
    }
  }
  return y;
}

DenseMatrix to_matrix(const PlanGraph& plan) {
  DenseMatrix m(plan.n_outputs(), plan.n_inputs());
  std::vector<double> e(plan.n_inputs(), 0.0);
  for (std::size_t c = 0; c < plan.n_inputs(); ++c) {
    e[c] = 1.0;
    const auto col = evaluate(plan, e);
    for (std::size_t r = 0; r < col.size(); ++r) m(r, c) = col[r];
    e[c] = 0.0;
  }
  return m;
}

OpCount count_ops(const PlanGraph& plan) {
  OpCount count;
  for (const Node& n : plan.nodes()) {
    if (n.kind == NodeKind::kAdd) {
      ++count.alpha;
    } else if (n.kind == NodeKind::kScale) {
      switch (n.constant.classify()) {
        case ConstantClass::kTrivial:
          break;
        case ConstantClass::kShift:
          ++count.sigma;
          break;
        case ConstantClass::kGeneral:
          ++count.mu;
          break;
      }
    }
  }
  return count;
}

PlanGraph prune(const PlanGraph& plan) {
  const auto nodes = plan.nodes();
  std::vector<bool> live(nodes.size(), false);
  for (std::size_t id = nodes.size(); id-- > 0;) {
    const Node& n = nodes[id];
    if (n.kind == NodeKind::kOutput || n.kind == NodeKind::kInput) live[id] = true;
    if (!live[id]) continue;
    if (n.kind == NodeKind::kAdd) {
      live[n.a] = true;
      live[n.b] = true;
    } else if (n.kind == NodeKind::kScale || n.kind == NodeKind::kOutput) {
      live[n.a] = true;
    }
  }
  std::vector<NodeId> remap(nodes.size(), kNone);
  std::vector<Node> kept;
  kept.reserve(nodes.size());
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    if (!live[id]) continue;
    Node n = nodes[id];
    if (n.kind != NodeKind::kInput) n.a = remap[n.a];
    if (n.kind == NodeKind::kAdd) n.b = remap[n.b];
    remap[id] = static_cast<NodeId>(kept.size());
    kept.push_back(n);
  }
  return PlanGraph(plan.n_inputs(), plan.n_outputs(), std::move(kept));
}

PlanGraph identity_plan(std::size_t n) {
  PlanBuilder b(n, n);
  for (std::size_t i = 0; i < n; ++i) b.output(i, b.input(i));
  return std::move(b).finish();
}

}  // namespace evendct
