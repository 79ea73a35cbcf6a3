#include <stdexcept>
#include <string>
#include <vector>

#include "evendct/plan_graph.hpp"

namespace evendct {
namespace {

struct SignedRef {
  NodeId node;
  bool negated;
};

// Sums the adjoint contributions reaching one node. The sum starts from a
// positive term when one exists so that negation stays free.
SignedRef accumulate(PlanBuilder& b, const std::vector<SignedRef>& terms) {
  std::size_t first = 0;
  while (first < terms.size() && terms[first].negated) ++first;
  const bool result_negated = first == terms.size();
  if (result_negated) first = 0;
  NodeId acc = terms[first].node;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == first) continue;
    const bool subtract = terms[i].negated != result_negated;
    acc = b.add(acc, terms[i].node, subtract ? -1 : 1);
  }
  return {acc, result_negated};
}

}  // namespace

PlanGraph transpose(const PlanGraph& plan) {
  const auto nodes = plan.nodes();
  PlanBuilder b(plan.n_outputs(), plan.n_inputs());
  std::vector<std::vector<SignedRef>> contributions(nodes.size());

  for (std::size_t id = nodes.size(); id-- > 0;) {
    const Node& n = nodes[id];
    if (n.kind == NodeKind::kOutput) {
      contributions[n.a].push_back({b.input(n.index), false});
      continue;
    }
    auto& terms = contributions[id];
    if (terms.empty()) {
      if (n.kind == NodeKind::kInput)
        throw std::invalid_argument("transpose: input " + std::to_string(n.index) +
                                    " does not reach any output");
      continue;  // dead node
    }
    const SignedRef adj = accumulate(b, terms);
    switch (n.kind) {
      case NodeKind::kAdd:
        contributions[n.a].push_back(adj);
        contributions[n.b].push_back({adj.node, adj.negated != (n.sign_b < 0)});
        break;
      case NodeKind::kScale:
        if (n.constant.classify() == ConstantClass::kTrivial) {
          contributions[n.a].push_back({adj.node, adj.negated != (n.constant.sign() < 0)});
        } else {
          contributions[n.a].push_back({b.scale(adj.node, n.constant), adj.negated});
        }
        break;
      case NodeKind::kInput: {
        NodeId src = adj.node;
        if (adj.negated) src = b.scale(src, ExactConstant::power_of_two(0, -1));
        b.output(n.index, src);
        break;
      }
      case NodeKind::kOutput:
        break;
    }
    terms.clear();
    terms.shrink_to_fit();
  }
  return std::move(b).finish();
}

}  // namespace evendct
