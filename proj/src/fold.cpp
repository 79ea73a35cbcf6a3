#include "evendct/fold.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <utility>

namespace evendct {
namespace {

struct SignedRef {
  NodeId node = 0;
  bool negated = false;
};

SignedRef emit_add(PlanBuilder& b, SignedRef x, SignedRef y, int sign_y) {
  const bool neg_y = y.negated != (sign_y < 0);
  if (!x.negated) return {b.add(x.node, y.node, neg_y ? -1 : 1), false};
  if (!neg_y) return {b.add(y.node, x.node, -1), false};
  return {b.add(x.node, y.node, 1), true};
}

SignedRef emit_scale(PlanBuilder& b, SignedRef x, const ExactConstant& c) {
  if (c.classify() == ConstantClass::kTrivial) return {x.node, x.negated != (c.sign() < 0)};
  return {b.scale(x.node, x.negated ? c.negated() : c), false};
}

void emit_output(PlanBuilder& b, std::size_t index, SignedRef x) {
  NodeId src = x.node;
  if (x.negated) src = b.scale(src, ExactConstant::power_of_two(0, -1));
  b.output(index, src);
}

std::vector<int> fanout_of(const PlanGraph& g) {
  std::vector<int> fanout(g.nodes().size(), 0);
  for (const Node& n : g.nodes()) {
    switch (n.kind) {
      case NodeKind::kAdd:
        ++fanout[n.a];
        ++fanout[n.b];
        break;
      case NodeKind::kScale:
      case NodeKind::kOutput:
        ++fanout[n.a];
        break;
      case NodeKind::kInput:
        break;
    }
  }
  return fanout;
}

bool is_general_scale(const Node& n) {
  return n.kind == NodeKind::kScale && n.constant.classify() == ConstantClass::kGeneral;
}

PlanGraph local_rules_pass(const PlanGraph& g) {
  const auto nodes = g.nodes();
  const auto fanout = fanout_of(g);
  PlanBuilder b(g.n_inputs(), g.n_outputs());
  std::vector<SignedRef> ref(nodes.size());

  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    switch (n.kind) {
      case NodeKind::kInput:
        ref[id] = {b.input(n.index), false};
        break;
      case NodeKind::kScale: {
        const Node& src = nodes[n.a];
        if (src.kind == NodeKind::kScale && fanout[n.a] == 1) {
          // Chain merge; the inner scale is left dead.
          ref[id] = emit_scale(b, ref[src.a], src.constant * n.constant);
        } else {
          ref[id] = emit_scale(b, ref[n.a], n.constant);
        }
        break;
      }
      case NodeKind::kAdd: {
        const Node& x = nodes[n.a];
        const Node& y = nodes[n.b];
        if (n.a != n.b && is_general_scale(x) && is_general_scale(y) && fanout[n.a] == 1 &&
            fanout[n.b] == 1 && x.constant.same_mantissa(y.constant)) {
          const ExactConstant ratio = y.constant * x.constant.inverse();
          const SignedRef inner = emit_scale(b, ref[y.a], ratio);
          const SignedRef sum = emit_add(b, ref[x.a], inner, n.sign_b);
          ref[id] = emit_scale(b, sum, x.constant);
        } else {
          ref[id] = emit_add(b, ref[n.a], ref[n.b], n.sign_b);
        }
        break;
      }
      case NodeKind::kOutput:
        emit_output(b, n.index, ref[n.a]);
        break;
    }
  }
  return prune(std::move(b).finish());
}

// Union-find over unknown power-of-two exponents. A Term is either a known
// exponent (var < 0) or an unknown plus a fixed offset.
struct Term {
  int var = -1;
  int offset = 0;
};

class ExponentUnifier {
 public:
  int fresh() {
    parent_.push_back(static_cast<int>(parent_.size()));
    to_parent_.push_back(0);
    bound_.emplace_back();
    return static_cast<int>(parent_.size()) - 1;
  }

  /// Collapses a term to a known exponent or to (root var, offset).
  Term resolve(Term t) {
    if (t.var < 0) return t;
    auto [root, off] = find(t.var);
    if (bound_[root]) return {-1, *bound_[root] + off + t.offset};
    return {root, off + t.offset};
  }

  /// Makes the two terms equal if possible.
  bool unify(Term a, Term b) {
    a = resolve(a);
    b = resolve(b);
    if (a.var < 0 && b.var < 0) return a.offset == b.offset;
    if (a.var < 0) std::swap(a, b);
    if (b.var < 0) {
      bound_[a.var] = b.offset - a.offset;
      return true;
    }
    if (a.var == b.var) return a.offset == b.offset;
    // value(b.var) + b.offset == value(a.var) + a.offset
    parent_[b.var] = a.var;
    to_parent_[b.var] = a.offset - b.offset;
    return true;
  }

  /// Known exponent of a term; unknowns that were never pinned resolve to 0.
  int value(Term t) {
    t = resolve(t);
    return t.offset;
  }

 private:
  std::pair<int, int> find(int v) {
    int off = 0;
    int r = v;
    while (parent_[r] != r) {
      off += to_parent_[r];
      r = parent_[r];
    }
    // Path compression.
    int cur = v;
    int cur_off = off;
    while (parent_[cur] != cur) {
      const int next = parent_[cur];
      const int next_off = cur_off - to_parent_[cur];
      parent_[cur] = r;
      to_parent_[cur] = cur_off;
      cur = next;
      cur_off = next_off;
    }
    return {r, off};
  }

  std::vector<int> parent_;
  std::vector<int> to_parent_;
  std::vector<std::optional<int>> bound_;
};

struct OutputSpec {
  NodeId src = 0;
  bool negated = false;
  double gain = 1.0;
};

FoldResult propagate_dyadic(const PlanGraph& g, bool free_outputs) {
  const auto nodes = g.nodes();
  const auto fanout = fanout_of(g);

  std::vector<OutputSpec> outputs(g.n_outputs());
  for (std::size_t i = 0; i < g.n_outputs(); ++i) {
    OutputSpec& o = outputs[i];
    o.src = nodes[g.output_node(i)].a;
    if (!free_outputs) continue;
    // Multipliers whose every consumer is an output can be absorbed entirely.
    while (nodes[o.src].kind == NodeKind::kScale) {
      std::size_t out_consumers = 0;
      for (std::size_t j = 0; j < g.n_outputs(); ++j)
        if (nodes[g.output_node(j)].a == o.src) ++out_consumers;
      if (static_cast<int>(out_consumers) != fanout[o.src]) break;
      const ExactConstant& c = nodes[o.src].constant;
      o.gain *= std::abs(c.value());
      o.negated = o.negated != (c.sign() < 0);
      o.src = nodes[o.src].a;
    }
  }

  ExponentUnifier unifier;
  std::vector<Term> pending(nodes.size());
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    switch (n.kind) {
      case NodeKind::kInput:
        pending[id] = {-1, 0};
        break;
      case NodeKind::kScale:
        if (n.constant.is_unit_mantissa()) {
          Term t = pending[n.a];
          t.offset += n.constant.exponent();
          pending[id] = t;
        } else {
          pending[id] = {unifier.fresh(), 0};
        }
        break;
      case NodeKind::kAdd: {
        if (unifier.unify(pending[n.a], pending[n.b])) {
          pending[id] = pending[n.a];
        } else {
          // Disagreement: keep the smaller exponent, a shift fixes the other.
          const Term a = unifier.resolve(pending[n.a]);
          const Term b = unifier.resolve(pending[n.b]);
          pending[id] = a.offset <= b.offset ? a : b;
        }
        break;
      }
      case NodeKind::kOutput:
        if (!free_outputs) unifier.unify(pending[outputs[n.index].src], Term{-1, 0});
        break;
    }
  }

  std::vector<int> exponent(nodes.size(), 0);
  for (std::size_t id = 0; id < nodes.size(); ++id) exponent[id] = unifier.value(pending[id]);

  PlanBuilder b(g.n_inputs(), g.n_outputs());
  std::vector<SignedRef> ref(nodes.size());
  std::map<std::pair<NodeId, int>, NodeId> shifted;
  auto adjust = [&](SignedRef r, int shift) -> SignedRef {
    if (shift == 0) return r;
    auto key = std::make_pair(r.node, shift);
    auto it = shifted.find(key);
    if (it == shifted.end()) it = shifted.emplace(key, b.scale(r.node, ExactConstant::power_of_two(shift))).first;
    return {it->second, r.negated};
  };

  FoldResult result{PlanGraph(1, 1, {Node{NodeKind::kInput, 0, 0, 0, 1, {}}, Node{NodeKind::kOutput, 0, 0, 0, 1, {}}}),
                    std::vector<double>(g.n_outputs(), 1.0)};
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    switch (n.kind) {
      case NodeKind::kInput:
        ref[id] = {b.input(n.index), false};
        break;
      case NodeKind::kScale: {
        const SignedRef src = ref[n.a];
        if (n.constant.is_unit_mantissa()) {
          ref[id] = {src.node, src.negated != (n.constant.sign() < 0)};
        } else {
          const ExactConstant c =
              n.constant * ExactConstant::power_of_two(exponent[n.a] - exponent[id]);
          ref[id] = emit_scale(b, src, c);
        }
        break;
      }
      case NodeKind::kAdd: {
        const SignedRef x = adjust(ref[n.a], exponent[n.a] - exponent[id]);
        const SignedRef y = adjust(ref[n.b], exponent[n.b] - exponent[id]);
        ref[id] = emit_add(b, x, y, n.sign_b);
        break;
      }
      case NodeKind::kOutput: {
        const OutputSpec& o = outputs[n.index];
        SignedRef r = ref[o.src];
        r.negated = r.negated != o.negated;
        if (free_outputs) {
          result.output_gain[n.index] = o.gain * std::ldexp(1.0, exponent[o.src]);
        } else {
          r = adjust(r, exponent[o.src]);
        }
        emit_output(b, n.index, r);
        break;
      }
    }
  }
  result.plan = prune(std::move(b).finish());
  return result;
}

bool dominates(const OpCount& a, const OpCount& b) {
  return a.mu <= b.mu && a.sigma <= b.sigma && a.alpha <= b.alpha;
}

FoldResult fold_impl(const PlanGraph& plan, bool free_outputs) {
  const OpCount original = count_ops(plan);
  PlanGraph local = apply_local_rules(plan);
  FoldResult folded = propagate_dyadic(local, free_outputs);
  if (dominates(count_ops(folded.plan), original)) return folded;
  if (dominates(count_ops(local), original))
    return {std::move(local), std::vector<double>(plan.n_outputs(), 1.0)};
  return {plan, std::vector<double>(plan.n_outputs(), 1.0)};
}

}  // namespace

PlanGraph apply_local_rules(const PlanGraph& plan) {
  PlanGraph current = prune(plan);
  OpCount cost = count_ops(current);
  std::size_t size = current.nodes().size();
  for (int round = 0; round < 64; ++round) {
    PlanGraph next = local_rules_pass(current);
    const OpCount next_cost = count_ops(next);
    const std::size_t next_size = next.nodes().size();
    const bool progress = cost_order(next_cost, cost) < 0 ||
                          (next_cost == cost && next_size < size);
    if (!progress) break;
    current = std::move(next);
    cost = next_cost;
    size = next_size;
  }
  return current;
}

PlanGraph fold(const PlanGraph& plan) { return fold_impl(plan, false).plan; }

FoldResult fold_free_outputs(const PlanGraph& plan) { return fold_impl(plan, true); }

}  // namespace evendct
