#pragma once

#include <vector>

#include "evendct/plan_graph.hpp"

namespace evendct {

/// Plan produced by a fold that was allowed to leave a positive factor on each
/// output: original_output[i] == output_gain[i] * folded_output[i].
struct FoldResult {
  PlanGraph plan;
  std::vector<double> output_gain;
};

/// Local rewrites, iterated to a fixed point in this order:
///   1. Scale(Scale(x, a), b) -> Scale(x, a*b) when the inner scale has a
///      single consumer;
///   2. Scale(x, +-1) -> x with the sign folded into the consumer;
///   3. Add(Scale(x, a), +-Scale(y, b)) -> Scale(Add(x, +-Scale(y, b/a)), a)
///      when a and b share a non-dyadic mantissa and both scales have a
///      single consumer.
/// The plan's matrix is unchanged.
PlanGraph apply_local_rules(const PlanGraph& plan);

/// Constant folding. Runs apply_local_rules, then moves every power-of-two
/// factor forward through the graph: a pending 2^k rides along each signal,
/// two signals meeting at an add must carry the same pending factor, a general
/// multiplier absorbs whatever factor reaches it, and the outputs must end
/// with no pending factor. Shifts are only materialized where two pending
/// factors disagree. The result computes the same matrix and never costs more
/// multiplications, shifts or additions than the input.
PlanGraph fold(const PlanGraph& plan);

/// Like fold, but the outputs may keep an arbitrary positive factor, which is
/// reported in output_gain instead of being computed. Trailing multiplications
/// that feed outputs only are absorbed the same way. This is how a scaled
/// factorization pushes work into its diagonal.
FoldResult fold_free_outputs(const PlanGraph& plan);

}  // namespace evendct
