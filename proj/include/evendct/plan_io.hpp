#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evendct/plan_graph.hpp"

// Plan file format (JSON):
//
//   {
//     "format": "evendct-plan", "version": 1,
//     "n_inputs": 2, "n_outputs": 2,
//     "nodes": [
//       {"id": 0, "op": "input",  "index": 0},
//       {"id": 1, "op": "input",  "index": 1},
//       {"id": 2, "op": "add",    "a": 0, "b": 1, "sign": 1},
//       {"id": 3, "op": "scale",  "src": 2,
//        "constant": {"sign": 1, "k": -1, "mantissa": 1.4142135623730951}},
//       {"id": 4, "op": "output", "index": 0, "src": 3},
//       ...
//     ],
//     "counts": {"mu": 1, "alpha": 2, "sigma": 0},
//     "pi": [0, 1], "delta": [1.0, 0.7071067811865476]
//   }
//
// "id" must equal the node's position. A constant's value is
// sign * 2^k * mantissa with mantissa in [1, 2). "counts" is informational and
// ignored when reading. "pi" and "delta" are present only for scaled
// factorizations: full output k = delta[pi[k]] * plan output pi[k].
namespace evendct {

struct PlanFile {
  PlanGraph plan;
  std::optional<std::vector<std::size_t>> pi;
  std::optional<std::vector<double>> delta;
};

std::string to_json(const PlanGraph& plan, const std::vector<std::size_t>* pi = nullptr,
                    const std::vector<double>* delta = nullptr);
PlanFile plan_from_json(const std::string& text);
PlanFile read_plan_file(const std::filesystem::path& path);

/// Graphviz rendering: inputs x<i> and outputs y<i> as boxes, adds as circles,
/// scales as labelled diamonds. Dashed edges are subtracted operands.
std::string to_dot(const PlanGraph& plan);

}  // namespace evendct
