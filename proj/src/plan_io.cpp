#include "evendct/plan_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace evendct {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "evendct-plan";
constexpr int kVersion = 1;

json constant_to_json(const ExactConstant& c) {
  return json{{"sign", c.sign()}, {"k", c.exponent()}, {"mantissa", c.mantissa()}};
}

ExactConstant constant_from_json(const json& j) {
  const double mantissa = j.at("mantissa").get<double>();
  if (mantissa < 1.0 || mantissa >= 2.0) throw std::invalid_argument("constant mantissa outside [1, 2)");
  return ExactConstant(j.at("sign").get<int>(), j.at("k").get<int>(), mantissa);
}

}  // namespace

std::string to_json(const PlanGraph& plan, const std::vector<std::size_t>* pi,
                    const std::vector<double>* delta) {
  json nodes = json::array();
  const auto all = plan.nodes();
  for (std::size_t id = 0; id < all.size(); ++id) {
    const Node& n = all[id];
    json j{{"id", id}};
    switch (n.kind) {
      case NodeKind::kInput:
        j["op"] = "input";
        j["index"] = n.index;
        break;
      case NodeKind::kAdd:
        j["op"] = "add";
        j["a"] = n.a;
        j["b"] = n.b;
        j["sign"] = n.sign_b;
        break;
      case NodeKind::kScale:
        j["op"] = "scale";
        j["src"] = n.a;
        j["constant"] = constant_to_json(n.constant);
        break;
      case NodeKind::kOutput:
        j["op"] = "output";
        j["index"] = n.index;
        j["src"] = n.a;
        break;
    }
    nodes.push_back(std::move(j));
  }
  const OpCount c = count_ops(plan);
  json doc{{"format", kFormat},
           {"version", kVersion},
           {"n_inputs", plan.n_inputs()},
           {"n_outputs", plan.n_outputs()},
           {"nodes", std::move(nodes)},
           {"counts", {{"mu", c.mu}, {"alpha", c.alpha}, {"sigma", c.sigma}}}};
  if (pi) doc["pi"] = *pi;
  if (delta) doc["delta"] = *delta;
  return doc.dump(1) + "\n";
}

PlanFile plan_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("format").get<std::string>() != kFormat) throw std::invalid_argument("not an evendct plan");
  if (doc.at("version").get<int>() != kVersion) throw std::invalid_argument("unsupported plan version");
  const auto n_in = doc.at("n_inputs").get<std::size_t>();
  const auto n_out = doc.at("n_outputs").get<std::size_t>();
  std::vector<Node> nodes;
  for (const json& j : doc.at("nodes")) {
    if (j.contains("id") && j.at("id").get<std::size_t>() != nodes.size())
      throw std::invalid_argument("node id " + j.at("id").dump() + " out of sequence");
    Node n;
    const std::string op = j.at("op").get<std::string>();
    if (op == "input") {
      n.kind = NodeKind::kInput;
      n.index = j.at("index").get<std::uint32_t>();
    } else if (op == "add") {
      n.kind = NodeKind::kAdd;
      n.a = j.at("a").get<NodeId>();
      n.b = j.at("b").get<NodeId>();
      n.sign_b = j.at("sign").get<int>();
    } else if (op == "scale") {
      n.kind = NodeKind::kScale;
      n.a = j.at("src").get<NodeId>();
      n.constant = constant_from_json(j.at("constant"));
    } else if (op == "output") {
      n.kind = NodeKind::kOutput;
      n.index = j.at("index").get<std::uint32_t>();
      n.a = j.at("src").get<NodeId>();
    } else {
      throw std::invalid_argument("unknown node op '" + op + "'");
    }
    nodes.push_back(n);
  }
  PlanFile file{PlanGraph(n_in, n_out, std::move(nodes)), std::nullopt, std::nullopt};
  if (doc.contains("pi") != doc.contains("delta"))
    throw std::invalid_argument("pi and delta must be given together");
  if (doc.contains("pi")) {
    file.pi = doc.at("pi").get<std::vector<std::size_t>>();
    file.delta = doc.at("delta").get<std::vector<double>>();
    if (file.pi->size() != n_out || file.delta->size() != n_out)
      throw std::invalid_argument("pi/delta length must equal n_outputs");
    std::vector<bool> seen(n_out, false);
    for (std::size_t p : *file.pi) {
      if (p >= n_out || seen[p]) throw std::invalid_argument("pi is not a permutation");
      seen[p] = true;
    }
    for (double d : *file.delta)
      if (!(d > 0.0)) throw std::invalid_argument("delta entries must be positive");
  }
  return file;
}

PlanFile read_plan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return plan_from_json(ss.str());
}

std::string to_dot(const PlanGraph& plan) {
  std::ostringstream out;
  out << "digraph plan {\n  rankdir=LR;\n";
  const auto nodes = plan.nodes();
  auto name = [&](NodeId id) {
    const Node& n = nodes[id];
    if (n.kind == NodeKind::kInput) return "x" + std::to_string(n.index);
    return "n" + std::to_string(id);
  };
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const Node& n = nodes[id];
    const auto nid = static_cast<NodeId>(id);
    switch (n.kind) {
      case NodeKind::kInput:
        out << "  " << name(nid) << " [label=\"x" << n.index << "\", shape=box];\n";
        break;
      case NodeKind::kAdd:
        out << "  " << name(nid) << " [label=\"+\", shape=circle];\n";
        out << "  " << name(n.a) << " -> " << name(nid) << ";\n";
        out << "  " << name(n.b) << " -> " << name(nid) << (n.sign_b < 0 ? " [style=dashed];\n" : ";\n");
        break;
      case NodeKind::kScale:
        out << "  " << name(nid) << " [label=\"" << n.constant.to_string() << "\", shape=diamond];\n";
        out << "  " << name(n.a) << " -> " << name(nid) << ";\n";
        break;
      case NodeKind::kOutput:
        out << "  y" << n.index << " [label=\"y" << n.index << "\", shape=box];\n";
        out << "  " << name(n.a) << " -> y" << n.index << ";\n";
        break;
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace evendct
