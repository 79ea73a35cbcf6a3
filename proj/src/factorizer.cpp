#include "evendct/factorizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "evendct/fold.hpp"
#include "evendct/oracle.hpp"
#include "evendct/plan_io.hpp"

namespace evendct {
namespace {

constexpr double kBaseTolerance = 1e-10;

struct SignedRef {
  NodeId node;
  bool negated;
};

NodeId sum_terms(PlanBuilder& b, const std::vector<SignedRef>& terms) {
  std::size_t first = 0;
  while (first < terms.size() && terms[first].negated) ++first;
  const bool all_negative = first == terms.size();
  if (all_negative) first = 0;
  NodeId acc = terms[first].node;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i != first) acc = b.add(acc, terms[i].node, terms[i].negated != all_negative ? -1 : 1);
  }
  return all_negative ? b.scale(acc, ExactConstant::power_of_two(0, -1)) : acc;
}

void require_supported(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": N must be positive");
}

// Kok recursion emitted directly into `b`.
std::vector<NodeId> emit_kok(PlanBuilder& b, std::span<const NodeId> x, const BaseLibrary& lib) {
  const std::size_t n = x.size();
  if (n % 2 == 1 || n == 2) return b.append(lib.unscaled(n), x);

  const std::size_t h = n / 2;
  std::vector<NodeId> top(h);
  std::vector<NodeId> bottom(h);
  for (std::size_t i = 0; i < h; ++i) {
    top[i] = b.add(x[i], x[n - 1 - i]);
    bottom[i] = b.sub(x[h - 1 - i], x[h + i]);
  }
  const std::vector<NodeId> upper = emit_kok(b, top, lib);

  // J, then D.
  std::vector<NodeId> scaled(h);
  for (std::size_t i = 0; i < h; ++i) scaled[i] = b.scale(bottom[h - 1 - i], oracle::d_entry(h, i));
  const std::vector<NodeId> inner = emit_kok(b, scaled, lib);

  // R: z0 = y0 / 2, z_i = y_i - z_{i-1}.
  std::vector<NodeId> lower(h);
  lower[0] = b.scale(inner[0], ExactConstant::power_of_two(-1));
  for (std::size_t i = 1; i < h; ++i) lower[i] = b.sub(inner[i], lower[i - 1]);

  // P: interleave.
  std::vector<NodeId> out(n);
  for (std::size_t i = 0; i < h; ++i) {
    out[2 * i] = upper[i];
    out[2 * i + 1] = lower[i];
  }
  return out;
}

struct ScaledOutputs {
  std::vector<NodeId> out;
  std::vector<std::size_t> pi;
  std::vector<double> delta;
};

ScaledOutputs emit_scaled(PlanBuilder& b, std::span<const NodeId> x, const BaseLibrary& lib) {
  const std::size_t n = x.size();
  if (n % 2 == 1 || n == 2) {
    ScaledFactorization base = lib.scaled(n);
    return {b.append(base.plan, x), std::move(base.pi), std::move(base.delta)};
  }

  const std::size_t h = n / 2;
  std::vector<NodeId> top(h);
  std::vector<NodeId> bottom(h);
  for (std::size_t i = 0; i < h; ++i) {
    top[i] = b.add(x[i], x[n - 1 - i]);
    bottom[i] = b.sub(x[h - 1 - i], x[h + i]);
  }
  ScaledOutputs upper = emit_scaled(b, top, lib);

  // J, then R^T: w_{h-1} = v_{h-1}, w_j = v_j - w_{j+1}, w_0 = (v_0 - w_1) / 2.
  std::vector<NodeId> v(h);
  for (std::size_t i = 0; i < h; ++i) v[i] = bottom[h - 1 - i];
  std::vector<NodeId> w(h);
  w[h - 1] = v[h - 1];
  for (std::size_t j = h - 1; j-- > 0;) w[j] = b.sub(v[j], w[j + 1]);
  if (h == 1) w[0] = v[0];
  w[0] = b.scale(w[0], ExactConstant::power_of_two(-1));

  const std::vector<NodeId> lower = b.append(transpose(kok_plan(h, lib)), w);

  ScaledOutputs result;
  result.out = std::move(upper.out);
  result.out.insert(result.out.end(), lower.begin(), lower.end());
  result.pi.resize(n);
  for (std::size_t i = 0; i < h; ++i) {
    result.pi[2 * i] = upper.pi[i];
    result.pi[2 * i + 1] = h + i;
  }
  result.delta = std::move(upper.delta);
  for (std::size_t i = 0; i < h; ++i) result.delta.push_back(oracle::d_entry(h, i));
  return result;
}

void check_base(std::size_t q, const PlanGraph& plan) {
  if (plan.n_inputs() != q || plan.n_outputs() != q)
    throw std::invalid_argument("base plan for length " + std::to_string(q) + " has wrong shape");
  const double err = oracle_error(plan);
  if (!(err < kBaseTolerance))
    throw std::invalid_argument("base plan for length " + std::to_string(q) +
                                " does not match the DCT-II oracle (max error " +
                                std::to_string(err) + ")");
}

void check_base(std::size_t q, const ScaledFactorization& sf) {
  if (sf.plan.n_inputs() != q || sf.plan.n_outputs() != q || sf.pi.size() != q || sf.delta.size() != q)
    throw std::invalid_argument("scaled base for length " + std::to_string(q) + " has wrong shape");
  const double err = oracle_error(sf);
  if (!(err < kBaseTolerance))
    throw std::invalid_argument("scaled base for length " + std::to_string(q) +
                                " does not match the DCT-II oracle (max error " +
                                std::to_string(err) + ")");
}

}  // namespace

DenseMatrix reconstruct_matrix(const ScaledFactorization& sf) {
  const DenseMatrix m = to_matrix(sf.plan);
  if (sf.pi.size() != m.rows() || sf.delta.size() != m.rows())
    throw std::invalid_argument("ScaledFactorization: pi/delta size mismatch");
  DenseMatrix r(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const std::size_t src = sf.pi[k];
    if (src >= m.rows()) throw std::invalid_argument("ScaledFactorization: pi out of range");
    for (std::size_t c = 0; c < m.cols(); ++c) r(k, c) = sf.delta[src] * m(src, c);
  }
  return r;
}

std::vector<double> apply_scaled(const ScaledFactorization& sf, std::span<const double> x) {
  const std::vector<double> y = evaluate(sf.plan, x);
  std::vector<double> out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) out[k] = sf.delta[sf.pi[k]] * y[sf.pi[k]];
  return out;
}

Length decompose(std::size_t n) {
  if (n == 0) throw std::invalid_argument("decompose: N must be positive");
  Length len{n, 0};
  while (len.q % 2 == 0) {
    len.q /= 2;
    ++len.m;
  }
  return len;
}

PlanGraph base_plan_2() {
  PlanBuilder b(2, 2);
  b.output(0, b.add(0, 1));
  b.output(1, b.scale(b.sub(0, 1), oracle::cos_pi(1, 4)));
  return std::move(b).finish();
}

ScaledFactorization base_scaled_2() {
  // C2 = (1/sqrt2) [[sqrt2, sqrt2], [1, -1]]: the sqrt2 rides on the DC path.
  PlanBuilder b(2, 2);
  b.output(0, b.scale(b.add(0, 1), std::numbers::sqrt2));
  b.output(1, b.sub(0, 1));
  const double r = 1.0 / std::numbers::sqrt2;
  return {std::move(b).finish(), {0, 1}, {r, r}};
}

PlanGraph base_plan_3() {
  PlanBuilder b(3, 3);
  const NodeId s = b.add(0, 2);
  b.output(0, b.add(s, 1));
  b.output(1, b.scale(b.sub(0, 2), oracle::cos_pi(1, 6)));
  b.output(2, b.sub(b.scale(s, ExactConstant::power_of_two(-1)), 1));
  return std::move(b).finish();
}

ScaledFactorization base_scaled_3() {
  // C3 = (1/2) [[2, 2, 2], [2cos(pi/6), 0, -2cos(pi/6)], [1, -2, 1]].
  PlanBuilder b(3, 3);
  const NodeId s = b.add(0, 2);
  b.output(0, b.scale(b.add(s, 1), ExactConstant::power_of_two(1)));
  b.output(1, b.scale(b.sub(0, 2), 2.0 * oracle::cos_pi(1, 6)));
  b.output(2, b.sub(s, b.scale(1, ExactConstant::power_of_two(1))));
  return {std::move(b).finish(), {0, 1, 2}, {0.5, 0.5, 0.5}};
}

PlanGraph dense_base_plan(std::size_t q) {
  if (q == 0 || q % 2 == 0)
    throw std::invalid_argument("dense_base_plan: length must be odd, got " + std::to_string(q));
  if (q == 1) return identity_plan(1);
  const DenseMatrix c = oracle::dct2_matrix(q);
  PlanBuilder b(q, q);
  for (std::size_t k = 0; k < q; ++k) {
    std::vector<SignedRef> terms;
    for (std::size_t n = 0; n < q; ++n) {
      const double v = c(k, n);
      if (v == 0.0) continue;
      const ExactConstant coef = ExactConstant::from_double(v);
      if (coef.classify() == ConstantClass::kTrivial) {
        terms.push_back({static_cast<NodeId>(n), coef.sign() < 0});
      } else {
        terms.push_back({b.scale(static_cast<NodeId>(n), coef.magnitude()), coef.sign() < 0});
      }
    }
    b.output(k, sum_terms(b, terms));
  }
  return std::move(b).finish();
}

ScaledFactorization fold(const ScaledFactorization& sf) {
  FoldResult r = fold_free_outputs(sf.plan);
  std::vector<double> delta = sf.delta;
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] *= r.output_gain[i];
  return {std::move(r.plan), sf.pi, std::move(delta)};
}

BaseLibrary::BaseLibrary() {
  unscaled_.emplace(2, base_plan_2());
  unscaled_.emplace(3, base_plan_3());
  scaled_.emplace(2, fold(base_scaled_2()));
  scaled_.emplace(3, fold(base_scaled_3()));
}

const BaseLibrary& BaseLibrary::standard() {
  static const BaseLibrary lib;
  return lib;
}

PlanGraph BaseLibrary::unscaled(std::size_t q) const {
  if (auto it = unscaled_.find(q); it != unscaled_.end()) return it->second;
  return dense_base_plan(q);
}

ScaledFactorization BaseLibrary::scaled(std::size_t q) const {
  if (auto it = scaled_.find(q); it != scaled_.end()) return it->second;
  PlanGraph plan = unscaled(q);
  std::vector<std::size_t> pi(q);
  for (std::size_t i = 0; i < q; ++i) pi[i] = i;
  return {std::move(plan), std::move(pi), std::vector<double>(q, 1.0)};
}

void BaseLibrary::set_unscaled(std::size_t q, PlanGraph plan) {
  check_base(q, plan);
  unscaled_.insert_or_assign(q, std::move(plan));
}

void BaseLibrary::set_scaled(std::size_t q, ScaledFactorization sf) {
  check_base(q, sf);
  scaled_.insert_or_assign(q, std::move(sf));
}

void BaseLibrary::load_plan_file(const std::filesystem::path& path) {
  try {
    PlanFile file = read_plan_file(path);
    const std::size_t q = file.plan.n_inputs();
    if (file.pi && file.delta) {
      set_scaled(q, {std::move(file.plan), std::move(*file.pi), std::move(*file.delta)});
    } else {
      set_unscaled(q, std::move(file.plan));
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("plan file " + path.string() + ": " + e.what());
  }
}

std::vector<std::size_t> BaseLibrary::stored_lengths() const {
  std::vector<std::size_t> out;
  for (const auto& [q, plan] : unscaled_) out.push_back(q);
  for (const auto& [q, sf] : scaled_)
    if (!unscaled_.contains(q)) out.push_back(q);
  return out;
}

PlanGraph kok_plan(std::size_t n, const BaseLibrary& lib) {
  require_supported(n, "kok_plan");
  PlanBuilder b(n, n);
  std::vector<NodeId> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b.input(i);
  const std::vector<NodeId> y = emit_kok(b, x, lib);
  for (std::size_t i = 0; i < n; ++i) b.output(i, y[i]);
  return std::move(b).finish();
}

ScaledFactorization scaled_plan(std::size_t n, const BaseLibrary& lib) {
  require_supported(n, "scaled_plan");
  if (n % 2 != 0) throw std::invalid_argument("scaled_plan: N must be even, got " + std::to_string(n));
  PlanBuilder b(n, n);
  std::vector<NodeId> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b.input(i);
  ScaledOutputs s = emit_scaled(b, x, lib);
  for (std::size_t i = 0; i < n; ++i) b.output(i, s.out[i]);
  return {std::move(b).finish(), std::move(s.pi), std::move(s.delta)};
}

PlanGraph dct3_plan(std::size_t n, const BaseLibrary& lib) {
  return transpose(kok_plan(n, lib));
}

PlanGraph dct3_plan_via_scaled(std::size_t n, const BaseLibrary& lib) {
  const ScaledFactorization sf = scaled_plan(n, lib);
  PlanBuilder b(n, n);
  // u = diag(delta) Pi^T x, i.e. u[pi[k]] = delta[pi[k]] * x[k].
  std::vector<NodeId> u(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = sf.pi[k];
    u[j] = sf.delta[j] == 1.0 ? b.input(k) : b.scale(b.input(k), sf.delta[j]);
  }
  const std::vector<NodeId> y = b.append(transpose(sf.plan), u);
  for (std::size_t i = 0; i < n; ++i) b.output(i, y[i]);
  return std::move(b).finish();
}

double oracle_error(const PlanGraph& plan) {
  return max_abs_diff(to_matrix(plan), oracle::dct2_matrix(plan.n_inputs()));
}

double oracle_error(const ScaledFactorization& sf) {
  return max_abs_diff(reconstruct_matrix(sf), oracle::dct2_matrix(sf.plan.n_inputs()));
}

}  // namespace evendct
