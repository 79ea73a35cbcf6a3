#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <vector>

#include "evendct/dense_matrix.hpp"
#include "evendct/plan_graph.hpp"

namespace evendct {

/// A scaled DCT-II: C2_N = Pi * diag(delta) * matrix(plan).
/// `pi` is a permutation with Pi(k, pi[k]) = 1, so output k of the full
/// transform is delta[pi[k]] * plan_output[pi[k]].
struct ScaledFactorization {
  PlanGraph plan;
  std::vector<std::size_t> pi;
  std::vector<double> delta;
};

/// Pi * diag(delta) * to_matrix(plan).
DenseMatrix reconstruct_matrix(const ScaledFactorization& sf);
/// Full (unscaled) DCT-II of x computed through the scaled plan.
std::vector<double> apply_scaled(const ScaledFactorization& sf, std::span<const double> x);

/// N = q * 2^m with q odd.
struct Length {
  std::size_t q = 1;
  unsigned m = 0;
};
Length decompose(std::size_t n);

// Short base transforms. The unscaled 2- and 3-point plans cost (1,2,0) and
// (1,4,1). The scaled ones carry their output factors as explicit Scale nodes;
// folding them moves those factors into delta.
PlanGraph base_plan_2();
ScaledFactorization base_scaled_2();
PlanGraph base_plan_3();
ScaledFactorization base_scaled_3();
/// Direct inner products with dct2_matrix(q), one multiplication per entry
/// outside {0, +-1, +-2^k}. q must be odd; q = 1 is the identity.
PlanGraph dense_base_plan(std::size_t q);

/// Folds a scaled factorization, moving output factors into delta.
ScaledFactorization fold(const ScaledFactorization& sf);

/// Short transforms at which the recursions stop, keyed by length.
/// Lengths 2 and 3 hold the hand-derived plans; other odd lengths fall back to
/// dense_base_plan. Extra plans can be loaded from plan files; every stored
/// plan is checked against the dense oracle when it is added.
class BaseLibrary {
 public:
  BaseLibrary();

  static const BaseLibrary& standard();

  PlanGraph unscaled(std::size_t q) const;
  /// Scaled base, already folded.
  ScaledFactorization scaled(std::size_t q) const;

  void set_unscaled(std::size_t q, PlanGraph plan);
  void set_scaled(std::size_t q, ScaledFactorization sf);

  /// Loads a plan file (see plan_io.hpp); a file carrying pi/delta registers a
  /// scaled base, otherwise an unscaled one. Throws std::runtime_error naming
  /// the file if it fails to parse or does not match the oracle.
  void load_plan_file(const std::filesystem::path& path);

  std::vector<std::size_t> stored_lengths() const;

 private:
  std::map<std::size_t, PlanGraph> unscaled_;
  std::map<std::size_t, ScaledFactorization> scaled_;
};

/// DCT-II via the even/odd split with the DCT-IV half replaced by R C2 D
/// (the recursion of C.W. Kok). Odd N and N = 2 come straight from the base
/// library.
PlanGraph kok_plan(std::size_t n, const BaseLibrary& lib = BaseLibrary::standard());

/// Scaled DCT-II: the upper half recurses on the scaled transform, the lower
/// half runs J, R^T and a transposed Kok DCT-III, and its D factors are
/// deferred to delta. N must be even.
ScaledFactorization scaled_plan(std::size_t n, const BaseLibrary& lib = BaseLibrary::standard());

/// DCT-III as the transpose of kok_plan(n).
PlanGraph dct3_plan(std::size_t n, const BaseLibrary& lib = BaseLibrary::standard());
/// DCT-III as transpose(scaled plan) after diag(delta) and Pi^T.
PlanGraph dct3_plan_via_scaled(std::size_t n, const BaseLibrary& lib = BaseLibrary::standard());

/// Max-abs error of a plan (or scaled factorization) against dct2_matrix.
double oracle_error(const PlanGraph& plan);
double oracle_error(const ScaledFactorization& sf);

}  // namespace evendct
