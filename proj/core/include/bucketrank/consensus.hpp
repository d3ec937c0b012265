#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bucketrank/distribution.hpp"
#include "bucketrank/marginals.hpp"
#include "bucketrank/ranking.hpp"

namespace bucketrank {

/// Width of the band around 1/2 treated as "p = 1/2".
inline constexpr double kHalfTolerance = 1e-9;

enum class TransitivityClass { none, weak, strict, strong };

std::string_view to_string(TransitivityClass c);

struct TransitivityReport {
  /// Strongest class satisfied; `strong` is reported only together with strictness.
  TransitivityClass cls = TransitivityClass::none;
  /// min_{i<j} |p(i,j) - 1/2|.
  double margin = 0.0;
  bool weak = false;
  bool strict = false;
  bool strong_condition = false;
  /// Ordered triples (i, j, k) with p(i,j) >= 1/2, p(j,k) >= 1/2 and p(i,k) < 1/2.
  std::vector<std::array<Item, 3>> violations;
};

TransitivityReport transitivity_class(const PairwiseMatrix& p, double tol = kHalfTolerance);

/// How Copeland score ties are broken.
struct TieRule {
  enum class Kind { lexicographic, random };
  Kind kind = Kind::lexicographic;
  std::uint64_t seed = 0;

  static TieRule lexicographic() { return {}; }
  static TieRule random(std::uint64_t seed) { return {Kind::random, seed}; }
};

/// Copeland ranking: item i is placed by its number of lost duels
/// #{j != i : p(i,j) < 1/2}; ties resolved by `rule`.
Ranking copeland(const PairwiseMatrix& p, TieRule rule = {}, double tol = kHalfTolerance);

/// Expected Kendall distance to `sigma` expressed through pairwise marginals.
double kemeny_cost(const Ranking& sigma, const PairwiseMatrix& p);

struct KemenyOptimum {
  double cost = 0.0;
  /// Set when p is strictly stochastically transitive.
  std::optional<Ranking> median;
};

/// L* = sum_{i<j} min(p(i,j), p(j,i)); refuses (PreconditionError) unless p is
/// weakly stochastically transitive.
KemenyOptimum kemeny_optimum(const PairwiseMatrix& p, double tol = kHalfTolerance);

struct KemenySolution {
  /// Lexicographically smallest rank vector among the minimizers.
  Ranking median;
  double cost = 0.0;
  std::vector<Ranking> argmin;
};

/// Exhaustive search over S_n (n <= kExactCap). Costs within 1e-12 of the
/// minimum are reported as minimizers.
KemenySolution kemeny_brute_force(const PairwiseMatrix& p);
/// Same search, scoring each candidate by direct expectation over `dist`.
KemenySolution kemeny_brute_force(const DiscreteRankingDistribution& dist);

}  // namespace bucketrank
