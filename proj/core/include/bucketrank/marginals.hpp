#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "bucketrank/distribution.hpp"
#include "bucketrank/ranking.hpp"

namespace bucketrank {

/// Pairwise marginals p(i, j) = P{i ranked before j} with observation counts.
///
/// Observed pairs satisfy p(i, j) + p(j, i) = 1. Unobserved pairs follow the
/// 0/0 = 0 convention: both directions hold 0 and count(i, j) is 0, so callers
/// can tell them apart from a genuine 0 estimate.
class PairwiseMatrix {
 public:
  /// Count sentinel for marginals computed exactly from a distribution.
  static constexpr double kExactCount = std::numeric_limits<double>::infinity();

  PairwiseMatrix() = default;
  explicit PairwiseMatrix(std::size_t n);

  /// Exact marginals from a generator f(i, j) giving p(i, j) for i < j.
  template <class F>
  static PairwiseMatrix from_upper(std::size_t n, F&& f) {
    PairwiseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, f(i, j));
    return m;
  }

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return p_[i * n_ + j]; }
  double count(std::size_t i, std::size_t j) const { return counts_[i * n_ + j]; }
  bool observed(std::size_t i, std::size_t j) const;

  /// Sets p(i, j) = value and p(j, i) = 1 - value.
  void set(std::size_t i, std::size_t j, double value, double count = kExactCount);
  /// Sets both directions independently (estimators keep their own ratios).
  void set_pair(std::size_t i, std::size_t j, double p_ij, double p_ji, double count);

  /// First unobserved pair (i < j), if any.
  std::optional<std::pair<std::size_t, std::size_t>> first_unobserved() const;
  bool fully_observed() const { return !first_unobserved().has_value(); }
  /// Throws UnobservedPair unless (i, j) is observed.
  void require_observed(std::size_t i, std::size_t j) const;
  void require_fully_observed() const;

  /// Copy where every unobserved pair is imputed with p = value both ways
  /// (use 0.5 for indifference). Imputed pairs count as observed.
  PairwiseMatrix filled(double value = 0.5) const;
  bool imputed(std::size_t i, std::size_t j) const { return imputed_[i * n_ + j] != 0; }

 private:
  std::size_t n_ = 0;
  std::vector<double> p_;
  std::vector<double> counts_;
  std::vector<unsigned char> imputed_;
};

/// Triplet marginals p(i, j, k) = P{i before j before k} for distinct items.
class TripletTensor {
 public:
  TripletTensor() = default;
  explicit TripletTensor(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return p_[(i * n_ + j) * n_ + k];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, double value) {
    p_[(i * n_ + j) * n_ + k] = value;
  }

  /// p(i, j) = sum_{k != i, j} (p(i,j,k) + p(i,k,j) + p(k,i,j)) / (n - 2). Needs n >= 3.
  PairwiseMatrix to_pairwise() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> p_;
};

/// A single observed duel, `winner` preferred to `loser`.
struct Comparison {
  Item winner = 0;
  Item loser = 0;
  double weight = 1.0;
};

class PairwiseDataset {
 public:
  PairwiseDataset() = default;
  explicit PairwiseDataset(std::size_t n) : n_(n) {}

  void add(Item winner, Item loser, double weight = 1.0);

  std::size_t n() const noexcept { return n_; }
  const std::vector<Comparison>& comparisons() const noexcept { return comparisons_; }
  std::size_t size() const noexcept { return comparisons_.size(); }
  double total_weight() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<Comparison> comparisons_;
};

PairwiseMatrix pairwise_from_rankings(const RankingDataset& data);
PairwiseMatrix pairwise_from_comparisons(const PairwiseDataset& data);
TripletTensor triplets_from_rankings(const RankingDataset& data);

struct ExactMarginals {
  PairwiseMatrix pairwise;
  TripletTensor triplets;
};

/// Full summation over the support; pair counts carry kExactCount.
ExactMarginals exact_marginals(const DiscreteRankingDistribution& dist);
PairwiseMatrix exact_pairwise(const DiscreteRankingDistribution& dist);

}  // namespace bucketrank
