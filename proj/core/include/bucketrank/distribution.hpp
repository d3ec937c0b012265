#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "bucketrank/bucket_order.hpp"
#include "bucketrank/errors.hpp"
#include "bucketrank/ranking.hpp"

namespace bucketrank {

/// Largest n for which explicit tables over S_n are built (8! = 40320 entries).
inline constexpr std::size_t kExactCap = 8;

/// Throws CapExceeded when n exceeds `cap`.
void require_exact(std::size_t n, std::size_t cap = kExactCap);

/// Visits every ranking of n items, rank vectors in lexicographic order.
template <class Visit>
void for_each_ranking(std::size_t n, Visit&& visit) {
  std::vector<std::size_t> ranks(n);
  std::iota(ranks.begin(), ranks.end(), std::size_t{0});
  do {
    visit(Ranking::from_ranks(ranks));
  } while (std::next_permutation(ranks.begin(), ranks.end()));
}

std::vector<Ranking> all_rankings(std::size_t n, std::size_t cap = kExactCap);

/// An explicit probability table over rankings of n items.
class DiscreteRankingDistribution {
 public:
  using Table = std::map<Ranking, double>;

  DiscreteRankingDistribution() = default;
  /// Validates: keys are rankings of n items, masses >= 0 summing to 1 (1e-12).
  DiscreteRankingDistribution(std::size_t n, Table mass);

  /// Sums duplicate rankings and rescales to total mass 1.
  static DiscreteRankingDistribution from_weights(std::size_t n,
                                                  const std::vector<std::pair<Ranking, double>>& weights);
  static DiscreteRankingDistribution dirac(const Ranking& sigma);
  static DiscreteRankingDistribution uniform(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  const Table& table() const noexcept { return mass_; }
  double probability(const Ranking& sigma) const;

 private:
  std::size_t n_ = 0;
  Table mass_;
};

/// Law of bucket_projection(Sigma, order) for Sigma ~ dist.
DiscreteRankingDistribution pushforward(const DiscreteRankingDistribution& dist,
                                        const BucketOrder& order);

struct WeightedRanking {
  Ranking ranking;
  double weight = 1.0;

  friend bool operator==(const WeightedRanking&, const WeightedRanking&) = default;
};

/// A sample of rankings with non-negative weights (multiplicities).
class RankingDataset {
 public:
  RankingDataset() = default;
  explicit RankingDataset(std::size_t n) : n_(n) {}

  void add(Ranking sigma, double weight = 1.0);

  std::size_t n() const noexcept { return n_; }
  const std::vector<WeightedRanking>& entries() const noexcept { return entries_; }
  std::vector<WeightedRanking>& entries() noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double total_weight() const noexcept { return total_; }

  friend bool operator==(const RankingDataset&, const RankingDataset&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<WeightedRanking> entries_;
  double total_ = 0.0;
};

}  // namespace bucketrank
