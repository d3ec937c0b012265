#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "bucketrank/bucket_order.hpp"
#include "bucketrank/distribution.hpp"
#include "bucketrank/ranking.hpp"

namespace bucketrank {

/// Seeded generator: std::mt19937_64 plus portable integer/real draws, so
/// datasets depend only on the seed and not on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound);
  /// +1 or -1 with equal probability.
  int sign() { return (next() >> 63) != 0 ? 1 : -1; }
  /// Binomial(trials, 1/2) by counting bits.
  std::uint64_t fair_binomial(std::uint64_t trials);

 private:
  std::mt19937_64 engine_;
};

/// Uniform law over the linear extensions of `order`.
DiscreteRankingDistribution bucket_uniform(const BucketOrder& order);

/// Independent within-bucket blocks laid out in bucket order. `within[k]` is a
/// law over rankings of bucket k, whose local item r is order.bucket(k)[r].
DiscreteRankingDistribution bucket_product(const BucketOrder& order,
                                           std::span<const DiscreteRankingDistribution> within);

/// Law on two items putting local item 0 first with probability `p_first`.
DiscreteRankingDistribution two_item(double p_first);

/// The 4-item test law: buckets {1,2} then {3,4}, P(1 before 2) = 0.8 and
/// P(3 before 4) = 0.7, independent.
DiscreteRankingDistribution four_item_fixture();

/// Mallows model P(sigma) proportional to exp(-theta * kendall_tau(sigma, center)).
class Mallows {
 public:
  Mallows(Ranking center, double theta);

  const Ranking& center() const noexcept { return center_; }
  double theta() const noexcept { return theta_; }

  /// Repeated insertion: the center's items are inserted best first, each
  /// landing j places above the bottom of the current list with weight
  /// exp(-theta j).
  Ranking sample(Rng& rng) const;
  DiscreteRankingDistribution exact(std::size_t cap = kExactCap) const;

 private:
  Ranking center_;
  double theta_;
};

/// Swaps the ranks of one uniformly drawn item pair in round_half_even(rate * size)
/// rows drawn without replacement.
RankingDataset contaminate(const RankingDataset& data, double rate, std::uint64_t seed);

/// N independent unit-weight draws.
RankingDataset sample(const DiscreteRankingDistribution& dist, std::size_t count, std::uint64_t seed);
RankingDataset sample(const Mallows& model, std::size_t count, std::uint64_t seed);

}  // namespace bucketrank
