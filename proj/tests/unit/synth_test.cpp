#include <bucketrank/consensus.hpp>
#include <bucketrank/distortion.hpp>
#include <bucketrank/synth.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "generators.hpp"
#include "oracles.hpp"

using namespace bucketrank;

TEST(Rng, DeterministicAndInRange) {
  Rng a(5);
  Rng b(5);
  for (int k = 0; k < 100; ++k) EXPECT_EQ(a.next(), b.next());
  Rng r(1);
  std::vector<int> hits(7, 0);
  for (int k = 0; k < 7000; ++k) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    ++hits[v];
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  for (int h : hits) EXPECT_NEAR(h, 1000, 150);
  EXPECT_THROW(r.below(0), InvalidInput);
  for (int k = 0; k < 100; ++k) EXPECT_LE(r.fair_binomial(70), 70u);
  EXPECT_EQ(r.fair_binomial(0), 0u);
}

TEST(BucketUniform, Examples) {
  const auto sigma = Ranking::from_ordering({2, 0, 1});
  const auto dirac = bucket_uniform(BucketOrder::singletons(sigma));
  ASSERT_EQ(dirac.table().size(), 1u);
  EXPECT_EQ(dirac.probability(sigma), 1.0);

  const auto two = bucket_uniform(BucketOrder::from_buckets({{0}, {1, 2}}, 3));
  EXPECT_EQ(two.table().size(), 2u);
  EXPECT_EQ(two.probability(Ranking::from_ranks({0, 1, 2})), 0.5);
  EXPECT_EQ(two.probability(Ranking::from_ranks({0, 2, 1})), 0.5);

  const auto c = BucketOrder::segment(Ranking::identity(6), Shape({2, 3, 1}));
  EXPECT_EQ(bucket_uniform(c).table().size(), 12u);
  EXPECT_THROW(bucket_uniform(BucketOrder::single_bucket(9)), CapExceeded);
}

TEST(BucketUniform, ExactMarginals) {
  gen::Engine e(1);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + t % 7;
    const auto c = gen::random_bucket_order(n, e);
    const auto p = exact_pairwise(bucket_uniform(c));
    for (Item i = 0; i < n; ++i)
      for (Item j = 0; j < n; ++j) {
        if (c.precedes(i, j)) {
          EXPECT_EQ(p(j, i), 0.0);
        }
        if (i != j && c.tied(i, j)) {
          EXPECT_NEAR(p(i, j), 0.5, 1e-12);
        }
      }
  }
}

TEST(BucketProduct, FixtureAndDegenerateCases) {
  const auto p = exact_pairwise(four_item_fixture());
  EXPECT_NEAR(p(0, 1), 0.8, 1e-15);
  EXPECT_NEAR(p(2, 3), 0.7, 1e-15);
  for (Item i : {0, 1})
    for (Item j : {2, 3}) EXPECT_EQ(p(i, j), 1.0);
  EXPECT_EQ(transitivity_class(p).cls, TransitivityClass::strong);

  const auto c = BucketOrder::from_buckets({{3, 1}, {0}, {2, 4}}, 5);
  const std::vector<DiscreteRankingDistribution> diracs{
      DiscreteRankingDistribution::dirac(Ranking::from_ordering({1, 0})),
      DiscreteRankingDistribution::dirac(Ranking::identity(1)),
      DiscreteRankingDistribution::dirac(Ranking::identity(2))};
  const auto point = bucket_product(c, diracs);
  ASSERT_EQ(point.table().size(), 1u);
  EXPECT_EQ(point.table().begin()->first, Ranking::from_ordering({3, 1, 0, 2, 4}));

  const std::vector<DiscreteRankingDistribution> uniforms{
      DiscreteRankingDistribution::uniform(2), DiscreteRankingDistribution::uniform(1),
      DiscreteRankingDistribution::uniform(2)};
  const auto u = bucket_product(c, uniforms);
  const auto ref = bucket_uniform(c);
  ASSERT_EQ(u.table().size(), ref.table().size());
  for (const auto& [sigma, q] : ref.table()) EXPECT_NEAR(u.probability(sigma), q, 1e-15);

  EXPECT_THROW(bucket_product(c, std::vector<DiscreteRankingDistribution>(diracs.begin(), diracs.end() - 1)),
               DimensionError);
}

TEST(BucketProduct, ZeroDistortionAndStrongComponents) {
  gen::Engine e(2);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 6;
    const auto c = gen::random_bucket_order(n, e);
    const auto p = exact_pairwise(gen::strict_bucket_distribution(c, e));
    EXPECT_EQ(lambda_kendall(c, p), 0.0);
    EXPECT_TRUE(transitivity_class(p).strict);
  }
  const auto c = BucketOrder::from_buckets({{0, 1, 2}, {3, 4}}, 5);
  const std::vector<DiscreteRankingDistribution> within{Mallows(Ranking::identity(3), 1.0).exact(),
                                                         Mallows(Ranking::identity(2), 0.5).exact()};
  const auto p = exact_pairwise(bucket_product(c, within));
  EXPECT_EQ(transitivity_class(p).cls, TransitivityClass::strong);
}

TEST(Mallows, Examples) {
  const auto u = exact_pairwise(Mallows(Ranking::identity(4), 0.0).exact());
  for (Item i = 0; i < 4; ++i)
    for (Item j = 0; j < 4; ++j)
      if (i != j) {
        EXPECT_NEAR(u(i, j), 0.5, 1e-12);
      }

  const double theta = 0.7;
  const auto two = exact_pairwise(Mallows(Ranking::identity(2), theta).exact());
  EXPECT_NEAR(two(1, 0), std::exp(-theta) / (1 + std::exp(-theta)), 1e-15);

  const auto center = Ranking::from_ordering({3, 0, 4, 1, 2});
  const auto p = pairwise_from_rankings(sample(Mallows(center, 10.0), 10000, 6));
  const auto dirac = exact_pairwise(DiscreteRankingDistribution::dirac(center));
  for (Item i = 0; i < 5; ++i)
    for (Item j = 0; j < 5; ++j)
      if (i != j) {
        EXPECT_NEAR(p(i, j), dirac(i, j), 0.01);
      }

  EXPECT_THROW(Mallows(center, -0.1), InvalidInput);
}

TEST(Mallows, ExactIsStrictlyTransitiveAroundCenter) {
  gen::Engine e(3);
  for (double theta : {0.5, 1.0, 2.0}) {
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto center = gen::random_ranking(n, e);
      const auto p = exact_pairwise(Mallows(center, theta).exact());
      EXPECT_TRUE(transitivity_class(p).strict);
      EXPECT_EQ(copeland(p), center);
    }
  }
}

TEST(Mallows, SamplerMatchesExactTable) {
  gen::Engine e(4);
  for (std::size_t n = 2; n <= 6; ++n) {
    const Mallows m(gen::random_ranking(n, e), 0.4 + 0.2 * static_cast<double>(n));
    const auto exact = exact_pairwise(m.exact());
    const std::size_t N = 40000;
    const auto p = pairwise_from_rankings(sample(m, N, n));
    for (Item i = 0; i < n; ++i)
      for (Item j = 0; j < n; ++j) {
        if (i == j) continue;
        const double q = exact(i, j);
        EXPECT_LE(std::fabs(p(i, j) - q), 4 * std::sqrt(q * (1 - q) / N) + 1e-9);
      }
  }
}

TEST(Contaminate, Examples) {
  const auto data = sample(DiscreteRankingDistribution::uniform(4), 50, 1);
  EXPECT_EQ(contaminate(data, 0.0, 3), data);

  RankingDataset two(2);
  for (int k = 0; k < 10; ++k) two.add(k % 2 ? Ranking::identity(2) : Ranking::identity(2).reversed());
  const auto flipped = contaminate(two, 1.0, 3);
  for (std::size_t s = 0; s < two.size(); ++s) {
    EXPECT_EQ(flipped.entries()[s].ranking, two.entries()[s].ranking.reversed());
  }

  const auto big = sample(Mallows(Ranking::identity(6), 1.0), 2000, 7);
  const auto dirty = contaminate(big, 0.2, 7);
  ASSERT_EQ(dirty.size(), big.size());
  std::size_t changed = 0;
  for (std::size_t s = 0; s < big.size(); ++s) {
    const auto& a = big.entries()[s].ranking;
    const auto& b = dirty.entries()[s].ranking;
    if (a == b) continue;
    ++changed;
    std::size_t moved = 0;
    for (Item i = 0; i < 6; ++i) moved += a.rank(i) != b.rank(i);
    EXPECT_EQ(moved, 2u);
  }
  EXPECT_EQ(changed, 400u);
  EXPECT_EQ(contaminate(big, 0.2, 7), dirty);
  EXPECT_THROW(contaminate(big, 1.5, 7), InvalidInput);
}

TEST(Contaminate, RoundsHalfToEven) {
  RankingDataset d(3);
  for (int k = 0; k < 10; ++k) d.add(Ranking::identity(3));
  auto changed = [&](double rate) {
    const auto out = contaminate(d, rate, 1);
    std::size_t c = 0;
    for (std::size_t s = 0; s < d.size(); ++s) c += out.entries()[s].ranking != d.entries()[s].ranking;
    return c;
  };
  EXPECT_EQ(changed(0.25), 2u);  // 2.5 -> 2
  EXPECT_EQ(changed(0.75), 8u);  // 7.5 -> 8
  EXPECT_EQ(changed(0.05), 0u);  // 0.5 -> 0
}

TEST(Sample, Examples) {
  const auto sigma = Ranking::from_ordering({1, 2, 0});
  const auto d = sample(DiscreteRankingDistribution::dirac(sigma), 25, 1);
  EXPECT_EQ(d.size(), 25u);
  EXPECT_EQ(d.total_weight(), 25.0);
  for (const auto& entry : d.entries()) EXPECT_EQ(entry.ranking, sigma);

  gen::Engine e(5);
  const auto dist = gen::random_distribution(4, e);
  EXPECT_EQ(sample(dist, 1000, 9), sample(dist, 1000, 9));
  EXPECT_NE(sample(dist, 1000, 9), sample(dist, 1000, 10));

  const auto exact = exact_pairwise(dist);
  const std::size_t N = 100000;
  const auto p = pairwise_from_rankings(sample(dist, N, 1));
  for (Item i = 0; i < 4; ++i)
    for (Item j = 0; j < 4; ++j) {
      if (i == j) continue;
      const double q = exact(i, j);
      EXPECT_LE(std::fabs(p(i, j) - q), 3 * std::sqrt(q * (1 - q) / N) + 1e-12);
    }
}
