#include <bucketrank/marginals.hpp>
#include <bucketrank/synth.hpp>
#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"

using namespace bucketrank;

namespace {

RankingDataset id_id_id_swap() {
  RankingDataset d(3);
  for (int k = 0; k < 3; ++k) d.add(Ranking::identity(3));
  d.add(Ranking::identity(3).with_swapped(0, 1));
  return d;
}

}  // namespace

TEST(Marginals, FromRankingsExamples) {
  const auto p = pairwise_from_rankings(id_id_id_swap());
  EXPECT_DOUBLE_EQ(p(0, 1), 0.75);
  EXPECT_DOUBLE_EQ(p(0, 2), 1.0);
  EXPECT_DOUBLE_EQ(p(1, 2), 1.0);
  EXPECT_DOUBLE_EQ(p.count(0, 1), 4.0);

  RankingDataset one(4);
  const auto sigma = Ranking::from_ordering({2, 0, 3, 1});
  one.add(sigma);
  const auto q = pairwise_from_rankings(one);
  for (Item i = 0; i < 4; ++i)
    for (Item j = 0; j < 4; ++j)
      if (i != j) {
        EXPECT_EQ(q(i, j), sigma.prefers(i, j) ? 1.0 : 0.0);
      }

  RankingDataset both(4);
  both.add(sigma);
  both.add(sigma.reversed());
  const auto h = pairwise_from_rankings(both);
  for (Item i = 0; i < 4; ++i)
    for (Item j = 0; j < 4; ++j)
      if (i != j) {
        EXPECT_EQ(h(i, j), 0.5);
      }

  EXPECT_THROW(pairwise_from_rankings(RankingDataset(3)), InvalidInput);
}

TEST(Marginals, FromComparisonsFollowsZeroOverZero) {
  PairwiseDataset d(3);
  d.add(0, 1);
  d.add(1, 0);
  const auto p = pairwise_from_comparisons(d);
  EXPECT_EQ(p(0, 1), 0.5);
  EXPECT_EQ(p.count(0, 1), 2.0);
  EXPECT_EQ(p(0, 2), 0.0);
  EXPECT_EQ(p(2, 0), 0.0);
  EXPECT_EQ(p.count(0, 2), 0.0);
  EXPECT_FALSE(p.observed(0, 2));
  EXPECT_THROW(p.require_fully_observed(), UnobservedPair);

  PairwiseDataset w(2);
  w.add(0, 1, 3.0);
  w.add(1, 0, 1.0);
  EXPECT_EQ(pairwise_from_comparisons(w)(0, 1), 0.75);

  PairwiseDataset all(3);
  all.add(2, 0);
  all.add(2, 0);
  EXPECT_EQ(pairwise_from_comparisons(all)(2, 0), 1.0);

  EXPECT_THROW(d.add(1, 1), InvalidInput);
}

TEST(Marginals, UnobservedPairErrorNamesPair) {
  PairwiseDataset d(3);
  d.add(0, 1);
  d.add(1, 2);
  try {
    pairwise_from_comparisons(d).require_fully_observed();
    FAIL();
  } catch (const UnobservedPair& e) {
    EXPECT_EQ(e.first(), 0u);
    EXPECT_EQ(e.second(), 2u);
    EXPECT_NE(std::string(e.what()).find("(1,3)"), std::string::npos);
  }
}

TEST(Marginals, FillImputesOnlyMissingPairs) {
  PairwiseDataset d(3);
  d.add(0, 1);
  const auto p = pairwise_from_comparisons(d).filled(0.5);
  EXPECT_TRUE(p.fully_observed());
  EXPECT_EQ(p(0, 1), 1.0);
  EXPECT_FALSE(p.imputed(0, 1));
  EXPECT_EQ(p(0, 2), 0.5);
  EXPECT_EQ(p(2, 0), 0.5);
  EXPECT_TRUE(p.imputed(2, 0));
}

TEST(Marginals, TripletExamples) {
  RankingDataset id(3);
  id.add(Ranking::identity(3));
  const auto t = triplets_from_rankings(id);
  EXPECT_EQ(t(0, 1, 2), 1.0);
  EXPECT_EQ(t(0, 2, 1) + t(1, 0, 2) + t(1, 2, 0) + t(2, 0, 1) + t(2, 1, 0), 0.0);

  RankingDataset other(3);
  other.add(Ranking::from_ordering({1, 0, 2}));
  EXPECT_EQ(triplets_from_rankings(other)(1, 0, 2), 1.0);

  const auto uniform = sample(DiscreteRankingDistribution::uniform(3), 60000, 9);
  const auto u = triplets_from_rankings(uniform);
  const double sd = std::sqrt((1.0 / 6.0) * (5.0 / 6.0) / 60000.0);
  for (const auto& sigma : all_rankings(3)) {
    const auto o = sigma.ordering();
    EXPECT_NEAR(u(o[0], o[1], o[2]), 1.0 / 6.0, 3 * sd);
  }
}

TEST(Marginals, ExactExamples) {
  const auto dirac = exact_marginals(DiscreteRankingDistribution::dirac(Ranking::identity(4)));
  for (Item i = 0; i < 4; ++i)
    for (Item j = i + 1; j < 4; ++j) EXPECT_EQ(dirac.pairwise(i, j), 1.0);

  const auto uniform = exact_marginals(DiscreteRankingDistribution::uniform(4));
  for (Item i = 0; i < 4; ++i)
    for (Item j = 0; j < 4; ++j) {
      if (i == j) continue;
      EXPECT_NEAR(uniform.pairwise(i, j), 0.5, 1e-15);
      for (Item k = 0; k < 4; ++k)
        if (k != i && k != j) {
          EXPECT_NEAR(uniform.triplets(i, j, k), 1.0 / 6.0, 1e-15);
        }
    }

  const auto mix = DiscreteRankingDistribution::from_weights(
      3, {{Ranking::identity(3), 0.75}, {Ranking::identity(3).with_swapped(0, 1), 0.25}});
  const auto m = exact_pairwise(mix);
  EXPECT_EQ(m(0, 1), 0.75);
  EXPECT_EQ(m(0, 2), 1.0);
  EXPECT_EQ(m(1, 2), 1.0);
  EXPECT_EQ(m.count(0, 1), PairwiseMatrix::kExactCount);

  EXPECT_THROW(exact_marginals(DiscreteRankingDistribution::uniform(9)), CapExceeded);
}

TEST(Marginals, ExactMatchesOracleAndTripletIdentity) {
  gen::Engine e(21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + t % 4;
    const auto dist = gen::random_distribution(n, e);
    const auto ex = exact_marginals(dist);
    const auto ref = oracle::pairwise(gen::to_law(dist), static_cast<int>(n));
    const auto from_triplets = ex.triplets.to_pairwise();
    for (Item i = 0; i < n; ++i)
      for (Item j = 0; j < n; ++j) {
        if (i == j) continue;
        EXPECT_NEAR(ex.pairwise(i, j), ref[i][j], 1e-12);
        EXPECT_NEAR(ex.pairwise(i, j) + ex.pairwise(j, i), 1.0, 1e-12);
        EXPECT_NEAR(from_triplets(i, j), ex.pairwise(i, j), 1e-12);
      }
  }
}

TEST(Marginals, EmpiricalTripletIdentityAndComplement) {
  gen::Engine e(8);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + t % 5;
    RankingDataset d(n);
    for (int s = 0; s < 40; ++s) d.add(gen::random_ranking(n, e), 1.0 + gen::between(e, 0, 3));
    const auto p = pairwise_from_rankings(d);
    const auto q = triplets_from_rankings(d).to_pairwise();
    for (Item i = 0; i < n; ++i)
      for (Item j = 0; j < n; ++j) {
        if (i == j) continue;
        EXPECT_NEAR(p(i, j) + p(j, i), 1.0, 1e-12);
        EXPECT_NEAR(q(i, j), p(i, j), 1e-12);
      }
  }
}

TEST(Marginals, EmpiricalConvergesToExact) {
  gen::Engine e(4);
  const auto dist = gen::random_distribution(5, e);
  const auto exact = exact_pairwise(dist);
  const std::size_t N = 100000;
  const auto p = pairwise_from_rankings(sample(dist, N, 1));
  for (Item i = 0; i < 5; ++i)
    for (Item j = 0; j < 5; ++j) {
      if (i == j) continue;
      const double q = exact(i, j);
      const double sd = std::sqrt(q * (1 - q) / N);
      EXPECT_LE(std::fabs(p(i, j) - q), 3 * sd + 1e-12);
    }
}
