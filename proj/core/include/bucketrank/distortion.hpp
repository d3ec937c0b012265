#pragma once

#include <cstddef>
#include <span>
#include <tuple>
#include <vector>

#include "bucketrank/bucket_order.hpp"
#include "bucketrank/distribution.hpp"
#include "bucketrank/marginals.hpp"

namespace bucketrank {

/// Kendall distortion: sum over i before j in the order of p(j, i).
///
/// Pairs are accumulated in item-index order so that every caller obtains
/// bit-identical values for the same order and matrix.
double lambda_kendall(const BucketOrder& order, const PairwiseMatrix& p);
/// Same functional on a label vector (labels[i] = bucket of item i).
double lambda_kendall(std::span<const std::size_t> labels, const PairwiseMatrix& p);

/// Optimal-bucket-order cost sum_{i != j} |p(i,j) - q(i,j)| with q in {0, 1/2, 1}.
double obo_cost(const BucketOrder& order, const PairwiseMatrix& p);
/// sum_k sum_{i != j in C_k} |p(i,j) - 1/2|.
double obo_intra_term(const BucketOrder& order, const PairwiseMatrix& p);

/// Spearman (squared rho) distortion from triplet marginals. Needs n >= 3.
double lambda_spearman(const BucketOrder& order, const TripletTensor& t);

enum class Metric { kendall, spearman_sq };

/// E[d(Sigma, Sigma_C)] by summation over the table of `dist`.
double coupling_expected_distance(const BucketOrder& order, const DiscreteRankingDistribution& dist,
                                  Metric metric);

/// 2 * sum over i before j in `order` with p(i,j) < 1/2 of (1/2 - p(i,j)).
double excess_lower_bound(const BucketOrder& order, const PairwiseMatrix& p);

/// A joint law of two random rankings (a coupling of its two marginals).
class CouplingTable {
 public:
  explicit CouplingTable(std::size_t n) : n_(n) {}

  void add(const Ranking& a, const Ranking& b, double mass);

  std::size_t n() const noexcept { return n_; }
  const std::vector<std::tuple<Ranking, Ranking, double>>& entries() const noexcept {
    return entries_;
  }

  DiscreteRankingDistribution first_marginal() const;
  DiscreteRankingDistribution second_marginal() const;
  double expected_distance(Metric metric) const;

 private:
  std::size_t n_;
  std::vector<std::tuple<Ranking, Ranking, double>> entries_;
};

/// sum_{i<j} |p(i,j) - q(i,j)|.
double pairwise_l1(const PairwiseMatrix& p, const PairwiseMatrix& q);

}  // namespace bucketrank
