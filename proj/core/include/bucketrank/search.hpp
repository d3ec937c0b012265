#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bucketrank/bucket_order.hpp"
#include "bucketrank/combinatorics.hpp"
#include "bucketrank/distribution.hpp"
#include "bucketrank/marginals.hpp"

namespace bucketrank {

enum class Method { exhaustive, segmentation, bumerank };

std::string_view to_string(Method m);

struct SearchResult {
  BucketOrder order;
  double distortion = 0.0;
  Dimension dimension;
  Method method = Method::exhaustive;

  std::size_t size() const { return order.size(); }
  Shape shape() const { return order.shape(); }
};

/// Wraps an order into a result, recomputing distortion and dimension.
SearchResult make_result(BucketOrder order, const PairwiseMatrix& p, Method method);

/// Global minimizer of the distortion over all bucket orders of `shape`.
/// Value ties go to the lexicographically first order. Throws CapExceeded
/// when the shape has more than `cap` bucket orders.
SearchResult exhaustive_min(const PairwiseMatrix& p, const Shape& shape,
                            std::uint64_t cap = kDefaultEnumerationCap);

/// The segmentation of `consensus` with the given shape.
SearchResult segment_result(const PairwiseMatrix& p, const Ranking& consensus, const Shape& shape);

/// Best of the C(n-1, K-1) segmentations of `consensus` into K buckets, by
/// dynamic programming over intra-segment reversal mass. Among equal values
/// the lexicographically smallest shape wins.
SearchResult best_segmentation(const PairwiseMatrix& p, const Ranking& consensus, std::size_t K);

/// Largest n accepted by segmentation_scan (2^(n-1) rows).
inline constexpr std::size_t kMaxScanItems = 30;

struct ScanRow {
  Shape shape;
  double distortion = 0.0;
  Dimension dimension;
};

/// Streams one row per segmentation of `consensus`, ordered by (K, shape).
void for_each_segmentation(const PairwiseMatrix& p, const Ranking& consensus,
                           const std::function<void(const ScanRow&)>& visit);
std::vector<ScanRow> segmentation_scan(const PairwiseMatrix& p, const Ranking& consensus);

enum class StopReason { too_few_buckets, tolerance_reached, dimension_limit };

std::string_view to_string(StopReason r);

struct MergeStep {
  /// 0-based index of the left bucket of the merged pair.
  std::size_t bucket = 0;
  double delta = 0.0;
  /// Distortion and dimension after the merge.
  double distortion = 0.0;
  BigInt dimension;
  std::size_t size = 0;
};

struct BumerankResult {
  SearchResult result;
  std::vector<MergeStep> trace;
  StopReason stop = StopReason::too_few_buckets;
};

/// Bottom-up agglomeration from the singletons of the Copeland ranking:
/// repeatedly merges the adjacent pair with the largest reversal mass
/// Delta_k = sum_{i in C_k, j in C_{k+1}} p(j, i) (smallest k on ties) while
/// K >= 3 and the distortion exceeds `epsilon`, unless the merge would push
/// the dimension above `max_dimension` (unbounded when empty).
BumerankResult bumerank(const PairwiseMatrix& p, double epsilon = 0.0,
                        const std::optional<BigInt>& max_dimension = std::nullopt);

enum class PenaltyMode { monte_carlo, analytic };

std::string_view to_string(PenaltyMode m);

struct PenaltyEstimate {
  /// pen = 2 R_N(lambda), or its analytic upper bound.
  double value = 0.0;
  /// Monte-Carlo standard error of `value` (0 for the analytic mode).
  double std_error = 0.0;
  PenaltyMode mode = PenaltyMode::analytic;
  std::size_t reps = 0;
};

/// 2 kappa(lambda) sqrt(2 log(multinomial) / N).
double analytic_penalty(const Shape& shape, double sample_size);

/// Rademacher complexity penalty of the class of bucket orders of `shape`.
/// The Monte-Carlo mode draws `reps` sign vectors and needs integral weights.
PenaltyEstimate rademacher_penalty(const Shape& shape, const RankingDataset& data, PenaltyMode mode,
                                   std::size_t reps = 100, std::uint64_t seed = 0,
                                   std::uint64_t cap = kDefaultEnumerationCap);

enum class Strategy { automatic, exhaustive, segmentation };

struct Candidate {
  Shape shape;
  Strategy strategy = Strategy::automatic;
};

struct SelectionOptions {
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  /// Empty: Monte-Carlo when the shape is enumerable, analytic otherwise.
  std::optional<PenaltyMode> mode;
  std::uint64_t cap = kDefaultEnumerationCap;
};

struct CandidateScore {
  SearchResult fit;
  PenaltyEstimate penalty;
  double score = 0.0;
};

struct Selection {
  /// 0-based index of the selected candidate.
  std::size_t index = 0;
  std::vector<CandidateScore> scores;

  const CandidateScore& chosen() const { return scores[index]; }
};

/// Penalized empirical distortion minimization over the candidate shapes.
/// Score ties go to the earliest candidate.
Selection select_model(std::span<const Candidate> candidates, const RankingDataset& data,
                       const SelectionOptions& options = {});

struct BoundValues {
  /// kappa sqrt(2 log(1/delta) / N).
  double generalization_tail = 0.0;
  /// 4 * analytic Rademacher bound + tail (approximation term excluded).
  double generalization_bound = 0.0;
  /// (2^(C(n,2)+1) n^2 / h) log(multinomial / delta) / N.
  double fast_rate_bound = 0.0;
};

BoundValues bound_formulas(const Shape& shape, double sample_size, double delta, double margin);

}  // namespace bucketrank
