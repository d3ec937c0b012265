#include "bucketrank/search.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "bucketrank/consensus.hpp"
#include "bucketrank/distortion.hpp"
#include "bucketrank/errors.hpp"
#include "bucketrank/synth.hpp"

namespace bucketrank {

namespace {

// Values closer than this are treated as ties and resolved by order.
constexpr double kTie = 1e-12;

void require_items(const PairwiseMatrix& p, std::size_t n, const char* who) {
  if (p.n() != n) throw DimensionError(std::string(who) + ": item counts differ");
}

// Natural log of the multinomial coefficient of `shape`.
double log_multinomial(const Shape& shape) {
  const BigInt count = count_shape(shape);
  if (count < BigInt(1) << 53) return std::log(count.convert_to<double>());
  double out = std::lgamma(static_cast<double>(shape.total()) + 1.0);
  for (std::size_t part : shape.parts()) out -= std::lgamma(static_cast<double>(part) + 1.0);
  return out;
}

template <class Visit>
void compose(std::size_t remaining, std::size_t parts_left, std::vector<std::size_t>& prefix,
             Visit& visit) {
  if (parts_left == 1) {
    prefix.push_back(remaining);
    visit(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t first = 1; first + (parts_left - 1) <= remaining; ++first) {
    prefix.push_back(first);
    compose(remaining - first, parts_left - 1, prefix, visit);
    prefix.pop_back();
  }
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::exhaustive: return "exhaustive";
    case Method::segmentation: return "segmentation";
    case Method::bumerank: return "bumerank";
  }
  return "exhaustive";
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::too_few_buckets: return "too_few_buckets";
    case StopReason::tolerance_reached: return "tolerance_reached";
    case StopReason::dimension_limit: return "dimension_limit";
  }
  return "too_few_buckets";
}

std::string_view to_string(PenaltyMode m) {
  return m == PenaltyMode::monte_carlo ? "monte_carlo" : "analytic";
}

SearchResult make_result(BucketOrder order, const PairwiseMatrix& p, Method method) {
  SearchResult out;
  out.distortion = lambda_kendall(order, p);
  out.dimension = dimension(order);
  out.order = std::move(order);
  out.method = method;
  return out;
}

SearchResult exhaustive_min(const PairwiseMatrix& p, const Shape& shape, std::uint64_t cap) {
  require_items(p, shape.total(), "exhaustive_min");
  if (shape.size() > 1) p.require_fully_observed();
  std::vector<std::size_t> best_labels;
  double best = std::numeric_limits<double>::infinity();
  for_each_labeling(shape, cap, [&](std::span<const std::size_t> labels) {
    const double value = lambda_kendall(labels, p);
    if (best_labels.empty() || value < best - kTie) {
      best = value;
      best_labels.assign(labels.begin(), labels.end());
    }
  });
  return make_result(BucketOrder::from_labels(best_labels), p, Method::exhaustive);
}

SearchResult segment_result(const PairwiseMatrix& p, const Ranking& consensus, const Shape& shape) {
  require_items(p, consensus.size(), "segment_result");
  return make_result(BucketOrder::segment(consensus, shape), p, Method::segmentation);
}

SearchResult best_segmentation(const PairwiseMatrix& p, const Ranking& consensus, std::size_t K) {
  const std::size_t n = consensus.size();
  require_items(p, n, "best_segmentation");
  if (K == 0 || K > n) {
    throw InvalidInput("best_segmentation: K must lie in [1, " + std::to_string(n) + "]");
  }
  p.require_fully_observed();

  // intra[s][e]: reversal mass p(o_b, o_a) over positions s <= a < b <= e.
  std::vector<std::vector<double>> intra(n, std::vector<double>(n, 0.0));
  for (std::size_t e = 1; e < n; ++e) {
    double column = 0.0;
    for (std::size_t s = e; s-- > 0;) {
      column += p(consensus.item_at(e), consensus.item_at(s));
      intra[s][e] = intra[s][e - 1] + column;
    }
  }

  // kept[k][s]: best intra mass covering positions s..n-1 with k segments.
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> kept(K + 1, std::vector<double>(n + 1, kNone));
  for (std::size_t s = 0; s < n; ++s) kept[1][s] = intra[s][n - 1];
  for (std::size_t k = 2; k <= K; ++k) {
    for (std::size_t s = 0; s + k <= n; ++s) {
      for (std::size_t e = s; e + k <= n; ++e) {
        kept[k][s] = std::max(kept[k][s], intra[s][e] + kept[k - 1][e + 1]);
      }
    }
  }

  std::vector<std::size_t> parts;
  std::size_t s = 0;
  for (std::size_t k = K; k > 1; --k) {
    std::size_t e = s;
    while (intra[s][e] + kept[k - 1][e + 1] < kept[k][s] - kTie) ++e;
    parts.push_back(e - s + 1);
    s = e + 1;
  }
  parts.push_back(n - s);
  return segment_result(p, consensus, Shape(std::move(parts)));
}

void for_each_segmentation(const PairwiseMatrix& p, const Ranking& consensus,
                           const std::function<void(const ScanRow&)>& visit) {
  const std::size_t n = consensus.size();
  require_items(p, n, "segmentation_scan");
  if (n == 0) throw InvalidInput("segmentation_scan: no items");
  if (n > kMaxScanItems) {
    throw CapExceeded("segmentation_scan: " + std::to_string(n) + " items exceed the limit of " +
                      std::to_string(kMaxScanItems));
  }
  std::vector<std::size_t> labels(n);
  std::vector<std::size_t> prefix;
  auto emit = [&](const std::vector<std::size_t>& parts) {
    std::size_t pos = 0;
    for (std::size_t k = 0; k < parts.size(); ++k)
      for (std::size_t r = 0; r < parts[k]; ++r) labels[consensus.item_at(pos++)] = k;
    ScanRow row;
    row.shape = Shape(parts);
    row.distortion = lambda_kendall(labels, p);
    row.dimension = dimension(row.shape);
    visit(row);
  };
  for (std::size_t K = 1; K <= n; ++K) compose(n, K, prefix, emit);
}

std::vector<ScanRow> segmentation_scan(const PairwiseMatrix& p, const Ranking& consensus) {
  std::vector<ScanRow> rows;
  for_each_segmentation(p, consensus, [&](const ScanRow& row) { rows.push_back(row); });
  return rows;
}

BumerankResult bumerank(const PairwiseMatrix& p, double epsilon,
                        const std::optional<BigInt>& max_dimension) {
  if (!(epsilon >= 0.0)) throw InvalidInput("bumerank: epsilon must be non-negative");
  if (max_dimension && *max_dimension < 0) throw InvalidInput("bumerank: negative maximum dimension");
  p.require_fully_observed();

  BumerankResult out;
  BucketOrder order = BucketOrder::singletons(copeland(p));
  double distortion = lambda_kendall(order, p);
  BigInt dim = 0;

  while (true) {
    if (!(distortion > epsilon)) {
      out.stop = StopReason::tolerance_reached;
      break;
    }
    if (order.size() < 3) {
      out.stop = StopReason::too_few_buckets;
      break;
    }
    std::size_t best_k = 0;
    double best_delta = -1.0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      double delta = 0.0;
      for (Item i : order.bucket(k))
        for (Item j : order.bucket(k + 1)) delta += p(j, i);
      if (delta > best_delta + kTie) {
        best_delta = delta;
        best_k = k;
      }
    }
    const std::size_t left = order.bucket(best_k).size();
    const std::size_t right = order.bucket(best_k + 1).size();
    BigInt merged_dim = (dim + 1) * binomial(left + right, left) - 1;
    if (max_dimension && merged_dim > *max_dimension) {
      out.stop = StopReason::dimension_limit;
      break;
    }
    order = order.merged(best_k);
    distortion = lambda_kendall(order, p);
    dim = merged_dim;
    out.trace.push_back({best_k, best_delta, distortion, dim, order.size()});
  }
  out.result = make_result(std::move(order), p, Method::bumerank);
  return out;
}

double analytic_penalty(const Shape& shape, double sample_size) {
  if (!(sample_size > 0.0)) throw InvalidInput("analytic_penalty: sample size must be positive");
  const double k = static_cast<double>(kappa(shape));
  return 2.0 * k * std::sqrt(2.0 * log_multinomial(shape) / sample_size);
}

PenaltyEstimate rademacher_penalty(const Shape& shape, const RankingDataset& data, PenaltyMode mode,
                                   std::size_t reps, std::uint64_t seed, std::uint64_t cap) {
  if (shape.total() != data.n()) throw DimensionError("rademacher_penalty: item counts differ");
  if (data.empty() || !(data.total_weight() > 0.0)) {
    throw InvalidInput("rademacher_penalty: empty dataset");
  }
  PenaltyEstimate out;
  out.mode = mode;
  if (mode == PenaltyMode::analytic) {
    out.value = analytic_penalty(shape, data.total_weight());
    return out;
  }
  if (reps == 0) throw InvalidInput("rademacher_penalty: needs at least one repetition");
  require_enumerable(shape, cap);
  for (const auto& entry : data.entries()) {
    if (entry.weight != std::floor(entry.weight)) {
      throw InvalidInput("rademacher_penalty: Monte-Carlo mode needs integral weights");
    }
  }

  const std::size_t n = data.n();
  const double total = data.total_weight();
  std::vector<std::vector<std::size_t>> orders;
  for_each_labeling(shape, cap, [&](std::span<const std::size_t> labels) {
    orders.emplace_back(labels.begin(), labels.end());
  });

  Rng rng(seed);
  std::vector<double> signed_wins(n * n);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    std::fill(signed_wins.begin(), signed_wins.end(), 0.0);
    for (const auto& [sigma, weight] : data.entries()) {
      const auto copies = static_cast<std::uint64_t>(weight);
      const double s = 2.0 * static_cast<double>(rng.fair_binomial(copies)) - static_cast<double>(copies);
      if (s == 0.0) continue;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          signed_wins[sigma.item_at(a) * n + sigma.item_at(b)] += s;
    }
    double best = 0.0;
    for (const auto& labels : orders) {
      double v = 0.0;
      for (Item i = 0; i < n; ++i)
        for (Item j = 0; j < n; ++j)
          if (labels[i] < labels[j]) v += signed_wins[j * n + i];
      best = std::max(best, std::fabs(v) / total);
    }
    const double pen = 2.0 * best;
    sum += pen;
    sum_sq += pen * pen;
  }
  const double mean = sum / static_cast<double>(reps);
  const double var =
      reps > 1 ? std::max(0.0, (sum_sq - static_cast<double>(reps) * mean * mean) /
                                   static_cast<double>(reps - 1))
               : 0.0;
  out.value = mean;
  out.std_error = std::sqrt(var / static_cast<double>(reps));
  out.reps = reps;
  return out;
}

Selection select_model(std::span<const Candidate> candidates, const RankingDataset& data,
                       const SelectionOptions& options) {
  if (candidates.empty()) throw InvalidInput("select_model: empty candidate list");
  const PairwiseMatrix p = pairwise_from_rankings(data);
  std::optional<Ranking> consensus;

  Selection out;
  for (const auto& candidate : candidates) {
    if (candidate.shape.total() != data.n()) {
      throw DimensionError("select_model: candidate shape " + candidate.shape.to_string() +
                           " does not cover " + std::to_string(data.n()) + " items");
    }
    const bool enumerable = count_shape(candidate.shape) <= options.cap;
    const bool exhaustive = candidate.strategy == Strategy::exhaustive ||
                            (candidate.strategy == Strategy::automatic && enumerable);
    CandidateScore score;
    if (exhaustive) {
      score.fit = exhaustive_min(p, candidate.shape, options.cap);
    } else {
      if (!consensus) consensus = copeland(p);
      score.fit = segment_result(p, *consensus, candidate.shape);
    }
    const PenaltyMode mode =
        options.mode.value_or(enumerable ? PenaltyMode::monte_carlo : PenaltyMode::analytic);
    score.penalty = rademacher_penalty(candidate.shape, data, mode, options.reps, options.seed,
                                       options.cap);
    score.score = score.fit.distortion + score.penalty.value;
    out.scores.push_back(std::move(score));
  }
  for (std::size_t m = 1; m < out.scores.size(); ++m) {
    if (out.scores[m].score < out.scores[out.index].score) out.index = m;
  }
  return out;
}

BoundValues bound_formulas(const Shape& shape, double sample_size, double delta, double margin) {
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidInput("bound_formulas: delta must lie in (0, 1]");
  if (!(margin > 0.0)) throw InvalidInput("bound_formulas: margin h must be positive");
  if (!(sample_size >= 1.0)) throw InvalidInput("bound_formulas: sample size must be >= 1");
  const double n = static_cast<double>(shape.total());
  const double k = static_cast<double>(kappa(shape));
  const double log_mult = log_multinomial(shape);

  BoundValues out;
  out.generalization_tail = k * std::sqrt(2.0 * std::log(1.0 / delta) / sample_size);
  out.generalization_bound =
      4.0 * k * std::sqrt(2.0 * log_mult / sample_size) + out.generalization_tail;
  const double pairs = n * (n - 1.0) / 2.0;
  out.fast_rate_bound =
      std::exp2(pairs + 1.0) * n * n / margin * (log_mult - std::log(delta)) / sample_size;
  return out;
}

}  // namespace bucketrank
