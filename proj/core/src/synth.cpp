#include "bucketrank/synth.hpp"

#include <bit>
#include <cfenv>
#include <cmath>
#include <numeric>
#include <string>

#include "bucketrank/errors.hpp"

namespace bucketrank {

namespace {
__extension__ using Wide = unsigned __int128;
}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("Rng::below: bound must be positive");
  // Lemire's multiply-and-reject.
  auto wide = static_cast<Wide>(next()) * bound;
  auto low = static_cast<std::uint64_t>(wide);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      wide = static_cast<Wide>(next()) * bound;
      low = static_cast<std::uint64_t>(wide);
    }
  }
  return static_cast<std::uint64_t>(wide >> 64);
}

std::uint64_t Rng::fair_binomial(std::uint64_t trials) {
  std::uint64_t heads = 0;
  for (; trials >= 64; trials -= 64) heads += static_cast<std::uint64_t>(std::popcount(next()));
  if (trials > 0) {
    const std::uint64_t mask = (std::uint64_t{1} << trials) - 1;
    heads += static_cast<std::uint64_t>(std::popcount(next() & mask));
  }
  return heads;
}

DiscreteRankingDistribution bucket_uniform(const BucketOrder& order) {
  require_exact(order.n());
  std::vector<DiscreteRankingDistribution> within;
  for (const auto& bucket : order.buckets()) {
    within.push_back(DiscreteRankingDistribution::uniform(bucket.size()));
  }
  return bucket_product(order, within);
}

DiscreteRankingDistribution bucket_product(const BucketOrder& order,
                                           std::span<const DiscreteRankingDistribution> within) {
  require_exact(order.n());
  if (within.size() != order.size()) {
    throw DimensionError("bucket_product: expected one law per bucket");
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (within[k].n() != order.bucket(k).size()) {
      throw DimensionError("bucket_product: law " + std::to_string(k + 1) +
                           " does not match its bucket size");
    }
  }

  DiscreteRankingDistribution::Table table;
  std::vector<Item> ordering;
  ordering.reserve(order.n());
  auto expand = [&](auto& self, std::size_t k, double mass) -> void {
    if (k == order.size()) {
      table[Ranking::from_ordering(ordering)] += mass;
      return;
    }
    const auto bucket = order.bucket(k);
    for (const auto& [local, q] : within[k].table()) {
      if (q == 0.0) continue;
      for (std::size_t pos = 0; pos < bucket.size(); ++pos) ordering.push_back(bucket[local.item_at(pos)]);
      self(self, k + 1, mass * q);
      ordering.resize(ordering.size() - bucket.size());
    }
  };
  expand(expand, 0, 1.0);
  return DiscreteRankingDistribution(order.n(), std::move(table));
}

DiscreteRankingDistribution two_item(double p_first) {
  if (!(p_first >= 0.0 && p_first <= 1.0)) throw InvalidInput("two_item: probability outside [0, 1]");
  DiscreteRankingDistribution::Table table;
  if (p_first > 0.0) table[Ranking::identity(2)] = p_first;
  if (p_first < 1.0) table[Ranking::identity(2).reversed()] = 1.0 - p_first;
  return DiscreteRankingDistribution(2, std::move(table));
}

DiscreteRankingDistribution four_item_fixture() {
  const auto order = BucketOrder::from_buckets({{0, 1}, {2, 3}}, 4);
  const std::vector<DiscreteRankingDistribution> within{two_item(0.8), two_item(0.7)};
  return bucket_product(order, within);
}

Mallows::Mallows(Ranking center, double theta) : center_(std::move(center)), theta_(theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw InvalidInput("Mallows: theta must be finite and non-negative");
  }
}

Ranking Mallows::sample(Rng& rng) const {
  const std::size_t n = center_.size();
  std::vector<Item> list;
  list.reserve(n);
  std::vector<double> cumulative;
  for (std::size_t i = 0; i < n; ++i) {
    cumulative.assign(i + 1, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j <= i; ++j) {
      total += std::exp(-theta_ * static_cast<double>(j));
      cumulative[j] = total;
    }
    const double u = rng.uniform() * total;
    std::size_t j = 0;
    while (j < i && cumulative[j] <= u) ++j;
    list.insert(list.end() - static_cast<std::ptrdiff_t>(j), center_.item_at(i));
  }
  return Ranking::from_ordering(std::move(list));
}

DiscreteRankingDistribution Mallows::exact(std::size_t cap) const {
  require_exact(center_.size(), cap);
  std::vector<std::pair<Ranking, double>> weights;
  for_each_ranking(center_.size(), [&](const Ranking& sigma) {
    weights.emplace_back(sigma, std::exp(-theta_ * static_cast<double>(kendall_tau(sigma, center_))));
  });
  return DiscreteRankingDistribution::from_weights(center_.size(), weights);
}

RankingDataset contaminate(const RankingDataset& data, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw InvalidInput("contaminate: rate must lie in [0, 1]");
  RankingDataset out = data;
  const std::size_t n = data.n();
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const auto count = static_cast<std::size_t>(std::nearbyint(rate * static_cast<double>(data.size())));
  std::fesetround(saved);
  if (count == 0 || n < 2) return out;

  Rng rng(seed);
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t pick = t + static_cast<std::size_t>(rng.below(rows.size() - t));
    std::swap(rows[t], rows[pick]);
    const auto i = static_cast<Item>(rng.below(n));
    auto j = static_cast<Item>(rng.below(n - 1));
    if (j >= i) ++j;
    auto& entry = out.entries()[rows[t]];
    entry.ranking = entry.ranking.with_swapped(i, j);
  }
  return out;
}

RankingDataset sample(const DiscreteRankingDistribution& dist, std::size_t count, std::uint64_t seed) {
  std::vector<const Ranking*> support;
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& [sigma, q] : dist.table()) {
    if (q <= 0.0) continue;
    total += q;
    support.push_back(&sigma);
    cumulative.push_back(total);
  }
  if (support.empty()) throw InvalidInput("sample: distribution has no support");

  Rng rng(seed);
  RankingDataset out(dist.n());
  for (std::size_t s = 0; s < count; ++s) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::size_t k = it == cumulative.end() ? support.size() - 1
                                                 : static_cast<std::size_t>(it - cumulative.begin());
    out.add(*support[k]);
  }
  return out;
}

RankingDataset sample(const Mallows& model, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  RankingDataset out(model.center().size());
  for (std::size_t s = 0; s < count; ++s) out.add(model.sample(rng));
  return out;
}

}  // namespace bucketrank
