#include "bucketrank/distribution.hpp"

#include <cmath>
#include <string>

namespace bucketrank {

void require_exact(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw CapExceeded("explicit tables over S_n are limited to n <= " + std::to_string(cap) +
                      " (got n = " + std::to_string(n) + ")");
  }
}

std::vector<Ranking> all_rankings(std::size_t n, std::size_t cap) {
  require_exact(n, cap);
  std::vector<Ranking> out;
  for_each_ranking(n, [&](Ranking r) { out.push_back(std::move(r)); });
  return out;
}

DiscreteRankingDistribution::DiscreteRankingDistribution(std::size_t n, Table mass)
    : n_(n), mass_(std::move(mass)) {
  require_exact(n_);
  long double total = 0.0L;
  for (const auto& [sigma, p] : mass_) {
    if (sigma.size() != n_) throw DimensionError("distribution: ranking over a different item count");
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidInput("distribution: negative or non-finite mass");
    total += p;
  }
  if (std::fabs(static_cast<double>(total - 1.0L)) > 1e-12) {
    throw InvalidInput("distribution: masses sum to " + std::to_string(static_cast<double>(total)));
  }
}

DiscreteRankingDistribution DiscreteRankingDistribution::from_weights(
    std::size_t n, const std::vector<std::pair<Ranking, double>>& weights) {
  Table table;
  long double total = 0.0L;
  for (const auto& [sigma, w] : weights) {
    if (!(w >= 0.0)) throw InvalidInput("distribution: negative weight");
    table[sigma] += w;
    total += w;
  }
  if (total <= 0.0L) throw InvalidInput("distribution: zero total weight");
  for (auto& [sigma, w] : table) w = static_cast<double>(w / total);
  // Absorb the rounding residue into the largest entry.
  long double sum = 0.0L;
  auto largest = table.begin();
  for (auto it = table.begin(); it != table.end(); ++it) {
    sum += it->second;
    if (it->second > largest->second) largest = it;
  }
  largest->second += static_cast<double>(1.0L - sum);
  return DiscreteRankingDistribution(n, std::move(table));
}

DiscreteRankingDistribution DiscreteRankingDistribution::dirac(const Ranking& sigma) {
  return DiscreteRankingDistribution(sigma.size(), Table{{sigma, 1.0}});
}

DiscreteRankingDistribution DiscreteRankingDistribution::uniform(std::size_t n) {
  require_exact(n);
  std::vector<std::pair<Ranking, double>> weights;
  for_each_ranking(n, [&](Ranking r) { weights.emplace_back(std::move(r), 1.0); });
  return from_weights(n, weights);
}

double DiscreteRankingDistribution::probability(const Ranking& sigma) const {
  auto it = mass_.find(sigma);
  return it == mass_.end() ? 0.0 : it->second;
}

DiscreteRankingDistribution pushforward(const DiscreteRankingDistribution& dist,
                                        const BucketOrder& order) {
  if (dist.n() != order.n()) throw DimensionError("pushforward: item counts differ");
  DiscreteRankingDistribution::Table table;
  for (const auto& [sigma, p] : dist.table()) table[bucket_projection(sigma, order)] += p;
  return DiscreteRankingDistribution(dist.n(), std::move(table));
}

void RankingDataset::add(Ranking sigma, double weight) {
  if (sigma.size() != n_) throw DimensionError("dataset: ranking over a different item count");
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw InvalidInput("dataset: invalid weight");
  total_ += weight;
  entries_.push_back({std::move(sigma), weight});
}

}  // namespace bucketrank
