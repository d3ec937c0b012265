#include "bucketrank/marginals.hpp"

#include <cmath>
#include <string>

#include "bucketrank/errors.hpp"

namespace bucketrank {

PairwiseMatrix::PairwiseMatrix(std::size_t n)
    : n_(n), p_(n * n, 0.0), counts_(n * n, 0.0), imputed_(n * n, 0) {}

bool PairwiseMatrix::observed(std::size_t i, std::size_t j) const {
  return counts_[i * n_ + j] > 0.0 || imputed_[i * n_ + j] != 0;
}

void PairwiseMatrix::set(std::size_t i, std::size_t j, double value, double count) {
  set_pair(i, j, value, 1.0 - value, count);
}

void PairwiseMatrix::set_pair(std::size_t i, std::size_t j, double p_ij, double p_ji, double count) {
  if (i >= n_ || j >= n_ || i == j) throw InvalidInput("pairwise matrix: invalid pair");
  if (!(p_ij >= 0.0 && p_ij <= 1.0 && p_ji >= 0.0 && p_ji <= 1.0)) {
    throw InvalidInput("pairwise matrix: probability outside [0, 1] for pair (" +
                       std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  }
  if (!(count >= 0.0)) throw InvalidInput("pairwise matrix: negative count");
  p_[i * n_ + j] = p_ij;
  p_[j * n_ + i] = p_ji;
  counts_[i * n_ + j] = count;
  counts_[j * n_ + i] = count;
}

std::optional<std::pair<std::size_t, std::size_t>> PairwiseMatrix::first_unobserved() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (!observed(i, j)) return std::pair{i, j};
  return std::nullopt;
}

void PairwiseMatrix::require_observed(std::size_t i, std::size_t j) const {
  if (!observed(i, j)) throw UnobservedPair(std::min(i, j), std::max(i, j));
}

void PairwiseMatrix::require_fully_observed() const {
  if (auto pair = first_unobserved()) throw UnobservedPair(pair->first, pair->second);
}

PairwiseMatrix PairwiseMatrix::filled(double value) const {
  if (!(value >= 0.0 && value <= 1.0)) throw InvalidInput("filled: value outside [0, 1]");
  PairwiseMatrix out = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (i != j && !observed(i, j)) {
        out.p_[i * n_ + j] = value;
        out.imputed_[i * n_ + j] = 1;
      }
    }
  }
  return out;
}

TripletTensor::TripletTensor(std::size_t n) : n_(n), p_(n * n * n, 0.0) {}

PairwiseMatrix TripletTensor::to_pairwise() const {
  if (n_ < 3) throw InvalidInput("triplet tensor: needs at least 3 items");
  PairwiseMatrix out(n_);
  const double scale = 1.0 / static_cast<double>(n_ - 2);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      double ij = 0.0;
      double ji = 0.0;
      for (std::size_t k = 0; k < n_; ++k) {
        if (k == i || k == j) continue;
        ij += (*this)(i, j, k) + (*this)(i, k, j) + (*this)(k, i, j);
        ji += (*this)(j, i, k) + (*this)(j, k, i) + (*this)(k, j, i);
      }
      out.set_pair(i, j, std::min(1.0, ij * scale), std::min(1.0, ji * scale),
                   PairwiseMatrix::kExactCount);
    }
  }
  return out;
}

void PairwiseDataset::add(Item winner, Item loser, double weight) {
  if (winner >= n_ || loser >= n_) throw InvalidInput("pairwise dataset: item out of range");
  if (winner == loser) throw InvalidInput("pairwise dataset: self-comparison");
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw InvalidInput("pairwise dataset: invalid weight");
  comparisons_.push_back({winner, loser, weight});
}

double PairwiseDataset::total_weight() const noexcept {
  double total = 0.0;
  for (const auto& c : comparisons_) total += c.weight;
  return total;
}

PairwiseMatrix pairwise_from_rankings(const RankingDataset& data) {
  if (data.empty() || !(data.total_weight() > 0.0)) {
    throw InvalidInput("pairwise_from_rankings: empty dataset");
  }
  const std::size_t n = data.n();
  std::vector<double> wins(n * n, 0.0);
  for (const auto& [sigma, w] : data.entries()) {
    for (std::size_t a = 0; a < n; ++a) {
      const Item i = sigma.item_at(a);
      for (std::size_t b = a + 1; b < n; ++b) wins[i * n + sigma.item_at(b)] += w;
    }
  }
  const double total = data.total_weight();
  PairwiseMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.set_pair(i, j, wins[i * n + j] / total, wins[j * n + i] / total, total);
  return out;
}

PairwiseMatrix pairwise_from_comparisons(const PairwiseDataset& data) {
  const std::size_t n = data.n();
  std::vector<double> wins(n * n, 0.0);
  for (const auto& c : data.comparisons()) wins[c.winner * n + c.loser] += c.weight;
  PairwiseMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double total = wins[i * n + j] + wins[j * n + i];
      if (total > 0.0) out.set_pair(i, j, wins[i * n + j] / total, wins[j * n + i] / total, total);
    }
  }
  return out;
}

TripletTensor triplets_from_rankings(const RankingDataset& data) {
  if (data.empty() || !(data.total_weight() > 0.0)) {
    throw InvalidInput("triplets_from_rankings: empty dataset");
  }
  const std::size_t n = data.n();
  std::vector<double> mass(n * n * n, 0.0);
  for (const auto& [sigma, w] : data.entries()) {
    for (std::size_t a = 0; a < n; ++a) {
      const Item i = sigma.item_at(a);
      for (std::size_t b = a + 1; b < n; ++b) {
        const Item j = sigma.item_at(b);
        for (std::size_t c = b + 1; c < n; ++c) mass[(i * n + j) * n + sigma.item_at(c)] += w;
      }
    }
  }
  TripletTensor out(n);
  const double total = data.total_weight();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k) out.set(i, j, k, mass[(i * n + j) * n + k] / total);
  return out;
}

ExactMarginals exact_marginals(const DiscreteRankingDistribution& dist) {
  const std::size_t n = dist.n();
  std::vector<double> wins(n * n, 0.0);
  std::vector<double> triple(n * n * n, 0.0);
  for (const auto& [sigma, p] : dist.table()) {
    for (std::size_t a = 0; a < n; ++a) {
      const Item i = sigma.item_at(a);
      for (std::size_t b = a + 1; b < n; ++b) {
        const Item j = sigma.item_at(b);
        wins[i * n + j] += p;
        for (std::size_t c = b + 1; c < n; ++c) triple[(i * n + j) * n + sigma.item_at(c)] += p;
      }
    }
  }
  ExactMarginals out{PairwiseMatrix(n), TripletTensor(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.pairwise.set_pair(i, j, std::min(1.0, wins[i * n + j]), std::min(1.0, wins[j * n + i]),
                            PairwiseMatrix::kExactCount);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (i != j && j != k && i != k) out.triplets.set(i, j, k, triple[(i * n + j) * n + k]);
  return out;
}

PairwiseMatrix exact_pairwise(const DiscreteRankingDistribution& dist) {
  return exact_marginals(dist).pairwise;
}

}  // namespace bucketrank
