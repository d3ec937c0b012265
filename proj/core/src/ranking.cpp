#include "bucketrank/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bucketrank/errors.hpp"

namespace bucketrank {

namespace {

std::vector<std::size_t> invert(std::span<const std::size_t> perm, const char* what) {
  const std::size_t n = perm.size();
  std::vector<std::size_t> inverse(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = perm[i];
    if (v >= n || inverse[v] != n) {
      throw InvalidInput(std::string(what) + " is not a permutation of 0.." + std::to_string(n) +
                         "-1");
    }
    inverse[v] = i;
  }
  return inverse;
}

}  // namespace

Ranking Ranking::from_ranks(std::vector<std::size_t> ranks) {
  auto ordering = invert(ranks, "rank vector");
  return Ranking(std::move(ranks), std::move(ordering));
}

Ranking Ranking::from_ordering(std::vector<Item> ordering) {
  auto ranks = invert(ordering, "ordering");
  return Ranking(std::move(ranks), std::move(ordering));
}

Ranking Ranking::identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return Ranking(v, v);
}

Ranking Ranking::reversed() const {
  std::vector<Item> ordering(ordering_.rbegin(), ordering_.rend());
  return from_ordering(std::move(ordering));
}

Ranking Ranking::with_swapped(Item i, Item j) const {
  auto ranks = ranks_;
  std::swap(ranks[i], ranks[j]);
  auto ordering = ordering_;
  std::swap(ordering[ranks[i]], ordering[ranks[j]]);
  return Ranking(std::move(ranks), std::move(ordering));
}

std::strong_ordering operator<=>(const Ranking& a, const Ranking& b) {
  return std::lexicographical_compare_three_way(a.ranks_.begin(), a.ranks_.end(), b.ranks_.begin(),
                                                b.ranks_.end());
}

std::size_t kendall_tau(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) throw DimensionError("kendall_tau: rankings over different item counts");
  const std::size_t n = a.size();
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a.prefers(i, j) != b.prefers(i, j)) ++discordant;
    }
  }
  return discordant;
}

std::size_t spearman_sq(const Ranking& a, const Ranking& b) {
  if (a.size() != b.size()) throw DimensionError("spearman_sq: rankings over different item counts");
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t d = a.rank(i) > b.rank(i) ? a.rank(i) - b.rank(i) : b.rank(i) - a.rank(i);
    total += d * d;
  }
  return total;
}

Ranking restrict(const Ranking& sigma, std::span<const Item> items) {
  if (items.empty()) throw InvalidInput("restrict: empty item set");
  std::vector<bool> seen(sigma.size(), false);
  for (Item i : items) {
    if (i >= sigma.size()) throw InvalidInput("restrict: item outside the ranking");
    if (seen[i]) throw InvalidInput("restrict: repeated item");
    seen[i] = true;
  }
  std::vector<std::size_t> ranks(items.size(), 0);
  for (std::size_t a = 0; a < items.size(); ++a) {
    for (std::size_t b = 0; b < items.size(); ++b) {
      if (b != a && sigma.prefers(items[b], items[a])) ++ranks[a];
    }
  }
  return Ranking::from_ranks(std::move(ranks));
}

}  // namespace bucketrank
