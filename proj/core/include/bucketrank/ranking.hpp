#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace bucketrank {

/// Items are 0-based indices internally.
using Item = std::size_t;

/// A full ranking of n items (a permutation).
///
/// Both encodings are kept: `rank(i)` is the 0-based position of item i
/// (0 = most preferred) and `item_at(r)` is the item holding position r.
/// The two views are mutual inverses.
class Ranking {
 public:
  Ranking() = default;

  /// Builds from 0-based ranks: ranks[i] is the position of item i.
  static Ranking from_ranks(std::vector<std::size_t> ranks);
  /// Builds from an ordering: items listed best first.
  static Ranking from_ordering(std::vector<Item> ordering);
  static Ranking identity(std::size_t n);

  std::size_t size() const noexcept { return ranks_.size(); }
  std::size_t rank(Item i) const { return ranks_[i]; }
  Item item_at(std::size_t position) const { return ordering_[position]; }
  std::span<const std::size_t> ranks() const noexcept { return ranks_; }
  std::span<const Item> ordering() const noexcept { return ordering_; }

  /// True when i is ranked before j.
  bool prefers(Item i, Item j) const { return ranks_[i] < ranks_[j]; }

  Ranking reversed() const;
  /// Exchanges the positions of items i and j.
  Ranking with_swapped(Item i, Item j) const;

  friend bool operator==(const Ranking& a, const Ranking& b) { return a.ranks_ == b.ranks_; }
  /// Lexicographic on the rank vector.
  friend std::strong_ordering operator<=>(const Ranking& a, const Ranking& b);

 private:
  Ranking(std::vector<std::size_t> ranks, std::vector<Item> ordering)
      : ranks_(std::move(ranks)), ordering_(std::move(ordering)) {}

  std::vector<std::size_t> ranks_;
  std::vector<Item> ordering_;
};

/// Number of discordant pairs.
std::size_t kendall_tau(const Ranking& a, const Ranking& b);

/// Squared Spearman rho distance, sum over items of the squared rank gap.
std::size_t spearman_sq(const Ranking& a, const Ranking& b);

/// Ranking induced on `items`; entry k of the result refers to items[k].
Ranking restrict(const Ranking& sigma, std::span<const Item> items);

}  // namespace bucketrank
