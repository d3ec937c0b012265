#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "bucketrank/ranking.hpp"

namespace bucketrank {

class PairwiseMatrix;

/// Bucket sizes of a bucket order, in bucket order.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<std::size_t> parts);

  /// The shape (1, ..., 1) of a full ranking.
  static Shape singletons(std::size_t n) { return Shape(std::vector<std::size_t>(n, 1)); }

  std::size_t size() const noexcept { return parts_.size(); }
  std::size_t total() const noexcept { return total_; }
  std::size_t operator[](std::size_t k) const { return parts_[k]; }
  std::span<const std::size_t> parts() const noexcept { return parts_; }

  /// Dash separated, e.g. "2-3-1".
  std::string to_string() const;

  friend bool operator==(const Shape& a, const Shape& b) { return a.parts_ == b.parts_; }
  friend std::strong_ordering operator<=>(const Shape& a, const Shape& b);

 private:
  std::vector<std::size_t> parts_;
  std::size_t total_ = 0;
};

/// An ordered partition (C_1, ..., C_K) of the items {0, ..., n-1}.
///
/// Items of earlier buckets are preferred to items of later buckets; items of
/// the same bucket are incomparable. Items inside a bucket are stored sorted.
class BucketOrder {
 public:
  BucketOrder() = default;

  static BucketOrder from_buckets(std::vector<std::vector<Item>> buckets, std::size_t n);
  /// labels[i] is the 0-based bucket index of item i; every label in [0, K) must occur.
  static BucketOrder from_labels(std::span<const std::size_t> labels);
  static BucketOrder single_bucket(std::size_t n);
  /// One bucket per item, in the order of `sigma`.
  static BucketOrder singletons(const Ranking& sigma);
  /// Cuts the ordering of `sigma` into consecutive segments of the given shape.
  static BucketOrder segment(const Ranking& sigma, const Shape& shape);

  std::size_t n() const noexcept { return labels_.size(); }
  std::size_t size() const noexcept { return buckets_.size(); }
  std::span<const Item> bucket(std::size_t k) const { return buckets_[k]; }
  const std::vector<std::vector<Item>>& buckets() const noexcept { return buckets_; }
  std::size_t bucket_of(Item i) const { return labels_[i]; }
  std::span<const std::size_t> labels() const noexcept { return labels_; }
  Shape shape() const;

  /// i is in a strictly earlier bucket than j.
  bool precedes(Item i, Item j) const { return labels_[i] < labels_[j]; }
  bool tied(Item i, Item j) const { return labels_[i] == labels_[j]; }

  /// Merges buckets k and k+1 (0-based).
  BucketOrder merged(std::size_t k) const;

  friend bool operator==(const BucketOrder& a, const BucketOrder& b) {
    return a.buckets_ == b.buckets_;
  }
  /// Lexicographic over the sequence of (sorted) buckets.
  friend std::strong_ordering operator<=>(const BucketOrder& a, const BucketOrder& b);

 private:
  std::vector<std::vector<Item>> buckets_;
  std::vector<std::size_t> labels_;
};

/// The coupled ranking Sigma_C: buckets laid out in order, each bucket
/// internally ordered as `sigma` orders it.
Ranking bucket_projection(const Ranking& sigma, const BucketOrder& order);

/// True iff p_{j,i} <= 1/2 for every i before j in `order`.
bool agrees_with_consensus(const BucketOrder& order, const PairwiseMatrix& p);

}  // namespace bucketrank
