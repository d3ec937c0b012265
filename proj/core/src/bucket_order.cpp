#include "bucketrank/bucket_order.hpp"

#include <algorithm>
#include <numeric>

#include "bucketrank/consensus.hpp"
#include "bucketrank/errors.hpp"
#include "bucketrank/marginals.hpp"

namespace bucketrank {

Shape::Shape(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw InvalidInput("shape: needs at least one part");
  for (std::size_t part : parts_) {
    if (part == 0) throw InvalidInput("shape: parts must be positive");
    total_ += part;
  }
}

std::string Shape::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (k) out += '-';
    out += std::to_string(parts_[k]);
  }
  return out;
}

std::strong_ordering operator<=>(const Shape& a, const Shape& b) {
  return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(), b.parts_.begin(),
                                                b.parts_.end());
}

BucketOrder BucketOrder::from_buckets(std::vector<std::vector<Item>> buckets, std::size_t n) {
  if (buckets.empty()) throw InvalidInput("bucket order: needs at least one bucket");
  BucketOrder order;
  order.labels_.assign(n, buckets.size());
  for (std::size_t k = 0; k < buckets.size(); ++k) {
    auto& bucket = buckets[k];
    if (bucket.empty()) throw InvalidInput("bucket order: empty bucket");
    std::sort(bucket.begin(), bucket.end());
    for (Item i : bucket) {
      if (i >= n) throw InvalidInput("bucket order: item " + std::to_string(i + 1) + " out of range");
      if (order.labels_[i] != buckets.size()) {
        throw InvalidInput("bucket order: item " + std::to_string(i + 1) + " appears twice");
      }
      order.labels_[i] = k;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (order.labels_[i] == buckets.size()) {
      throw InvalidInput("bucket order: item " + std::to_string(i + 1) + " is missing");
    }
  }
  order.buckets_ = std::move(buckets);
  return order;
}

BucketOrder BucketOrder::from_labels(std::span<const std::size_t> labels) {
  if (labels.empty()) throw InvalidInput("bucket order: no items");
  const std::size_t K = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<Item>> buckets(K);
  for (Item i = 0; i < labels.size(); ++i) buckets[labels[i]].push_back(i);
  return from_buckets(std::move(buckets), labels.size());
}

BucketOrder BucketOrder::single_bucket(std::size_t n) {
  std::vector<Item> all(n);
  std::iota(all.begin(), all.end(), Item{0});
  return from_buckets({std::move(all)}, n);
}

BucketOrder BucketOrder::singletons(const Ranking& sigma) {
  return segment(sigma, Shape::singletons(sigma.size()));
}

BucketOrder BucketOrder::segment(const Ranking& sigma, const Shape& shape) {
  if (shape.total() != sigma.size()) {
    throw DimensionError("segment: shape total " + std::to_string(shape.total()) +
                         " differs from item count " + std::to_string(sigma.size()));
  }
  std::vector<std::vector<Item>> buckets(shape.size());
  std::size_t pos = 0;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    for (std::size_t r = 0; r < shape[k]; ++r) buckets[k].push_back(sigma.item_at(pos++));
  }
  return from_buckets(std::move(buckets), sigma.size());
}

Shape BucketOrder::shape() const {
  std::vector<std::size_t> parts;
  parts.reserve(buckets_.size());
  for (const auto& b : buckets_) parts.push_back(b.size());
  return Shape(std::move(parts));
}

BucketOrder BucketOrder::merged(std::size_t k) const {
  if (k + 1 >= buckets_.size()) throw InvalidInput("merged: no bucket after the given index");
  std::vector<std::vector<Item>> buckets;
  buckets.reserve(buckets_.size() - 1);
  for (std::size_t l = 0; l < buckets_.size(); ++l) {
    if (l == k + 1) {
      buckets.back().insert(buckets.back().end(), buckets_[l].begin(), buckets_[l].end());
    } else {
      buckets.push_back(buckets_[l]);
    }
  }
  return from_buckets(std::move(buckets), n());
}

std::strong_ordering operator<=>(const BucketOrder& a, const BucketOrder& b) {
  const std::size_t common = std::min(a.buckets_.size(), b.buckets_.size());
  for (std::size_t k = 0; k < common; ++k) {
    const auto& x = a.buckets_[k];
    const auto& y = b.buckets_[k];
    const auto c = std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    if (c != 0) return c;
  }
  return a.buckets_.size() <=> b.buckets_.size();
}

Ranking bucket_projection(const Ranking& sigma, const BucketOrder& order) {
  if (sigma.size() != order.n()) throw DimensionError("bucket_projection: item counts differ");
  std::vector<Item> ordering;
  ordering.reserve(sigma.size());
  for (const auto& bucket : order.buckets()) {
    const std::size_t start = ordering.size();
    ordering.insert(ordering.end(), bucket.begin(), bucket.end());
    std::sort(ordering.begin() + static_cast<std::ptrdiff_t>(start), ordering.end(),
              [&](Item a, Item b) { return sigma.prefers(a, b); });
  }
  return Ranking::from_ordering(std::move(ordering));
}

bool agrees_with_consensus(const BucketOrder& order, const PairwiseMatrix& p) {
  if (order.n() != p.n()) throw DimensionError("agrees_with_consensus: item counts differ");
  for (Item i = 0; i < p.n(); ++i) {
    for (Item j = 0; j < p.n(); ++j) {
      if (order.precedes(i, j) && p(j, i) > 0.5 + kHalfTolerance) return false;
    }
  }
  return true;
}

}  // namespace bucketrank
