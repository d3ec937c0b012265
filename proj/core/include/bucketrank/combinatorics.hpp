#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bucketrank/bucket_order.hpp"
#include "bucketrank/errors.hpp"

namespace bucketrank {

using BigInt = boost::multiprecision::cpp_int;

/// Default ceiling on the number of bucket orders an enumeration may visit.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

BigInt factorial(std::size_t n);
BigInt binomial(std::size_t n, std::size_t k);
/// log10(n!) through lgamma.
double log10_factorial(std::size_t n);

/// Dimension prod_k (#C_k)! - 1 of the set of bucket distributions of a shape.
struct Dimension {
  BigInt exact;
  /// log10 of `exact`; -inf when exact == 0.
  double log10 = 0.0;

  /// The exact value when it fits in 64 bits.
  std::optional<std::uint64_t> as_u64() const;
};

Dimension dimension(const Shape& shape);
inline Dimension dimension(const BucketOrder& order) { return dimension(order.shape()); }

/// Number of cross-bucket pairs: sum_{k<K} lambda_k (n - lambda_1 - ... - lambda_k).
std::size_t kappa(const Shape& shape);

/// Multinomial n! / (lambda_1! ... lambda_K!): the number of bucket orders of that shape.
BigInt count_shape(const Shape& shape);

/// Number of bucket orders of n items with K buckets (alternating-sum formula).
BigInt count_bucket_orders(std::size_t n, std::size_t K);

/// Number of shapes with K parts summing to n: C(n-1, K-1).
BigInt count_shapes(std::size_t n, std::size_t K);

/// Compositions of n into K positive parts, lexicographic.
std::vector<Shape> compositions(std::size_t n, std::size_t K);

/// Every shape of n items ordered by (K, parts lexicographic); 2^(n-1) entries.
std::vector<Shape> all_shapes(std::size_t n);

/// Throws CapExceeded when count_shape(shape) > cap.
void require_enumerable(const Shape& shape, std::uint64_t cap);

namespace detail {

template <class Visit>
void fill_bucket(std::span<const std::size_t> parts, std::size_t k, std::vector<Item>& free_items,
                 std::vector<std::size_t>& labels, Visit& visit) {
  if (k == parts.size()) {
    visit(std::span<const std::size_t>(labels));
    return;
  }
  const std::size_t m = free_items.size();
  const std::size_t take = parts[k];
  if (k + 1 == parts.size()) {
    for (Item i : free_items) labels[i] = k;
    visit(std::span<const std::size_t>(labels));
    return;
  }
  // Lexicographic combinations of `take` positions out of `m`.
  std::vector<std::size_t> pick(take);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  std::vector<Item> rest;
  rest.reserve(m - take);
  while (true) {
    rest.clear();
    std::size_t next = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
      if (next < take && pick[next] == pos) {
        labels[free_items[pos]] = k;
        ++next;
      } else {
        rest.push_back(free_items[pos]);
      }
    }
    fill_bucket(parts, k + 1, rest, labels, visit);

    std::size_t t = take;
    while (t > 0 && pick[t - 1] == m - take + t - 1) --t;
    if (t == 0) break;
    ++pick[t - 1];
    for (std::size_t u = t; u < take; ++u) pick[u] = pick[u - 1] + 1;
  }
}

}  // namespace detail

/// Calls `visit(labels)` once for every bucket order of `shape`, where
/// labels[i] is the bucket of item i. The sequence is lexicographic in the
/// bucket-order sense (C_1 first, then C_2, ...). The label span is only
/// valid during the call.
template <class Visit>
void for_each_labeling(const Shape& shape, std::uint64_t cap, Visit&& visit) {
  require_enumerable(shape, cap);
  std::vector<Item> items(shape.total());
  std::iota(items.begin(), items.end(), Item{0});
  std::vector<std::size_t> labels(shape.total(), 0);
  detail::fill_bucket(shape.parts(), 0, items, labels, visit);
}

/// Materialized enumeration of every bucket order of `shape`.
std::vector<BucketOrder> enumerate_bucket_orders(const Shape& shape,
                                                 std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace bucketrank
