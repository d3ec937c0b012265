#include "bucketrank/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bucketrank {

BigInt factorial(std::size_t n) {
  BigInt out = 1;
  for (std::size_t k = 2; k <= n; ++k) out *= k;
  return out;
}

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt out = 1;
  for (std::size_t t = 1; t <= k; ++t) {
    out *= n - k + t;
    out /= t;
  }
  return out;
}

double log10_factorial(std::size_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0) / std::log(10.0);
}

std::optional<std::uint64_t> Dimension::as_u64() const {
  if (exact > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return exact.convert_to<std::uint64_t>();
}

Dimension dimension(const Shape& shape) {
  Dimension d;
  BigInt prod = 1;
  double log10_prod = 0.0;
  for (std::size_t part : shape.parts()) {
    prod *= factorial(part);
    log10_prod += log10_factorial(part);
  }
  d.exact = prod - 1;
  if (d.exact == 0) {
    d.log10 = -std::numeric_limits<double>::infinity();
  } else if (prod < BigInt(1) << 53) {
    d.log10 = std::log10(d.exact.convert_to<double>());
  } else {
    // prod - 1 and prod agree to far below double resolution here.
    d.log10 = log10_prod;
  }
  return d;
}

std::size_t kappa(const Shape& shape) {
  std::size_t remaining = shape.total();
  std::size_t total = 0;
  for (std::size_t k = 0; k + 1 < shape.size(); ++k) {
    remaining -= shape[k];
    total += shape[k] * remaining;
  }
  return total;
}

BigInt count_shape(const Shape& shape) {
  BigInt out = factorial(shape.total());
  for (std::size_t part : shape.parts()) out /= factorial(part);
  return out;
}

BigInt count_bucket_orders(std::size_t n, std::size_t K) {
  if (K == 0 || K > n) throw InvalidInput("count_bucket_orders: need 1 <= K <= n");
  // sum_{k=0}^{K} (-1)^(K-k) C(K,k) k^n, i.e. K! times a Stirling number of the second kind.
  BigInt total = 0;
  for (std::size_t k = 0; k <= K; ++k) {
    BigInt term = binomial(K, k) * boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(n));
    if ((K - k) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigInt count_shapes(std::size_t n, std::size_t K) {
  if (K == 0 || K > n) throw InvalidInput("count_shapes: need 1 <= K <= n");
  return binomial(n - 1, K - 1);
}

namespace {

void compose(std::size_t remaining, std::size_t parts_left, std::vector<std::size_t>& prefix,
             std::vector<Shape>& out) {
  if (parts_left == 1) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (std::size_t first = 1; first + (parts_left - 1) <= remaining; ++first) {
    prefix.push_back(first);
    compose(remaining - first, parts_left - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Shape> compositions(std::size_t n, std::size_t K) {
  if (K == 0 || K > n) throw InvalidInput("compositions: need 1 <= K <= n");
  std::vector<Shape> out;
  std::vector<std::size_t> prefix;
  compose(n, K, prefix, out);
  return out;
}

std::vector<Shape> all_shapes(std::size_t n) {
  std::vector<Shape> out;
  for (std::size_t K = 1; K <= n; ++K) {
    auto shapes = compositions(n, K);
    out.insert(out.end(), shapes.begin(), shapes.end());
  }
  return out;
}

void require_enumerable(const Shape& shape, std::uint64_t cap) {
  const BigInt count = count_shape(shape);
  if (count > cap) {
    throw CapExceeded("shape " + shape.to_string() + " has " + count.str() +
                      " bucket orders, above the enumeration cap of " + std::to_string(cap));
  }
}

std::vector<BucketOrder> enumerate_bucket_orders(const Shape& shape, std::uint64_t cap) {
  std::vector<BucketOrder> out;
  for_each_labeling(shape, cap, [&](std::span<const std::size_t> labels) {
    out.push_back(BucketOrder::from_labels(labels));
  });
  return out;
}

}  // namespace bucketrank
