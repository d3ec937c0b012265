#include "bucketrank/distortion.hpp"

#include <cmath>

#include "bucketrank/errors.hpp"

namespace bucketrank {

namespace {

void require_same_n(std::size_t a, std::size_t b, const char* who) {
  if (a != b) throw DimensionError(std::string(who) + ": item counts differ");
}

}  // namespace

double lambda_kendall(std::span<const std::size_t> labels, const PairwiseMatrix& p) {
  require_same_n(labels.size(), p.n(), "lambda_kendall");
  const std::size_t n = p.n();
  double total = 0.0;
  for (Item i = 0; i < n; ++i) {
    for (Item j = 0; j < n; ++j) {
      if (labels[i] < labels[j]) {
        p.require_observed(i, j);
        total += p(j, i);
      }
    }
  }
  return total;
}

double lambda_kendall(const BucketOrder& order, const PairwiseMatrix& p) {
  return lambda_kendall(order.labels(), p);
}

double obo_cost(const BucketOrder& order, const PairwiseMatrix& p) {
  require_same_n(order.n(), p.n(), "obo_cost");
  p.require_fully_observed();
  double total = 0.0;
  for (Item i = 0; i < p.n(); ++i) {
    for (Item j = 0; j < p.n(); ++j) {
      if (i == j) continue;
      const double ideal = order.precedes(i, j) ? 1.0 : order.precedes(j, i) ? 0.0 : 0.5;
      total += std::fabs(p(i, j) - ideal);
    }
  }
  return total;
}

double obo_intra_term(const BucketOrder& order, const PairwiseMatrix& p) {
  require_same_n(order.n(), p.n(), "obo_intra_term");
  double total = 0.0;
  for (const auto& bucket : order.buckets()) {
    for (Item i : bucket) {
      for (Item j : bucket) {
        if (i == j) continue;
        p.require_observed(i, j);
        total += std::fabs(p(i, j) - 0.5);
      }
    }
  }
  return total;
}

double lambda_spearman(const BucketOrder& order, const TripletTensor& t) {
  require_same_n(order.n(), t.n(), "lambda_spearman");
  const std::size_t n = t.n();
  if (n < 3) throw InvalidInput("lambda_spearman: needs at least 3 items");
  const double nn = static_cast<double>(n);
  const auto label = [&](Item i) { return order.bucket_of(i); };

  double three_buckets = 0.0;
  double later_pair = 0.0;    // a alone in an earlier bucket, {b, c} sharing a later one
  double earlier_pair = 0.0;  // {a, b} sharing a bucket, c alone in a later one
  for (Item a = 0; a < n; ++a) {
    for (Item b = 0; b < n; ++b) {
      if (b == a) continue;
      for (Item c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (label(a) < label(b) && label(b) < label(c)) {
          three_buckets += (nn + 1.0) * t(c, b, a) + nn * (t(b, c, a) + t(c, a, b)) + t(b, a, c) +
                           t(a, c, b);
        } else if (label(a) < label(b) && label(b) == label(c) && b < c) {
          later_pair += nn * (t(b, c, a) + t(c, b, a)) + t(b, a, c) + t(c, a, b);
        } else if (label(a) == label(b) && label(b) < label(c) && a < b) {
          earlier_pair += nn * (t(c, a, b) + t(c, b, a)) + t(a, c, b) + t(b, c, a);
        }
      }
    }
  }
  return 2.0 / (nn - 2.0) * (three_buckets + later_pair + earlier_pair);
}

double coupling_expected_distance(const BucketOrder& order, const DiscreteRankingDistribution& dist,
                                  Metric metric) {
  require_same_n(order.n(), dist.n(), "coupling_expected_distance");
  double total = 0.0;
  for (const auto& [sigma, mass] : dist.table()) {
    const Ranking projected = bucket_projection(sigma, order);
    const std::size_t d =
        metric == Metric::kendall ? kendall_tau(sigma, projected) : spearman_sq(sigma, projected);
    total += mass * static_cast<double>(d);
  }
  return total;
}

double excess_lower_bound(const BucketOrder& order, const PairwiseMatrix& p) {
  require_same_n(order.n(), p.n(), "excess_lower_bound");
  double total = 0.0;
  for (Item i = 0; i < p.n(); ++i) {
    for (Item j = 0; j < p.n(); ++j) {
      if (!order.precedes(i, j)) continue;
      p.require_observed(i, j);
      if (p(i, j) < 0.5) total += 0.5 - p(i, j);
    }
  }
  return 2.0 * total;
}

void CouplingTable::add(const Ranking& a, const Ranking& b, double mass) {
  if (a.size() != n_ || b.size() != n_) throw DimensionError("coupling: item counts differ");
  if (!(mass >= 0.0)) throw InvalidInput("coupling: negative mass");
  entries_.emplace_back(a, b, mass);
}

DiscreteRankingDistribution CouplingTable::first_marginal() const {
  DiscreteRankingDistribution::Table table;
  for (const auto& [a, b, mass] : entries_) table[a] += mass;
  return DiscreteRankingDistribution(n_, std::move(table));
}

DiscreteRankingDistribution CouplingTable::second_marginal() const {
  DiscreteRankingDistribution::Table table;
  for (const auto& [a, b, mass] : entries_) table[b] += mass;
  return DiscreteRankingDistribution(n_, std::move(table));
}

double CouplingTable::expected_distance(Metric metric) const {
  double total = 0.0;
  for (const auto& [a, b, mass] : entries_) {
    const std::size_t d = metric == Metric::kendall ? kendall_tau(a, b) : spearman_sq(a, b);
    total += mass * static_cast<double>(d);
  }
  return total;
}

double pairwise_l1(const PairwiseMatrix& p, const PairwiseMatrix& q) {
  require_same_n(p.n(), q.n(), "pairwise_l1");
  double total = 0.0;
  for (Item i = 0; i < p.n(); ++i)
    for (Item j = i + 1; j < p.n(); ++j) total += std::fabs(p(i, j) - q(i, j));
  return total;
}

}  // namespace bucketrank
