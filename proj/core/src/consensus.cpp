#include "bucketrank/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bucketrank/errors.hpp"
#include "bucketrank/synth.hpp"

namespace bucketrank {

std::string_view to_string(TransitivityClass c) {
  switch (c) {
    case TransitivityClass::none: return "none";
    case TransitivityClass::weak: return "weak";
    case TransitivityClass::strict: return "strict";
    case TransitivityClass::strong: return "strong";
  }
  return "none";
}

TransitivityReport transitivity_class(const PairwiseMatrix& p, double tol) {
  p.require_fully_observed();
  const std::size_t n = p.n();
  const auto at_least_half = [&](double x) { return x >= 0.5 - tol; };

  TransitivityReport report;
  report.weak = true;
  report.strong_condition = true;
  report.margin = 0.5;
  bool any_half = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::fabs(p(i, j) - 0.5);
      report.margin = std::min(report.margin, gap);
      if (gap <= tol) any_half = true;
    }
  }
  for (Item i = 0; i < n; ++i) {
    for (Item j = 0; j < n; ++j) {
      if (j == i || !at_least_half(p(i, j))) continue;
      for (Item k = 0; k < n; ++k) {
        if (k == i || k == j || !at_least_half(p(j, k))) continue;
        if (!at_least_half(p(i, k))) {
          report.weak = false;
          report.violations.push_back({i, j, k});
        }
        if (p(i, k) < std::max(p(i, j), p(j, k)) - tol) report.strong_condition = false;
      }
    }
  }
  report.strict = report.weak && !any_half;
  if (report.strict && report.strong_condition) {
    report.cls = TransitivityClass::strong;
  } else if (report.strict) {
    report.cls = TransitivityClass::strict;
  } else if (report.weak) {
    report.cls = TransitivityClass::weak;
  }
  return report;
}

Ranking copeland(const PairwiseMatrix& p, TieRule rule, double tol) {
  p.require_fully_observed();
  const std::size_t n = p.n();
  std::vector<std::size_t> losses(n, 0);
  for (Item i = 0; i < n; ++i)
    for (Item j = 0; j < n; ++j)
      if (j != i && p(i, j) < 0.5 - tol) ++losses[i];

  std::vector<std::size_t> key(n);
  std::iota(key.begin(), key.end(), std::size_t{0});
  if (rule.kind == TieRule::Kind::random) {
    Rng rng(rule.seed);
    for (std::size_t t = n; t > 1; --t) std::swap(key[t - 1], key[rng.below(t)]);
  }
  std::vector<Item> ordering(n);
  std::iota(ordering.begin(), ordering.end(), Item{0});
  std::sort(ordering.begin(), ordering.end(), [&](Item a, Item b) {
    return losses[a] != losses[b] ? losses[a] < losses[b] : key[a] < key[b];
  });
  return Ranking::from_ordering(std::move(ordering));
}

double kemeny_cost(const Ranking& sigma, const PairwiseMatrix& p) {
  if (sigma.size() != p.n()) throw DimensionError("kemeny_cost: item counts differ");
  double cost = 0.0;
  for (Item i = 0; i < p.n(); ++i) {
    for (Item j = i + 1; j < p.n(); ++j) {
      p.require_observed(i, j);
      cost += sigma.prefers(i, j) ? p(j, i) : p(i, j);
    }
  }
  return cost;
}

KemenyOptimum kemeny_optimum(const PairwiseMatrix& p, double tol) {
  const TransitivityReport report = transitivity_class(p, tol);
  if (!report.weak) {
    throw PreconditionError(
        "kemeny_optimum: pairwise marginals are not stochastically transitive; use the "
        "brute-force search instead");
  }
  KemenyOptimum out;
  for (Item i = 0; i < p.n(); ++i)
    for (Item j = i + 1; j < p.n(); ++j) out.cost += std::min(p(i, j), p(j, i));
  if (report.strict) out.median = copeland(p, TieRule::lexicographic(), tol);
  return out;
}

namespace {

template <class Cost>
KemenySolution brute_force(std::size_t n, Cost&& cost_of) {
  require_exact(n);
  constexpr double kTie = 1e-12;
  KemenySolution out;
  bool first = true;
  for_each_ranking(n, [&](Ranking sigma) {
    const double cost = cost_of(sigma);
    if (first || cost < out.cost - kTie) {
      out.argmin.clear();
      out.argmin.push_back(sigma);
      out.median = std::move(sigma);
      out.cost = cost;
      first = false;
    } else if (cost <= out.cost + kTie) {
      out.argmin.push_back(std::move(sigma));
      out.cost = std::min(out.cost, cost);
    }
  });
  return out;
}

}  // namespace

KemenySolution kemeny_brute_force(const PairwiseMatrix& p) {
  p.require_fully_observed();
  return brute_force(p.n(), [&](const Ranking& sigma) { return kemeny_cost(sigma, p); });
}

KemenySolution kemeny_brute_force(const DiscreteRankingDistribution& dist) {
  return brute_force(dist.n(), [&](const Ranking& sigma) {
    double cost = 0.0;
    for (const auto& [tau, mass] : dist.table())
      cost += mass * static_cast<double>(kendall_tau(tau, sigma));
    return cost;
  });
}

}  // namespace bucketrank
