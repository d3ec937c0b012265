#pragma once

// Independent reference computations. Everything here works on plain rank
// vectors and label vectors and never calls the library's algorithms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;  // rank of item i, 0-based
using Labels = std::vector<int>;  // bucket index of item i
using Matrix = std::vector<std::vector<double>>;
using Law = std::vector<std::pair<Perm, double>>;

inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm ranks(n);
  std::iota(ranks.begin(), ranks.end(), 0);
  do out.push_back(ranks);
  while (std::next_permutation(ranks.begin(), ranks.end()));
  return out;
}

inline int kendall(const Perm& a, const Perm& b) {
  int d = 0;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((a[i] < a[j]) != (b[i] < b[j])) ++d;
  return d;
}

inline int spearman_sq(const Perm& a, const Perm& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

// Ranks items bucket by bucket, keeping sigma's order inside each bucket.
inline Perm project(const Perm& sigma, const Labels& labels) {
  const int n = static_cast<int>(sigma.size());
  Perm out(n);
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int j = 0; j < n; ++j) {
      if (labels[j] < labels[i] || (labels[j] == labels[i] && sigma[j] < sigma[i])) ++r;
    }
    out[i] = r;
  }
  return out;
}

inline Matrix pairwise(const Law& law, int n) {
  Matrix p(n, std::vector<double>(n, 0.0));
  for (const auto& [sigma, q] : law)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && sigma[i] < sigma[j]) p[i][j] += q;
  return p;
}

// E_P[d(S, S_C)] by enumeration; spearman selects d_2^2 instead of Kendall.
inline double coupling(const Law& law, const Labels& labels, bool spearman) {
  double total = 0.0;
  for (const auto& [sigma, q] : law) {
    const Perm proj = project(sigma, labels);
    total += q * (spearman ? spearman_sq(sigma, proj) : kendall(sigma, proj));
  }
  return total;
}

inline double lambda(const Labels& labels, const Matrix& p) {
  double total = 0.0;
  const int n = static_cast<int>(labels.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (labels[i] < labels[j]) total += p[j][i];
  return total;
}

// Pairwise Kemeny cost of a rank vector.
inline double kemeny_cost(const Perm& sigma, const Matrix& p) {
  double total = 0.0;
  const int n = static_cast<int>(sigma.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) total += sigma[i] < sigma[j] ? p[j][i] : p[i][j];
  return total;
}

struct KemenyMin {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<Perm> argmin;
};

inline KemenyMin kemeny_min(const Matrix& p, double tol = 1e-12) {
  const int n = static_cast<int>(p.size());
  KemenyMin out;
  std::vector<std::pair<double, Perm>> all;
  for (const auto& sigma : all_perms(n)) {
    const double c = kemeny_cost(sigma, p);
    all.emplace_back(c, sigma);
    out.cost = std::min(out.cost, c);
  }
  for (const auto& [c, sigma] : all)
    if (c <= out.cost + tol) out.argmin.push_back(sigma);
  return out;
}

// Every label vector whose image is exactly {0, ..., K-1} for some K.
inline std::vector<Labels> all_bucket_orders(int n) {
  std::vector<Labels> out;
  Labels labels(n, 0);
  while (true) {
    const int top = *std::max_element(labels.begin(), labels.end());
    std::vector<bool> used(top + 1, false);
    for (int l : labels) used[l] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) out.push_back(labels);
    int pos = 0;
    while (pos < n && labels[pos] == n - 1) labels[pos++] = 0;
    if (pos == n) break;
    ++labels[pos];
  }
  return out;
}

inline long long factorial(int k) {
  long long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

inline long long dimension(const Labels& labels) {
  const int K = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<int> sizes(K, 0);
  for (int l : labels) ++sizes[l];
  long long d = 1;
  for (int s : sizes) d *= factorial(s);
  return d - 1;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace oracle
