// SPDX-License-Identifier: Apache-2.0

#include "ehap/report/stats.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ehap::report {

std::optional<double> median(std::vector<double> values) {
  if (values.empty())
    return std::nullopt;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1)
    return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::vector<double> average_ranks(const std::vector<double> &pooled) {
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<double> ranks(pooled.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && pooled[order[j + 1]] == pooled[order[i]])
      ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k)
      ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

// Two-sided exact p: every way of choosing which n_a pooled ranks belong to
// sample a is equally likely under the null. Ranks are doubled so that
// half-ranks stay integral.
double exact_p(const std::vector<double> &ranks, std::size_t n_a, double w_obs) {
  const std::size_t n = ranks.size();
  std::vector<long> r2(n);
  for (std::size_t i = 0; i < n; ++i)
    r2[i] = std::lround(ranks[i] * 2);
  const long w2 = std::lround(w_obs * 2);

  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n_a), true);
  std::size_t total = 0, low = 0, high = 0;
  do {
    long s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i])
        s += r2[i];
    ++total;
    low += s <= w2;
    high += s >= w2;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  const double one_sided =
      static_cast<double>(std::min(low, high)) / static_cast<double>(total);
  return std::min(1.0, 2.0 * one_sided);
}

} // namespace

RankSumResult wilcoxon_rank_sum(const std::vector<double> &a, const std::vector<double> &b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("rank-sum test needs two non-empty samples");
  RankSumResult r;
  r.n_a = a.size();
  r.n_b = b.size();
  r.median_a = *median(a);
  r.median_b = *median(b);
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::vector<double> ranks = average_ranks(pooled);
  for (std::size_t i = 0; i < a.size(); ++i)
    r.w += ranks[i];

  const auto na = static_cast<double>(r.n_a);
  const auto nb = static_cast<double>(r.n_b);
  const double n = na + nb;

  std::map<double, std::size_t> ties;
  for (double v : pooled)
    ++ties[v];
  double tie_term = 0;
  for (const auto &[v, t] : ties) {
    const auto td = static_cast<double>(t);
    tie_term += td * td * td - td;
  }
  const double variance =
      n > 1 ? na * nb / 12.0 * ((n + 1) - tie_term / (n * (n - 1))) : 0.0;

  if (ties.size() == 1 || variance <= 0) {
    r.z = 0;
    r.p_normal = 1;
    if (pooled.size() <= kExactRankSumLimit)
      r.exact_p = 1;
    r.p_two_sided = 1;
    return r;
  }

  const double diff = r.w - na * (n + 1) / 2.0;
  const double corrected = std::max(std::abs(diff) - 0.5, 0.0);
  r.z = (diff < 0 ? -corrected : corrected) / std::sqrt(variance);
  r.p_normal = std::min(1.0, std::erfc(std::abs(r.z) / std::sqrt(2.0)));

  if (pooled.size() <= kExactRankSumLimit)
    r.exact_p = exact_p(ranks, r.n_a, r.w);
  r.p_two_sided = r.exact_p ? *r.exact_p : r.p_normal;
  return r;
}

} // namespace ehap::report
