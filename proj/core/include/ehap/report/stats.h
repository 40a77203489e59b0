// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_REPORT_STATS_H
#define EHAP_REPORT_STATS_H

#include <cstddef>
#include <optional>
#include <vector>

namespace ehap::report {

/// Middle value; mean of the two middle values for even sizes. nullopt for
/// an empty list.
std::optional<double> median(std::vector<double> values);

/// Ranks of `pooled` (1-based), ties sharing their average rank.
std::vector<double> average_ranks(const std::vector<double> &pooled);

/// Pooled sizes up to this use exact enumeration.
inline constexpr std::size_t kExactRankSumLimit = 12;

struct RankSumResult {
  double w = 0;         // rank sum of sample a
  double z = 0;         // normal approximation, tie and continuity corrected
  double p_normal = 1;  // two-sided p from z
  std::optional<double> exact_p;
  double p_two_sided = 1; // exact_p when present, else p_normal
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double median_a = 0;
  double median_b = 0;
};

/// Wilcoxon rank-sum test. Throws std::invalid_argument on an empty sample.
RankSumResult wilcoxon_rank_sum(const std::vector<double> &a, const std::vector<double> &b);

} // namespace ehap::report

#endif // EHAP_REPORT_STATS_H
