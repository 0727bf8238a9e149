#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hetnet {

/// Linear interpolation between closest ranks: position q/100 * (n - 1) in the sorted
/// sample. q in [0, 100]; throws on empty input.
double percentile(std::span<const double> samples, double q);

/// Edge / median / peak rates.
struct RateStats {
  double p10 = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  std::size_t count = 0;
};

RateStats rate_stats(std::span<const double> samples);

double mean(std::span<const double> samples);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
  bool overlaps(const Interval& o) const noexcept { return lo <= o.hi && o.lo <= hi; }
};

/// Percentile bootstrap over paired observations: each replicate resamples row indices
/// 0..n-1 with replacement and evaluates `statistic` on them. Deterministic given `seed`.
Interval bootstrap_interval(std::size_t n, const std::function<double(std::span<const std::size_t>)>& statistic,
                            std::uint64_t seed, std::size_t replicates = 2000, double confidence = 0.95);

/// Spearman rank correlation (average ranks for ties).
double spearman(std::span<const double> x, std::span<const double> y);

/// One-sided p-value for a negative rank correlation: exact permutation distribution for
/// n <= 9, Student-t approximation beyond.
double spearman_p_negative(std::span<const double> x, std::span<const double> y);

}  // namespace hetnet
