#include "hetnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "hetnet/random.hpp"

namespace hetnet {

double percentile(std::span<const double> samples, double q) {
  if (samples.empty()) throw std::invalid_argument("percentile of an empty sample");
  if (!(q >= 0.0 && q <= 100.0)) throw std::invalid_argument("percentile rank must lie in [0, 100]");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

RateStats rate_stats(std::span<const double> samples) {
  return {percentile(samples, 10.0), percentile(samples, 50.0), percentile(samples, 90.0), samples.size()};
}

double mean(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("mean of an empty sample");
  return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

Interval bootstrap_interval(std::size_t n, const std::function<double(std::span<const std::size_t>)>& statistic,
                            std::uint64_t seed, std::size_t replicates, double confidence) {
  if (n == 0) throw std::invalid_argument("bootstrap of an empty sample");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> rows(n);
  std::vector<double> stats(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    for (auto& i : rows) i = pick(rng);
    stats[r] = statistic(rows);
  }
  const double tail = (1.0 - confidence) / 2.0 * 100.0;
  return {percentile(stats, tail), percentile(stats, 100.0 - tail)};
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
    i = j + 1;
  }
  return r;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("spearman needs two equal samples of size >= 2");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  return pearson(rx, ry);
}

double spearman_p_negative(std::span<const double> x, std::span<const double> y) {
  const double observed = spearman(x, y);
  const std::size_t n = x.size();
  if (n <= 9) {
    std::vector<double> ry = ranks(y);
    const auto rx = ranks(x);
    std::sort(ry.begin(), ry.end());
    std::size_t at_most = 0;
    std::size_t total = 0;
    do {
      ++total;
      if (pearson(rx, ry) <= observed + 1e-12) ++at_most;
    } while (std::next_permutation(ry.begin(), ry.end()));
    return static_cast<double>(at_most) / static_cast<double>(total);
  }
  const double dof = static_cast<double>(n) - 2.0;
  const double r = std::clamp(observed, -0.999999999, 0.999999999);
  const double t = r * std::sqrt(dof / (1.0 - r * r));
  return boost::math::cdf(boost::math::students_t(dof), t);
}

}  // namespace hetnet
