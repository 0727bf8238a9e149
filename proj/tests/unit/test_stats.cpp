#include <catch_amalgamated.hpp>

#include <numeric>

#include "hetnet/random.hpp"
#include "hetnet/stats.hpp"

using namespace hetnet;
using Catch::Approx;

TEST_CASE("percentile by linear interpolation") {
  const std::vector<double> one{5.0};
  for (double q : {0.0, 10.0, 50.0, 100.0}) CHECK(percentile(one, q) == 5.0);

  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(percentile(v, 50.0) == 50.5);
  CHECK(percentile(v, 0.0) == 1.0);
  CHECK(percentile(v, 100.0) == 100.0);
  CHECK(percentile(v, 10.0) == Approx(10.9));

  const std::vector<double> unsorted{3.0, 1.0, 2.0};
  CHECK(percentile(unsorted, 50.0) == 2.0);
  CHECK(percentile(unsorted, 25.0) == 1.5);

  CHECK_THROWS_AS(percentile(std::vector<double>{}, 50.0), std::invalid_argument);
  CHECK_THROWS_AS(percentile(v, 101.0), std::invalid_argument);
}

TEST_CASE("percentile is monotone in q") {
  Rng rng(4);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> v(777);
  for (auto& x : v) x = e(rng);
  double prev = -1.0;
  for (double q = 0.0; q <= 100.0; q += 0.5) {
    const double p = percentile(v, q);
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("rate stats") {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  const RateStats s = rate_stats(v);
  CHECK(s.count == 100);
  CHECK(s.p10 <= s.p50);
  CHECK(s.p50 <= s.p90);
  CHECK(s.p50 == 50.5);
  CHECK(mean(v) == 50.5);
}

TEST_CASE("bootstrap interval of a mean") {
  Rng rng(8);
  std::normal_distribution<double> n(3.0, 2.0);
  std::vector<double> v(2000);
  for (auto& x : v) x = n(rng);
  auto stat = [&](std::span<const std::size_t> idx) {
    double s = 0.0;
    for (auto i : idx) s += v[i];
    return s / static_cast<double>(idx.size());
  };
  const Interval ci = bootstrap_interval(v.size(), stat, 1);
  const double m = mean(v);
  CHECK(ci.contains(m));
  // Normal-theory half width 1.96 * 2 / sqrt(2000) = 0.0877.
  CHECK((ci.hi - ci.lo) / 2.0 == Approx(0.0877).epsilon(0.15));
  const Interval again = bootstrap_interval(v.size(), stat, 1);
  CHECK(again.lo == ci.lo);
  CHECK(again.hi == ci.hi);
  CHECK(ci.overlaps({ci.hi, ci.hi + 1.0}));
  CHECK_FALSE(ci.overlaps({ci.hi + 0.1, ci.hi + 1.0}));
  CHECK_THROWS_AS(bootstrap_interval(0, stat, 1), std::invalid_argument);
}

TEST_CASE("spearman correlation") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(spearman(x, std::vector<double>{10, 20, 30, 40}) == Approx(1.0));
  CHECK(spearman(x, std::vector<double>{4, 3, 2, 1}) == Approx(-1.0));
  // Ties get average ranks.
  CHECK(spearman(std::vector<double>{1, 2, 2, 3}, std::vector<double>{1, 2, 2, 3}) == Approx(1.0));
  CHECK_THROWS(spearman(x, std::vector<double>{1, 2}));
}

TEST_CASE("exact one-sided p-value for small samples") {
  const std::vector<double> x{1, 2, 3, 4};
  // Only the fully reversed order of 4! = 24 permutations reaches rho = -1.
  CHECK(spearman_p_negative(x, std::vector<double>{4, 3, 2, 1}) == Approx(1.0 / 24.0));
  CHECK(spearman_p_negative(x, std::vector<double>{1, 2, 3, 4}) == Approx(1.0));
  // rho <= -0.8 for n = 4: the reversal and the three adjacent swaps of it.
  CHECK(spearman_p_negative(x, std::vector<double>{4, 3, 1, 2}) == Approx(4.0 / 24.0));
}

TEST_CASE("large-sample p-value tracks the exact one") {
  std::vector<double> x(9);
  std::vector<double> y(9);
  std::iota(x.begin(), x.end(), 0.0);
  for (int i = 0; i < 9; ++i) y[i] = (i * 5) % 9 - 0.5 * i;
  const double exact = spearman_p_negative(x, y);
  x.push_back(9.0);
  y.push_back(y.back() - 1.0);
  const double approx = spearman_p_negative(x, y);
  CHECK(exact > 0.0);
  CHECK(approx > 0.0);
  CHECK(approx < 1.0);
}
