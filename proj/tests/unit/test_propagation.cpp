#include <catch_amalgamated.hpp>

#include <cmath>
#include <utility>

#include "hetnet/drop.hpp"
#include "hetnet/propagation.hpp"

using namespace hetnet;
using Catch::Approx;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

// Straight transcription of the attenuation law, kept apart from the library code.
double oracle_factor(double a0, double a1, double rc, double d0, double k, double x) {
  if (x <= rc) return k * std::pow(x / d0, -a0);
  return k * std::pow(rc / d0, a1 - a0) * std::pow(x / d0, -a1);
}

}  // namespace

TEST_CASE("unit attenuation at the reference distance") {
  CHECK(path_loss_factor(PathLossModel::single_slope(3.0), 100.0) == 1.0);
  CHECK(path_loss_factor(PathLossModel::single_slope(2.0), 100.0) == 1.0);
}

TEST_CASE("dual slope [2,4] spot values") {
  const auto m = PathLossModel::dual_slope(2.0, 4.0, 30.0, 100.0, 1.0);
  CHECK(near_branch_factor(m, 30.0) == Approx(11.1111111111).epsilon(1e-9));
  CHECK(far_branch_factor(m, 30.0) == Approx(11.1111111111).epsilon(1e-9));
  CHECK(path_loss_factor(m, 200.0) == Approx(0.005625).epsilon(1e-12));
}

TEST_CASE("continuity at the critical radius for every configured pair") {
  for (auto [a0, a1] : {std::pair{2.0, 2.0}, {2.0, 4.0}, {3.0, 3.0}, {3.0, 4.0}, {2.0, 5.0}, {3.0, 5.0}}) {
    for (double rc : {10.0, 30.0, 250.0}) {
      const auto m = PathLossModel::dual_slope(a0, a1, rc);
      CHECK(rel(near_branch_factor(m, rc), far_branch_factor(m, rc)) <= 1e-12);
      CHECK(rel(path_loss_factor(m, rc), path_loss_factor(m, std::nextafter(rc, 1e9))) <= 1e-12);
    }
  }
}

TEST_CASE("matches a direct evaluation on a dense grid") {
  for (auto [a0, a1] : {std::pair{2.0, 4.0}, {3.0, 4.0}, {2.5, 3.7}}) {
    const auto m = PathLossModel::dual_slope(a0, a1, 30.0, 100.0, 2.0);
    for (double x = 0.5; x < 30000.0; x *= 1.01) {
      CHECK(rel(path_loss_factor(m, x), oracle_factor(a0, a1, 30.0, 100.0, 2.0, x)) <= 1e-12);
    }
  }
}

TEST_CASE("equal exponents reduce to a single slope") {
  for (double a : {2.0, 3.0, 3.5}) {
    const auto dual = PathLossModel::dual_slope(a, a);
    const auto single = PathLossModel::single_slope(a);
    for (double x = 1.0; x < 30000.0; x *= 1.007) CHECK(rel(path_loss_factor(dual, x), path_loss_factor(single, x)) <= 1e-12);
  }
}

TEST_CASE("non-increasing in distance") {
  for (const auto& m : {PathLossModel::single_slope(2.0), PathLossModel::single_slope(3.0),
                        PathLossModel::dual_slope(2.0, 4.0), PathLossModel::dual_slope(3.0, 4.0)}) {
    double prev = INFINITY;
    for (double x = 0.25; x < 20000.0; x += 0.25) {
      const double v = path_loss_factor(m, x);
      REQUIRE(v <= prev);
      prev = v;
    }
  }
}

TEST_CASE("path loss rejects non-positive distances and bad models") {
  const auto m = PathLossModel::single_slope(3.0);
  CHECK_THROWS_AS(path_loss_factor(m, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(path_loss_factor(m, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(PathLossModel::single_slope(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(PathLossModel::dual_slope(2.0, 4.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(PathLossModel::single_slope(3.0, 0.0), std::invalid_argument);
}

TEST_CASE("labels") {
  CHECK(PathLossModel::single_slope(3.0).label() == "single[3]");
  CHECK(PathLossModel::dual_slope(2.0, 4.0).label() == "dual[2,4]");
  CHECK(PathLossModel::dual_slope(2.0, 4.0).is_dual());
}

TEST_CASE("distance bound inverts the law conservatively") {
  for (const auto& m : {PathLossModel::single_slope(3.0), PathLossModel::dual_slope(2.0, 4.0)}) {
    for (double target : {1e-2, 1e-6, 1e-12, 1e3}) {
      const double d = distance_bound_for_factor(m, target);
      CHECK(path_loss_factor(m, d) <= target);
      CHECK(path_loss_factor(m, d * 0.999) > target * 0.99);
    }
  }
  CHECK(std::isinf(distance_bound_for_factor(PathLossModel::single_slope(0.0), 0.5)));
}

TEST_CASE("received power") {
  const auto s2 = PathLossModel::single_slope(2.0);
  const auto s3 = PathLossModel::single_slope(3.0);
  CHECK(received_power_dbm(46.0, Fading{1.0}, s3, 100.0) == Approx(46.0).margin(1e-12));
  CHECK(received_power_dbm(23.0, Fading{1.0}, s2, 1000.0) == Approx(3.0).margin(1e-12));
  for (double x : {7.0, 150.0, 4000.0}) {
    CHECK(received_power_mw(23.0, Fading{2.0}, s3, x) == Approx(2.0 * received_power_mw(23.0, Fading{1.0}, s3, x)));
  }
  CHECK(path_loss_db(s2, 1000.0) == Approx(20.0).margin(1e-12));
  CHECK(dbm_to_mw(0.0) == 1.0);
  CHECK(mw_to_dbm(1000.0) == Approx(30.0).margin(1e-12));
}

TEST_CASE("fading moments over one million draws") {
  Rng rng(11);
  const int n = 1000000;
  double sum = 0.0;
  double sum2 = 0.0;
  double smallest = INFINITY;
  for (int i = 0; i < n; ++i) {
    const double h = sample_fading(rng).h;
    smallest = std::min(smallest, h);
    sum += h;
    sum2 += h * h;
  }
  const double m = sum / n;
  const double var = sum2 / n - m * m;
  CHECK(smallest > 0.0);
  CHECK(m == Approx(1.0).margin(0.01));
  CHECK(var == Approx(1.0).margin(0.02));
}

TEST_CASE("lazy link fading is exponential, bounded and reproducible") {
  const LinkFading f(12345, false);
  const LinkFading again(12345, false);
  const int n = 1000000;
  double sum = 0.0;
  double sum2 = 0.0;
  double largest = 0.0;
  for (int i = 0; i < n; ++i) {
    const BsId bs{static_cast<std::uint32_t>(i & 1), static_cast<std::uint32_t>(i % 977)};
    const auto user = static_cast<std::uint32_t>(i / 977);
    const double h = f.downlink(bs, user);
    REQUIRE(h > 0.0);
    REQUIRE(h == again.downlink(bs, user));
    largest = std::max(largest, h);
    sum += h;
    sum2 += h * h;
  }
  const double m = sum / n;
  CHECK(m == Approx(1.0).margin(0.01));
  CHECK(sum2 / n - m * m == Approx(1.0).margin(0.02));
  CHECK(largest <= kMaxExponential);
}

TEST_CASE("downlink and uplink fading are independent unless shared") {
  const LinkFading independent(7, false);
  const LinkFading shared(7, true);
  int equal = 0;
  for (std::uint32_t u = 0; u < 1000; ++u) {
    equal += independent.downlink({1, 3}, u) == independent.uplink({1, 3}, u);
    CHECK(shared.downlink({1, 3}, u) == shared.uplink({1, 3}, u));
  }
  CHECK(equal == 0);
}
