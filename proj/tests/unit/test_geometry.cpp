#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hetnet/geometry.hpp"

using namespace hetnet;
using Catch::Approx;

TEST_CASE("region spans [-g, g] squared") {
  const Region r(10.0);
  CHECK(r.area_km2() == 400.0);
  CHECK(r.side_m() == 20000.0);
  CHECK(r.contains({10000.0, -10000.0}));
  CHECK_FALSE(r.contains({10000.5, 0.0}));
  CHECK_THROWS_AS(Region(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Region(-1.0), std::invalid_argument);
}

TEST_CASE("PPP edge cases") {
  Rng rng(1);
  const Region r(10.0);
  CHECK(sample_ppp(0.0, r, rng).points.empty());
  CHECK_THROWS_AS(sample_ppp(-0.1, r, rng), std::invalid_argument);

  // Expected count 400 at 1 /km^2 over 400 km^2; 400 draws give a standard error of 1.
  double total = 0.0;
  for (int i = 0; i < 400; ++i) total += static_cast<double>(sample_ppp(1.0, r, rng).size());
  CHECK(std::fabs(total / 400.0 - 400.0) < 4.0);
}

TEST_CASE("PPP count mean and variance over 10000 draws") {
  Rng rng(20240611);
  const Region r(2.0);
  const int draws = 10000;
  const double expected = 10.0 * r.area_km2();  // 160
  std::vector<double> counts;
  counts.reserve(draws);
  std::array<double, 4> quadrant{};
  for (int i = 0; i < draws; ++i) {
    const PointSet s = sample_ppp(10.0, r, rng, "femto");
    counts.push_back(static_cast<double>(s.size()));
    for (const auto& p : s.points) {
      REQUIRE(r.contains(p));
      quadrant[(p.x >= 0.0 ? 1 : 0) + (p.y >= 0.0 ? 2 : 0)] += 1.0;
    }
  }
  const double m = std::accumulate(counts.begin(), counts.end(), 0.0) / draws;
  double ss = 0.0;
  for (double c : counts) ss += (c - m) * (c - m);
  const double var = ss / (draws - 1);
  CHECK(std::fabs(m - expected) < 3.0 * std::sqrt(expected / draws));
  CHECK(std::fabs(var - expected) < 0.1 * expected);

  // Chi-square goodness of fit, 3 degrees of freedom, 99% critical value 11.345.
  const double total = quadrant[0] + quadrant[1] + quadrant[2] + quadrant[3];
  double chi2 = 0.0;
  for (double q : quadrant) chi2 += (q - total / 4.0) * (q - total / 4.0) / (total / 4.0);
  CHECK(chi2 < 11.345);
}

TEST_CASE("PPP is a function of the stream state") {
  Rng a(99);
  Rng b(99);
  const Region r(1.0);
  CHECK(sample_ppp(30.0, r, a).points == sample_ppp(30.0, r, b).points);
}

TEST_CASE("distance") {
  CHECK(distance({0, 0}, {0, 0}) == 0.0);
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  Rng rng(5);
  std::uniform_real_distribution<double> u(-1e4, 1e4);
  for (int i = 0; i < 10000; ++i) {
    const Position a{u(rng), u(rng)};
    const Position b{u(rng), u(rng)};
    const double d = distance(a, b);
    CHECK(d == distance(b, a));
    CHECK(d == Approx(std::hypot(a.x - b.x, a.y - b.y)).epsilon(4e-16));
  }
}

TEST_CASE("range queries match a linear scan") {
  Rng rng(17);
  const Region r(1.5);
  for (double lambda : {0.5, 5.0, 50.0, 400.0}) {
    const PointSet s = sample_ppp(lambda, r, rng);
    for (double side : {30.0, 250.0, 3000.0}) {
      const SpatialIndex index(s.points, r, side);
      CHECK(index.size() == s.size());

      CHECK(index.neighbors_within({0.5, 0.5}, 0.0).empty() == std::none_of(s.points.begin(), s.points.end(), [](auto p) {
              return p.x == 0.5 && p.y == 0.5;
            }));
      auto all = index.neighbors_within({0, 0}, 2.0 * r.side_m());
      CHECK(all.size() == s.size());

      std::uniform_real_distribution<double> c(-2000.0, 2000.0);
      std::uniform_real_distribution<double> rad(0.0, 1200.0);
      for (int q = 0; q < 40; ++q) {
        const Position center{c(rng), c(rng)};
        const double radius = rad(rng);
        auto got = index.neighbors_within(center, radius);
        CHECK(got == index.neighbors_within(center, radius));
        std::vector<std::uint32_t> want;
        for (std::uint32_t i = 0; i < s.size(); ++i) {
          if (distance(s.points[i], center) <= radius) want.push_back(i);
        }
        std::sort(got.begin(), got.end());
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("range query rejects a negative radius") {
  const Region r(1.0);
  const std::vector<Position> pts{{0, 0}};
  const SpatialIndex index(pts, r, 100.0);
  CHECK_THROWS_AS(index.neighbors_within({0, 0}, -1.0), std::invalid_argument);
  CHECK(index.neighbors_within({0, 0}, 0.0) == std::vector<std::uint32_t>{0});
}

TEST_CASE("outward search visits every point once with a valid lower bound") {
  Rng rng(3);
  const Region r(1.0);
  const PointSet s = sample_ppp(200.0, r, rng);
  const SpatialIndex index(s.points, r, 60.0);
  const Position center{123.0, -456.0};
  std::vector<int> seen(s.size(), 0);
  double bound = 0.0;
  index.search_outward(
      center,
      [&](double b) {
        CHECK(b >= bound);
        bound = b;
        return true;
      },
      [&](std::uint32_t id, Position p) {
        ++seen[id];
        CHECK(distance(p, center) >= bound - 1e-9);
      });
  CHECK(std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; }));
}

TEST_CASE("default bucket side") {
  const Region r(10.0);
  CHECK(default_bucket_side(r, 30.0, 0.0) == r.side_m() / 256.0);
  CHECK(default_bucket_side(r, 30.0, 100.0) == Approx(100.0));
  CHECK(default_bucket_side(r, 3000.0, 100.0) == 3000.0);
}
