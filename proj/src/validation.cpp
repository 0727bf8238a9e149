#include "hetnet/validation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "hetnet/association.hpp"
#include "hetnet/engine.hpp"
#include "hetnet/linkmetrics.hpp"
#include "hetnet/reference.hpp"
#include "hetnet/sweep.hpp"

namespace hetnet {

std::size_t ValidationReport::passed() const noexcept {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; }));
}

namespace {

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

double relative_error(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

std::vector<double> distance_grid() {
  std::vector<double> xs;
  for (double x = 1.0; x <= 20000.0; x *= 1.03) xs.push_back(x);
  xs.push_back(30.0);
  xs.push_back(100.0);
  return xs;
}

CheckResult continuity() {
  double worst = 0.0;
  for (auto [a0, a1] : {std::pair{2.0, 2.0}, {2.0, 4.0}, {3.0, 3.0}, {3.0, 4.0}}) {
    const auto m = PathLossModel::dual_slope(a0, a1);
    worst = std::max(worst, relative_error(near_branch_factor(m, 30.0), far_branch_factor(m, 30.0)));
  }
  return {"dual-slope continuity at the critical radius", worst <= 1e-12, "max relative gap " + sci(worst)};
}

CheckResult equal_exponents() {
  double worst = 0.0;
  for (double a : {2.0, 3.0}) {
    const auto dual = PathLossModel::dual_slope(a, a);
    const auto single = PathLossModel::single_slope(a);
    for (double x : distance_grid()) {
      worst = std::max(worst, relative_error(path_loss_factor(dual, x), path_loss_factor(single, x)));
    }
  }
  return {"dual [a,a] equals single a", worst <= 1e-12, "max relative gap " + sci(worst)};
}

CheckResult monotone() {
  bool ok = true;
  for (const auto& m : default_models()) {
    double prev = INFINITY;
    for (double x = 1.0; x <= 20000.0; x += 1.0) {
      const double v = path_loss_factor(m, x);
      ok = ok && v <= prev;
      prev = v;
    }
  }
  return {"path loss non-increasing in distance", ok, ""};
}

CheckResult rate_spot() {
  const bool ok = rate(1.0, 1) == 1.0 && rate(3.0, 2) == 1.0 && rate(0.0, 5) == 0.0;
  return {"rate spot values", ok, "rate(1,1) = " + sci(rate(1.0, 1))};
}

ScenarioConfig small_config(double femto_density, std::uint64_t seed) {
  ScenarioConfig c;
  c.region = Region(1.0);
  c.tiers[kFemtoTier].density_per_km2 = femto_density;
  c.master_seed = seed;
  return c;
}

CheckResult index_matches_brute_force(const ValidationOptions& opt) {
  std::size_t drops = 0;
  std::size_t mismatched = 0;
  for (double lf : {1.0, 10.0, 100.0}) {
    const ScenarioConfig c = small_config(lf, opt.seed);
    for (std::size_t d = 0; d < opt.drops_per_density; ++d) {
      const Drop drop = realize_drop(c, d);
      const auto models = default_models();
      const auto& model = models[d % models.size()];
      const auto policy = DownlinkPolicy::femto_bias(static_cast<double>(d % 13));
      const auto fast = associate_all(drop, model, policy, UplinkPolicy::decoupled);
      const auto slow = reference::associate_all(drop, model, policy, UplinkPolicy::decoupled);
      ++drops;
      if (!(fast.downlink == slow.downlink && fast.uplink == slow.uplink)) ++mismatched;
    }
  }
  return {"indexed association equals brute force", mismatched == 0,
          std::to_string(mismatched) + " of " + std::to_string(drops) + " drops differ"};
}

CheckResult common_shift(const ValidationOptions& opt) {
  std::size_t mismatched = 0;
  for (std::size_t d = 0; d < opt.drops_per_density; ++d) {
    const Drop drop = realize_drop(small_config(10.0, opt.seed + 1), d);
    const auto table = compute_candidates(drop, PathLossModel::dual_slope(2.0, 4.0));
    const double shift = -20.0 + 0.5 * static_cast<double>(d % 80);
    const auto plain = downlink_map(drop, table, DownlinkPolicy::max_received_power());
    const auto shifted = downlink_map(drop, table, DownlinkPolicy::biased({shift, shift}));
    if (!(plain == shifted)) ++mismatched;
  }
  return {"argmax invariant under a common bias", mismatched == 0, std::to_string(mismatched) + " drops differ"};
}

CheckResult shared_fading_no_mismatch(const ValidationOptions& opt) {
  std::size_t mismatched = 0;
  for (std::size_t d = 0; d < opt.drops_per_density / 4 + 1; ++d) {
    ScenarioConfig c = small_config(10.0, opt.seed + 2);
    c.shared_fading = true;
    c.tiers[kFemtoTier].tx_power_dbm = c.tiers[kMacroTier].tx_power_dbm;
    const Drop drop = realize_drop(c, d);
    const auto maps = associate_all(drop, c.path_loss, DownlinkPolicy::max_received_power(), UplinkPolicy::decoupled);
    if (!(maps.downlink.serving == maps.uplink.serving)) ++mismatched;
  }
  return {"shared fading and equal powers give zero mismatch", mismatched == 0,
          std::to_string(mismatched) + " drops mismatched"};
}

CheckResult index_matches_scan(const ValidationOptions& opt) {
  Rng rng(opt.seed ^ 0x5ca11ULL);
  const Region region(1.0);
  std::size_t bad = 0;
  std::size_t queries = 0;
  for (double lambda : {1.0, 30.0, 300.0}) {
    const PointSet set = sample_ppp(lambda, region, rng);
    for (double side : {30.0, 100.0, 700.0}) {
      const SpatialIndex index(set.points, region, side);
      std::uniform_real_distribution<double> coord(-1200.0, 1200.0);
      std::uniform_real_distribution<double> radius(0.0, 1500.0);
      for (int q = 0; q < 50; ++q) {
        const Position c{coord(rng), coord(rng)};
        const double r = radius(rng);
        auto got = index.neighbors_within(c, r);
        std::vector<std::uint32_t> want;
        for (std::uint32_t i = 0; i < set.points.size(); ++i) {
          if (distance(set.points[i], c) <= r) want.push_back(i);
        }
        std::sort(got.begin(), got.end());
        ++queries;
        if (got != want) ++bad;
      }
    }
  }
  return {"range query equals linear scan", bad == 0,
          std::to_string(bad) + " of " + std::to_string(queries) + " queries differ"};
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& options) {
  ValidationReport r;
  r.checks.push_back(continuity());
  r.checks.push_back(equal_exponents());
  r.checks.push_back(monotone());
  r.checks.push_back(rate_spot());
  r.checks.push_back(common_shift(options));
  r.checks.push_back(shared_fading_no_mismatch(options));
  r.checks.push_back(index_matches_scan(options));
  r.checks.push_back(index_matches_brute_force(options));
  return r;
}

}  // namespace hetnet
