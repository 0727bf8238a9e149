#include "hetnet/drop.hpp"

#include <stdexcept>

namespace hetnet {

namespace {
constexpr std::uint64_t kDownlinkTag = 0x444c;   // "DL"
constexpr std::uint64_t kUplinkTag = 0x554c;     // "UL"
constexpr std::uint64_t kScheduleTag = 0x5343;   // "SC"
}  // namespace

LinkFading::LinkFading(std::uint64_t drop_seed, bool shared_uplink_downlink)
    : downlink_key_(derive_seed(drop_seed, {kDownlinkTag})),
      uplink_key_(shared_uplink_downlink ? downlink_key_ : derive_seed(drop_seed, {kUplinkTag})),
      schedule_key_(derive_seed(drop_seed, {kScheduleTag})),
      shared_(shared_uplink_downlink) {}

std::uint64_t LinkFading::user_key(std::uint32_t user) const noexcept { return mix64(schedule_key_ ^ mix64(user)); }

std::size_t Drop::bs_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : tiers) n += t.sites.size();
  return n;
}

Drop make_drop(const Region& region, std::vector<TierConfig> tier_configs, std::vector<std::vector<Position>> sites,
               std::vector<Position> users, std::uint64_t fading_seed, double bucket_floor_m, bool prepend_tagged_user,
               bool shared_fading) {
  if (tier_configs.size() != sites.size()) throw std::invalid_argument("one site list per tier required");
  Drop drop{region, {}, {}, LinkFading(fading_seed, shared_fading)};
  if (tier_configs.size() > 16) throw std::invalid_argument("at most 16 tiers");
  for (std::size_t t = 0; t < tier_configs.size(); ++t) {
    if (sites[t].size() >= (std::size_t{1} << 28)) throw std::invalid_argument("too many sites in one tier");
    TierDeployment dep;
    dep.config = std::move(tier_configs[t]);
    dep.sites.points = std::move(sites[t]);
    dep.sites.label = dep.config.name;
    dep.index = SpatialIndex(dep.sites.points, region,
                             default_bucket_side(region, bucket_floor_m, dep.config.density_per_km2));
    drop.tiers.push_back(std::move(dep));
  }
  drop.users.label = "user";
  if (prepend_tagged_user) drop.users.points.push_back({0.0, 0.0});
  drop.users.points.insert(drop.users.points.end(), users.begin(), users.end());
  return drop;
}

}  // namespace hetnet
