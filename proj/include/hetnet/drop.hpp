#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <vector>

#include "hetnet/geometry.hpp"
#include "hetnet/propagation.hpp"

namespace hetnet {

inline constexpr std::uint32_t kMacroTier = 0;
inline constexpr std::uint32_t kFemtoTier = 1;

/// Base station identity: tier, then index inside the tier. Ordering is the
/// association tie-break order.
struct BsId {
  std::uint32_t tier = 0;
  std::uint32_t index = 0;

  friend auto operator<=>(const BsId&, const BsId&) = default;
};

enum class LinkDirection : std::uint8_t { downlink = 0, uplink = 1 };

/// Lazily evaluated iid Exponential(1) channel gains. The value for a (direction, BS,
/// user) triple is a pure function of the drop seed, so any subset of links can be
/// evaluated in any order and yields the same numbers.
class LinkFading {
 public:
  LinkFading() = default;
  LinkFading(std::uint64_t drop_seed, bool shared_uplink_downlink);

  double gain(LinkDirection dir, BsId bs, std::uint32_t user) const noexcept { return -std::log(uniform(dir, bs, user)); }
  /// The uniform U in (0, 1) behind gain() = -ln U.
  double uniform(LinkDirection dir, BsId bs, std::uint32_t user) const noexcept {
    const std::uint64_t key = dir == LinkDirection::downlink ? downlink_key_ : uplink_key_;
    // tier: 4 bits, site index: 28 bits, user: 32 bits.
    const std::uint64_t link =
        (static_cast<std::uint64_t>(bs.tier) << 60) | (static_cast<std::uint64_t>(bs.index) << 32) | user;
    return open_unit(mix64(key ^ mix64(link)));
  }
  double downlink(BsId bs, std::uint32_t user) const noexcept { return gain(LinkDirection::downlink, bs, user); }
  double uplink(BsId bs, std::uint32_t user) const noexcept { return gain(LinkDirection::uplink, bs, user); }

  /// Independent uniform key per user, used to pick scheduled uplink interferers.
  std::uint64_t user_key(std::uint32_t user) const noexcept;

  bool shared() const noexcept { return shared_; }

 private:
  std::uint64_t downlink_key_ = 0;
  std::uint64_t uplink_key_ = 0;
  std::uint64_t schedule_key_ = 0;
  bool shared_ = false;
};

struct TierDeployment {
  TierConfig config;
  PointSet sites;
  SpatialIndex index;
};

/// One realized network. users[0] is the tagged user at the origin.
struct Drop {
  Region region{1.0};
  std::vector<TierDeployment> tiers;
  PointSet users;
  LinkFading fading;

  std::size_t bs_count() const noexcept;
  std::uint32_t user_count() const noexcept { return static_cast<std::uint32_t>(users.size()); }
  Position bs_position(BsId id) const { return tiers.at(id.tier).sites.points.at(id.index); }
  bool contains(BsId id) const noexcept {
    return id.tier < tiers.size() && id.index < tiers[id.tier].sites.size();
  }
};

/// Builds a drop from explicit positions (tests, validation). The tagged user is
/// prepended at the origin unless `prepend_tagged_user` is false.
Drop make_drop(const Region& region, std::vector<TierConfig> tier_configs, std::vector<std::vector<Position>> sites,
               std::vector<Position> users, std::uint64_t fading_seed, double bucket_floor_m = 30.0,
               bool prepend_tagged_user = true, bool shared_fading = false);

}  // namespace hetnet
