#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hetnet/drop.hpp"
#include "hetnet/propagation.hpp"

namespace hetnet {

/// Downlink association: max received power, optionally with a per-tier dB bias
/// added before the argmax (cell range expansion).
struct DownlinkPolicy {
  std::vector<double> bias_db;  // per tier; empty means unbiased

  static DownlinkPolicy max_received_power() { return {}; }
  static DownlinkPolicy biased(std::vector<double> per_tier_bias_db);
  /// Macro pinned at 0 dB, femto at `femto_bias_db`.
  static DownlinkPolicy femto_bias(double femto_bias_db) { return biased({0.0, femto_bias_db}); }

  bool is_biased() const noexcept { return !bias_db.empty(); }
  double bias_for(std::uint32_t tier) const noexcept { return tier < bias_db.size() ? bias_db[tier] : 0.0; }

  friend bool operator==(const DownlinkPolicy&, const DownlinkPolicy&) = default;
};

enum class UplinkPolicy : std::uint8_t { coupled, decoupled };

/// Truncated channel inversion.
struct UplinkPowerRule {
  double target_rx_dbm = -70.0;
  double max_tx_dbm = 20.0;

  friend bool operator==(const UplinkPowerRule&, const UplinkPowerRule&) = default;
};

/// min(target + path loss, cap), dBm.
double uplink_tx_power(const UplinkPowerRule& rule, double path_loss_db) noexcept;

struct AssociationMap {
  std::vector<BsId> serving;                        // per user
  std::vector<std::vector<std::uint32_t>> loads;    // per tier, per BS

  static AssociationMap from_serving(const Drop& drop, std::vector<BsId> serving);
  std::uint32_t load(BsId bs) const { return loads.at(bs.tier).at(bs.index); }
  std::uint32_t users_in_tier(std::uint32_t tier) const;

  friend bool operator==(const AssociationMap&, const AssociationMap&) = default;
};

struct AssociationPair {
  AssociationMap downlink;
  AssociationMap uplink;
};

inline constexpr std::uint32_t kNoSite = std::numeric_limits<std::uint32_t>::max();

/// Strongest link of one tier for one user by h * path_loss_factor (transmit power is
/// common within a tier). `index == kNoSite` when the tier is empty.
struct TierCandidate {
  std::uint32_t index = kNoSite;
  double gain = 0.0;  // h * path_loss_factor, linear

  bool valid() const noexcept { return index != kNoSite; }
};

/// Exact indexed search: a site farther than the distance where even the largest
/// representable fading cannot beat the incumbent is never evaluated.
TierCandidate strongest_in_tier(const Drop& drop, std::uint32_t tier, std::uint32_t user, const PathLossModel& model,
                                LinkDirection direction);

/// Per-user, per-tier strongest downlink and uplink candidates. Everything the
/// association policies need; bias only enters when the table is resolved.
class CandidateTable {
 public:
  CandidateTable() = default;
  CandidateTable(std::uint32_t tiers, std::uint32_t users);

  TierCandidate& downlink(std::uint32_t user, std::uint32_t tier) { return dl_[user * tiers_ + tier]; }
  const TierCandidate& downlink(std::uint32_t user, std::uint32_t tier) const { return dl_[user * tiers_ + tier]; }
  TierCandidate& uplink(std::uint32_t user, std::uint32_t tier) { return ul_[user * tiers_ + tier]; }
  const TierCandidate& uplink(std::uint32_t user, std::uint32_t tier) const { return ul_[user * tiers_ + tier]; }

  std::uint32_t tiers() const noexcept { return tiers_; }
  std::uint32_t users() const noexcept { return users_; }

 private:
  std::uint32_t tiers_ = 0;
  std::uint32_t users_ = 0;
  std::vector<TierCandidate> dl_;
  std::vector<TierCandidate> ul_;
};

/// Parallel over users (OpenMP); bit-identical to a serial run.
CandidateTable compute_candidates(const Drop& drop, const PathLossModel& model);

/// Biased argmax over tiers; ties go to the lower tier. Throws if no tier has a site.
BsId resolve_downlink(const Drop& drop, const CandidateTable& table, std::uint32_t user, const DownlinkPolicy& policy);
/// Argmax of h * path loss over tiers at a common reference transmit power.
BsId resolve_uplink_decoupled(const CandidateTable& table, std::uint32_t user);

AssociationMap downlink_map(const Drop& drop, const CandidateTable& table, const DownlinkPolicy& policy);
AssociationMap decoupled_uplink_map(const Drop& drop, const CandidateTable& table);

/// Single-user entry points.
BsId associate_downlink(const Drop& drop, std::uint32_t user, const PathLossModel& model, const DownlinkPolicy& policy);
BsId associate_uplink(const Drop& drop, std::uint32_t user, const PathLossModel& model, UplinkPolicy policy,
                      BsId downlink_serving);

/// Every user of the drop, tagged user included in the loads.
AssociationPair associate_all(const Drop& drop, const PathLossModel& model, const DownlinkPolicy& dl_policy,
                              UplinkPolicy ul_policy);

}  // namespace hetnet
