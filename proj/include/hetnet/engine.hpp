#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hetnet/association.hpp"
#include "hetnet/drop.hpp"
#include "hetnet/linkmetrics.hpp"
#include "hetnet/stats.hpp"

namespace hetnet {

/// Two-tier defaults: macro 1 BS/km^2 at 46 dBm, femto 10 BS/km^2 at 23 dBm, out of band.
std::vector<TierConfig> default_tiers();

struct ScenarioConfig {
  Region region{10.0};
  std::vector<TierConfig> tiers = default_tiers();
  double user_density_per_km2 = 200.0;
  PathLossModel path_loss = PathLossModel::single_slope(3.0);
  double noise_dbm = -10.0;
  DownlinkPolicy downlink = DownlinkPolicy::max_received_power();
  UplinkPolicy uplink = UplinkPolicy::decoupled;
  UplinkPowerRule uplink_power;
  std::size_t n_drops = 2000;
  std::uint64_t master_seed = 1;
  /// Diagnostic: reuse downlink fading on the uplink.
  bool shared_fading = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  double noise_mw() const noexcept { return dbm_to_mw(noise_dbm); }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Tagged-user measurements of one drop under one downlink policy.
struct DropResult {
  std::size_t drop_index = 0;
  double dl_rate = 0.0;
  double ul_rate_coupled = 0.0;
  double ul_rate_decoupled = 0.0;
  double dl_sinr = 0.0;
  double ul_sinr_coupled = 0.0;
  double ul_sinr_decoupled = 0.0;
  BsId dl_serving;
  BsId ul_serving;  // per the configured uplink policy
  bool mismatch = false;
  std::uint32_t dl_load = 1;
  std::uint32_t ul_load_coupled = 1;
  std::uint32_t ul_load_decoupled = 1;
  /// Share of all users in the drop whose downlink is served by the femto tier.
  double femto_user_fraction = 0.0;
  std::uint32_t resamples = 0;

  friend bool operator==(const DropResult&, const DropResult&) = default;
};

/// Samples both tiers and the user PPP from a stream derived from (seed, drop index),
/// prepends the tagged user at the origin. A realization without any base station is
/// discarded and redrawn from the next substream; `resamples` counts the redraws.
Drop realize_drop(const ScenarioConfig& config, std::size_t drop_index, std::uint32_t* resamples = nullptr);

/// Everything about one drop under one path-loss model that does not depend on the
/// downlink bias: per-tier candidates, decoupled uplink association and its SINR.
class DropEvaluator {
 public:
  DropEvaluator(const Drop& drop, const PathLossModel& model, const ScenarioConfig& config);

  DropResult evaluate(const DownlinkPolicy& policy) const;
  const CandidateTable& candidates() const noexcept { return table_; }
  const AssociationMap& decoupled_uplink() const noexcept { return decoupled_; }

 private:
  const Drop& drop_;
  PathLossModel model_;
  UplinkPolicy ul_policy_;
  UplinkPowerRule rule_;
  double noise_mw_;
  CandidateTable table_;
  AssociationMap decoupled_;
  SinrSample decoupled_sinr_;
};

DropResult run_drop(const ScenarioConfig& config, std::size_t drop_index);

struct ScenarioResult {
  std::vector<DropResult> drops;
  RateStats downlink;
  RateStats uplink_coupled;
  RateStats uplink_decoupled;
  double mismatch_fraction = 0.0;
  std::size_t resamples = 0;
};

/// `workers` <= 0 uses the OpenMP default. Output does not depend on it.
ScenarioResult run_scenario(const ScenarioConfig& config, int workers = 0);
ScenarioResult summarize(std::vector<DropResult> drops);

/// Common-random-number grid: each drop is realized once and evaluated under every
/// (path-loss model, femto bias) pair. drops[m][b][d].
struct GridResult {
  std::vector<PathLossModel> models;
  std::vector<double> femto_biases_db;
  std::vector<std::vector<std::vector<DropResult>>> drops;
  std::size_t resamples = 0;

  std::span<const DropResult> at(std::size_t model, std::size_t bias) const { return drops.at(model).at(bias); }
};

GridResult run_grid(const ScenarioConfig& config, std::span<const PathLossModel> models,
                    std::span<const double> femto_biases_db, int workers = 0);

std::vector<double> dl_rates(std::span<const DropResult> drops);
std::vector<double> ul_coupled_rates(std::span<const DropResult> drops);
std::vector<double> ul_decoupled_rates(std::span<const DropResult> drops);

}  // namespace hetnet
