#include "hetnet/linkmetrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hetnet {

SinrSample downlink_sinr(const Drop& drop, const PathLossModel& model, std::uint32_t user, BsId serving,
                         double noise_mw) {
  if (!drop.contains(serving)) throw std::out_of_range("serving site not in drop");
  const Position at = drop.users.points.at(user);
  const TierDeployment& own = drop.tiers[serving.tier];
  const int band = own.config.band;

  const double signal = dbm_to_mw(own.config.tx_power_dbm) * drop.fading.downlink(serving, user) *
                        path_loss_factor(model, distance(at, own.sites.points[serving.index]));
  double interference = 0.0;
  for (std::uint32_t t = 0; t < drop.tiers.size(); ++t) {
    const TierDeployment& dep = drop.tiers[t];
    if (dep.config.band != band) continue;
    const double tx = dbm_to_mw(dep.config.tx_power_dbm);
    const auto& sites = dep.sites.points;
    for (std::uint32_t j = 0; j < sites.size(); ++j) {
      if (t == serving.tier && j == serving.index) continue;
      interference += tx * drop.fading.downlink({t, j}, user) * path_loss_factor(model, distance(at, sites[j]));
    }
  }
  return {sinr_from_powers(signal, interference, noise_mw), serving, band};
}

UplinkSchedule schedule_uplink(const Drop& drop, const AssociationMap& uplink) {
  UplinkSchedule s;
  std::vector<std::vector<std::uint64_t>> best_key(drop.tiers.size());
  s.active.resize(drop.tiers.size());
  for (std::size_t t = 0; t < drop.tiers.size(); ++t) {
    s.active[t].assign(drop.tiers[t].sites.size(), kNoSite);
    best_key[t].assign(drop.tiers[t].sites.size(), 0);
  }
  for (std::uint32_t u = 0; u < uplink.serving.size(); ++u) {
    const BsId id = uplink.serving[u];
    const std::uint64_t key = drop.fading.user_key(u);
    std::uint32_t& slot = s.active[id.tier][id.index];
    if (slot == kNoSite || key < best_key[id.tier][id.index]) {
      slot = u;
      best_key[id.tier][id.index] = key;
    }
  }
  return s;
}

SinrSample uplink_sinr(const Drop& drop, const PathLossModel& model, std::uint32_t user, BsId serving,
                       const AssociationMap& uplink, const UplinkSchedule& schedule, const UplinkPowerRule& rule,
                       double noise_mw) {
  if (!drop.contains(serving)) throw std::out_of_range("serving site not in drop");
  const auto& users = drop.users.points;
  const Position rx = drop.bs_position(serving);
  const int band = drop.tiers[serving.tier].config.band;

  auto link_tx_mw = [&](std::uint32_t u, BsId own) {
    const double d = distance(users[u], drop.bs_position(own));
    return dbm_to_mw(uplink_tx_power(rule, path_loss_db(model, d)));
  };

  const double signal = link_tx_mw(user, serving) * drop.fading.uplink(serving, user) *
                        path_loss_factor(model, distance(users.at(user), rx));
  double interference = 0.0;
  for (std::uint32_t t = 0; t < drop.tiers.size(); ++t) {
    if (drop.tiers[t].config.band != band) continue;
    const auto& active = schedule.active.at(t);
    for (std::uint32_t j = 0; j < active.size(); ++j) {
      if (t == serving.tier && j == serving.index) continue;
      const std::uint32_t v = active[j];
      if (v == kNoSite || v == user) continue;
      const BsId own{t, j};
      if (uplink.serving.at(v) != own) throw std::logic_error("uplink schedule does not match association");
      interference += link_tx_mw(v, own) * drop.fading.uplink(serving, v) * path_loss_factor(model, distance(users[v], rx));
    }
  }
  return {sinr_from_powers(signal, interference, noise_mw), serving, band};
}

double rate(double gamma, std::uint32_t load) {
  if (load < 1) throw std::invalid_argument("rate needs a load of at least one user");
  if (!(gamma >= 0.0)) throw std::invalid_argument("SINR must be non-negative");
  // log1p keeps precision for the very small SINRs of noise-limited uplinks.
  return std::log1p(gamma) / std::numbers::ln2 / static_cast<double>(load);
}

RateSample rate(const SinrSample& sinr, std::uint32_t load) { return {rate(sinr.gamma, load), load}; }

}  // namespace hetnet
