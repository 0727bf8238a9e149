#include "hetnet/reference.hpp"

#include <stdexcept>

namespace hetnet::reference {

BsId associate_downlink(const Drop& drop, std::uint32_t user, const PathLossModel& model, const DownlinkPolicy& policy) {
  const Position at = drop.users.points.at(user);
  BsId best{0, kNoSite};
  double best_score = 0.0;
  for (std::uint32_t t = 0; t < drop.tiers.size(); ++t) {
    const TierDeployment& dep = drop.tiers[t];
    const double tx = dbm_to_mw(dep.config.tx_power_dbm + policy.bias_for(t));
    const auto& sites = dep.sites.points;
    for (std::uint32_t j = 0; j < sites.size(); ++j) {
      const double g = drop.fading.downlink({t, j}, user) * path_loss_factor(model, distance(at, sites[j]));
      const double score = tx * g;
      if (best.index == kNoSite || score > best_score) {
        best = {t, j};
        best_score = score;
      }
    }
  }
  if (best.index == kNoSite) throw std::runtime_error("downlink association needs at least one base station");
  return best;
}

BsId associate_uplink_decoupled(const Drop& drop, std::uint32_t user, const PathLossModel& model) {
  const Position at = drop.users.points.at(user);
  BsId best{0, kNoSite};
  double best_gain = 0.0;
  for (std::uint32_t t = 0; t < drop.tiers.size(); ++t) {
    const auto& sites = drop.tiers[t].sites.points;
    for (std::uint32_t j = 0; j < sites.size(); ++j) {
      const double g = drop.fading.uplink({t, j}, user) * path_loss_factor(model, distance(at, sites[j]));
      if (best.index == kNoSite || g > best_gain) {
        best = {t, j};
        best_gain = g;
      }
    }
  }
  if (best.index == kNoSite) throw std::runtime_error("uplink association needs at least one base station");
  return best;
}

AssociationPair associate_all(const Drop& drop, const PathLossModel& model, const DownlinkPolicy& dl_policy,
                              UplinkPolicy ul_policy) {
  std::vector<BsId> dl(drop.user_count());
  std::vector<BsId> ul(drop.user_count());
  for (std::uint32_t u = 0; u < drop.user_count(); ++u) {
    dl[u] = reference::associate_downlink(drop, u, model, dl_policy);
    ul[u] = ul_policy == UplinkPolicy::coupled ? dl[u] : reference::associate_uplink_decoupled(drop, u, model);
  }
  return {AssociationMap::from_serving(drop, std::move(dl)), AssociationMap::from_serving(drop, std::move(ul))};
}

}  // namespace hetnet::reference
