#include "hetnet/association.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include <omp.h>

namespace hetnet {

DownlinkPolicy DownlinkPolicy::biased(std::vector<double> per_tier_bias_db) {
  for (double b : per_tier_bias_db) {
    if (!std::isfinite(b)) throw std::invalid_argument("bias values must be finite");
  }
  return DownlinkPolicy{std::move(per_tier_bias_db)};
}

double uplink_tx_power(const UplinkPowerRule& rule, double path_loss_db) noexcept {
  return std::min(rule.target_rx_dbm + path_loss_db, rule.max_tx_dbm);
}

AssociationMap AssociationMap::from_serving(const Drop& drop, std::vector<BsId> serving) {
  AssociationMap map;
  map.loads.resize(drop.tiers.size());
  for (std::size_t t = 0; t < drop.tiers.size(); ++t) map.loads[t].assign(drop.tiers[t].sites.size(), 0);
  for (const BsId& id : serving) {
    if (!drop.contains(id)) throw std::out_of_range("association refers to a site outside the drop");
    ++map.loads[id.tier][id.index];
  }
  map.serving = std::move(serving);
  return map;
}

std::uint32_t AssociationMap::users_in_tier(std::uint32_t tier) const {
  std::uint32_t n = 0;
  for (std::uint32_t l : loads.at(tier)) n += l;
  return n;
}

namespace {

struct Incumbent {
  TierCandidate best;
  double cut = std::numeric_limits<double>::infinity();
  double cut2 = std::numeric_limits<double>::infinity();

  // -ln U <= 1/U - 1, so most losing links are rejected without the logarithm. The
  // 1e-9 margin keeps the shortcut from deciding anything the exact value would not.
  void offer(std::uint32_t id, double u, double path_loss, const PathLossModel& model) {
    if (best.valid() && (1.0 / u - 1.0) * path_loss < best.gain * (1.0 - 1e-9)) return;
    const double g = -std::log(u) * path_loss;
    if (!best.valid() || g > best.gain || (g == best.gain && id < best.index)) {
      best = {id, g};
      cut = distance_bound_for_factor(model, g / kMaxExponential);
      cut2 = cut * cut;
    }
  }
};

// One ring walk serving both link directions; each keeps its own cut distance.
void strongest_both(const Drop& drop, std::uint32_t tier, std::uint32_t user, const PathLossModel& model,
                    TierCandidate& downlink, TierCandidate& uplink) {
  const TierDeployment& dep = drop.tiers.at(tier);
  const Position at = drop.users.points.at(user);
  const AttenuationLaw law(model);
  Incumbent dl;
  Incumbent ul;
  dep.index.search_outward(
      at, [&](double bound) { return bound <= dl.cut || bound <= ul.cut; },
      [&](std::uint32_t id, Position p) {
        const double d2 = squared_distance(at, p);
        const bool dl_open = d2 <= dl.cut2;
        const bool ul_open = d2 <= ul.cut2;
        if (!dl_open && !ul_open) return;
        const double pl = law(std::sqrt(d2));
        if (dl_open) dl.offer(id, drop.fading.uniform(LinkDirection::downlink, {tier, id}, user), pl, model);
        if (ul_open) ul.offer(id, drop.fading.uniform(LinkDirection::uplink, {tier, id}, user), pl, model);
      });
  downlink = dl.best;
  uplink = ul.best;
}

}  // namespace

TierCandidate strongest_in_tier(const Drop& drop, std::uint32_t tier, std::uint32_t user, const PathLossModel& model,
                                LinkDirection direction) {
  const TierDeployment& dep = drop.tiers.at(tier);
  const Position at = drop.users.points.at(user);
  Incumbent inc;
  dep.index.search_outward(
      at, [&](double bound) { return bound <= inc.cut; },
      [&](std::uint32_t id, Position p) {
        const double d2 = squared_distance(at, p);
        if (d2 > inc.cut2) return;
        inc.offer(id, drop.fading.uniform(direction, {tier, id}, user), path_loss_factor(model, std::sqrt(d2)), model);
      });
  return inc.best;
}

CandidateTable::CandidateTable(std::uint32_t tiers, std::uint32_t users)
    : tiers_(tiers), users_(users), dl_(static_cast<std::size_t>(tiers) * users), ul_(dl_.size()) {}

CandidateTable compute_candidates(const Drop& drop, const PathLossModel& model) {
  const auto tiers = static_cast<std::uint32_t>(drop.tiers.size());
  const std::uint32_t users = drop.user_count();
  CandidateTable table(tiers, users);
  const auto n = static_cast<long>(users);
#pragma omp parallel for schedule(dynamic, 256) if (n > 512 && omp_get_level() == 0)
  for (long u = 0; u < n; ++u) {
    const auto user = static_cast<std::uint32_t>(u);
    for (std::uint32_t t = 0; t < tiers; ++t) {
      strongest_both(drop, t, user, model, table.downlink(user, t), table.uplink(user, t));
    }
  }
  return table;
}

namespace {

// Biased transmit power per tier, mW.
std::vector<double> tier_scores(const Drop& drop, const DownlinkPolicy& policy) {
  std::vector<double> s(drop.tiers.size());
  for (std::uint32_t t = 0; t < s.size(); ++t) s[t] = dbm_to_mw(drop.tiers[t].config.tx_power_dbm + policy.bias_for(t));
  return s;
}

BsId resolve_downlink_scaled(const CandidateTable& table, std::uint32_t user, std::span<const double> scale) {
  BsId best{0, kNoSite};
  double best_score = 0.0;
  for (std::uint32_t t = 0; t < table.tiers(); ++t) {
    const TierCandidate& c = table.downlink(user, t);
    if (!c.valid()) continue;
    const double score = scale[t] * c.gain;
    if (best.index == kNoSite || score > best_score) {
      best = {t, c.index};
      best_score = score;
    }
  }
  if (best.index == kNoSite) throw std::runtime_error("downlink association needs at least one base station");
  return best;
}

}  // namespace

BsId resolve_downlink(const Drop& drop, const CandidateTable& table, std::uint32_t user, const DownlinkPolicy& policy) {
  return resolve_downlink_scaled(table, user, tier_scores(drop, policy));
}

BsId resolve_uplink_decoupled(const CandidateTable& table, std::uint32_t user) {
  BsId best{0, kNoSite};
  double best_gain = 0.0;
  for (std::uint32_t t = 0; t < table.tiers(); ++t) {
    const TierCandidate& c = table.uplink(user, t);
    if (!c.valid()) continue;
    if (best.index == kNoSite || c.gain > best_gain) {
      best = {t, c.index};
      best_gain = c.gain;
    }
  }
  if (best.index == kNoSite) throw std::runtime_error("uplink association needs at least one base station");
  return best;
}

AssociationMap downlink_map(const Drop& drop, const CandidateTable& table, const DownlinkPolicy& policy) {
  const std::vector<double> scale = tier_scores(drop, policy);
  std::vector<BsId> serving(table.users());
  for (std::uint32_t u = 0; u < table.users(); ++u) serving[u] = resolve_downlink_scaled(table, u, scale);
  return AssociationMap::from_serving(drop, std::move(serving));
}

AssociationMap decoupled_uplink_map(const Drop& drop, const CandidateTable& table) {
  std::vector<BsId> serving(table.users());
  for (std::uint32_t u = 0; u < table.users(); ++u) serving[u] = resolve_uplink_decoupled(table, u);
  return AssociationMap::from_serving(drop, std::move(serving));
}

namespace {

CandidateTable single_user_table(const Drop& drop, std::uint32_t user, const PathLossModel& model,
                                 LinkDirection direction) {
  const auto tiers = static_cast<std::uint32_t>(drop.tiers.size());
  CandidateTable table(tiers, 1);
  for (std::uint32_t t = 0; t < tiers; ++t) {
    const TierCandidate c = strongest_in_tier(drop, t, user, model, direction);
    if (direction == LinkDirection::downlink) {
      table.downlink(0, t) = c;
    } else {
      table.uplink(0, t) = c;
    }
  }
  return table;
}

}  // namespace

BsId associate_downlink(const Drop& drop, std::uint32_t user, const PathLossModel& model, const DownlinkPolicy& policy) {
  return resolve_downlink(drop, single_user_table(drop, user, model, LinkDirection::downlink), 0, policy);
}

BsId associate_uplink(const Drop& drop, std::uint32_t user, const PathLossModel& model, UplinkPolicy policy,
                      BsId downlink_serving) {
  if (policy == UplinkPolicy::coupled) return downlink_serving;
  return resolve_uplink_decoupled(single_user_table(drop, user, model, LinkDirection::uplink), 0);
}

AssociationPair associate_all(const Drop& drop, const PathLossModel& model, const DownlinkPolicy& dl_policy,
                              UplinkPolicy ul_policy) {
  if (drop.bs_count() == 0) throw std::runtime_error("association needs at least one base station");
  const CandidateTable table = compute_candidates(drop, model);
  AssociationPair out;
  out.downlink = downlink_map(drop, table, dl_policy);
  out.uplink = ul_policy == UplinkPolicy::coupled ? out.downlink : decoupled_uplink_map(drop, table);
  return out;
}

}  // namespace hetnet
