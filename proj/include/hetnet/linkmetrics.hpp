#pragma once

#include <cstdint>
#include <vector>

#include "hetnet/association.hpp"

namespace hetnet {

struct SinrSample {
  double gamma = 0.0;  // linear
  BsId serving;
  int band = 0;
};

struct RateSample {
  double rate = 0.0;  // bps/Hz
  std::uint32_t load = 1;
};

/// signal / (interference + noise), all in mW.
inline double sinr_from_powers(double signal_mw, double interference_mw, double noise_mw) noexcept {
  return signal_mw / (interference_mw + noise_mw);
}

/// Serving power over same-band interference plus noise. Tiers on other bands and the
/// serving site itself (nulled in-cell interference) contribute nothing.
SinrSample downlink_sinr(const Drop& drop, const PathLossModel& model, std::uint32_t user, BsId serving,
                         double noise_mw);

/// One active uplink transmitter per site: among the users associated with it, the one
/// with the smallest schedule key (a uniform draw per user). kNoSite marks an idle site.
struct UplinkSchedule {
  std::vector<std::vector<std::uint32_t>> active;  // per tier, per site
};

UplinkSchedule schedule_uplink(const Drop& drop, const AssociationMap& uplink);

/// Uplink SINR at `serving` for `user`, both applying truncated channel inversion toward
/// their own site. Interference comes from the scheduled user of every other same-band
/// site; users of the serving cell are orthogonal.
SinrSample uplink_sinr(const Drop& drop, const PathLossModel& model, std::uint32_t user, BsId serving,
                       const AssociationMap& uplink, const UplinkSchedule& schedule, const UplinkPowerRule& rule,
                       double noise_mw);

/// log2(1 + gamma) / load. Throws for load < 1.
RateSample rate(const SinrSample& sinr, std::uint32_t load);
double rate(double gamma, std::uint32_t load);

}  // namespace hetnet
