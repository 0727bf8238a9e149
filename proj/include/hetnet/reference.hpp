#pragma once

#include "hetnet/association.hpp"

// Serial brute-force implementations. They scan every (user, site) pair with no spatial
// index and no culling; kept as the oracle for the indexed kernels and as the
// benchmark baseline.
namespace hetnet::reference {

BsId associate_downlink(const Drop& drop, std::uint32_t user, const PathLossModel& model, const DownlinkPolicy& policy);
BsId associate_uplink_decoupled(const Drop& drop, std::uint32_t user, const PathLossModel& model);

AssociationPair associate_all(const Drop& drop, const PathLossModel& model, const DownlinkPolicy& dl_policy,
                              UplinkPolicy ul_policy);

}  // namespace hetnet::reference
