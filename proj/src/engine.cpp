#include "hetnet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace hetnet {

namespace {

constexpr std::uint64_t kTierStreamTag = 0x54;  // "T"
constexpr std::uint64_t kUserStreamTag = 0x55;  // "U"
constexpr std::uint32_t kMaxResamples = 10000;

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument(field + ": " + what);
}

double index_floor_m(const PathLossModel& model) {
  if (const auto* d = std::get_if<DualSlope>(&model.slope)) return d->critical_radius_m;
  return 30.0;
}

// Dual slope with equal exponents is the single-slope law at every distance.
PathLossModel canonical(const PathLossModel& m) {
  if (const auto* d = std::get_if<DualSlope>(&m.slope); d && d->alpha0 == d->alpha1) {
    return PathLossModel{SingleSlope{d->alpha0}, m.reference_distance_m, m.gain_k};
  }
  return m;
}

}  // namespace

std::vector<TierConfig> default_tiers() {
  return {TierConfig{"macro", 1.0, 46.0, 0}, TierConfig{"femto", 10.0, 23.0, 1}};
}

void ScenarioConfig::validate() const {
  require(tiers.size() == 2, "tiers", "exactly two tiers (macro, femto) are required");
  for (const auto& t : tiers) {
    require(std::isfinite(t.density_per_km2) && t.density_per_km2 >= 0.0, "tiers." + t.name + ".density_per_km2",
            "must be finite and non-negative");
    require(std::isfinite(t.tx_power_dbm), "tiers." + t.name + ".tx_power_dBm", "must be finite");
  }
  require(std::isfinite(user_density_per_km2) && user_density_per_km2 >= 0.0, "user_density_per_km2",
          "must be finite and non-negative");
  try {
    path_loss.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("path_loss: ") + e.what());
  }
  require(std::isfinite(noise_dbm), "noise_dBm", "must be finite");
  for (double b : downlink.bias_db) require(std::isfinite(b), "downlink.bias_dB", "must be finite");
  require(std::isfinite(uplink_power.target_rx_dbm), "uplink.target_rx_dBm", "must be finite");
  require(std::isfinite(uplink_power.max_tx_dbm), "uplink.max_tx_dBm", "must be finite");
  require(n_drops >= 1, "drops", "must be at least 1");
}

Drop realize_drop(const ScenarioConfig& config, std::size_t drop_index, std::uint32_t* resamples) {
  for (std::uint32_t attempt = 0; attempt < kMaxResamples; ++attempt) {
    const std::uint64_t seed = derive_seed(config.master_seed, {drop_index, attempt});
    std::vector<std::vector<Position>> sites;
    std::size_t total = 0;
    for (std::size_t t = 0; t < config.tiers.size(); ++t) {
      Rng rng(derive_seed(seed, {kTierStreamTag, t}));
      sites.push_back(sample_ppp(config.tiers[t].density_per_km2, config.region, rng).points);
      total += sites.back().size();
    }
    if (total == 0) continue;
    Rng user_rng(derive_seed(seed, {kUserStreamTag}));
    PointSet users = sample_ppp(config.user_density_per_km2, config.region, user_rng);
    if (resamples != nullptr) *resamples = attempt;
    return make_drop(config.region, config.tiers, std::move(sites), std::move(users.points), seed,
                     index_floor_m(config.path_loss), true, config.shared_fading);
  }
  throw std::runtime_error("no base station realized after " + std::to_string(kMaxResamples) + " attempts");
}

DropEvaluator::DropEvaluator(const Drop& drop, const PathLossModel& model, const ScenarioConfig& config)
    : drop_(drop),
      model_(model),
      ul_policy_(config.uplink),
      rule_(config.uplink_power),
      noise_mw_(config.noise_mw()),
      table_(compute_candidates(drop, model)),
      decoupled_(decoupled_uplink_map(drop, table_)) {
  const UplinkSchedule schedule = schedule_uplink(drop_, decoupled_);
  decoupled_sinr_ = uplink_sinr(drop_, model_, 0, decoupled_.serving[0], decoupled_, schedule, rule_, noise_mw_);
}

DropResult DropEvaluator::evaluate(const DownlinkPolicy& policy) const {
  const AssociationMap dl = downlink_map(drop_, table_, policy);
  const BsId dl_serving = dl.serving[0];
  const SinrSample dl_sinr = downlink_sinr(drop_, model_, 0, dl_serving, noise_mw_);

  // Coupled uplink reuses the downlink map, including its loads and scheduled users.
  const UplinkSchedule coupled_schedule = schedule_uplink(drop_, dl);
  const SinrSample ul_coupled = uplink_sinr(drop_, model_, 0, dl_serving, dl, coupled_schedule, rule_, noise_mw_);
  const BsId ul_decoupled_serving = decoupled_.serving[0];

  DropResult r;
  r.dl_serving = dl_serving;
  r.dl_load = dl.load(dl_serving);
  r.dl_sinr = dl_sinr.gamma;
  r.dl_rate = rate(dl_sinr.gamma, r.dl_load);
  r.ul_load_coupled = dl.load(dl_serving);
  r.ul_sinr_coupled = ul_coupled.gamma;
  r.ul_rate_coupled = rate(ul_coupled.gamma, r.ul_load_coupled);
  r.ul_load_decoupled = decoupled_.load(ul_decoupled_serving);
  r.ul_sinr_decoupled = decoupled_sinr_.gamma;
  r.ul_rate_decoupled = rate(decoupled_sinr_.gamma, r.ul_load_decoupled);
  r.ul_serving = ul_policy_ == UplinkPolicy::coupled ? dl_serving : ul_decoupled_serving;
  r.mismatch = r.ul_serving != r.dl_serving;
  if (drop_.tiers.size() > kFemtoTier) {
    r.femto_user_fraction = static_cast<double>(dl.users_in_tier(kFemtoTier)) / static_cast<double>(dl.serving.size());
  }
  return r;
}

DropResult run_drop(const ScenarioConfig& config, std::size_t drop_index) {
  std::uint32_t resamples = 0;
  const Drop drop = realize_drop(config, drop_index, &resamples);
  const DropEvaluator evaluator(drop, config.path_loss, config);
  DropResult r = evaluator.evaluate(config.downlink);
  r.drop_index = drop_index;
  r.resamples = resamples;
  return r;
}

std::vector<double> dl_rates(std::span<const DropResult> drops) {
  std::vector<double> v;
  v.reserve(drops.size());
  for (const auto& d : drops) v.push_back(d.dl_rate);
  return v;
}

std::vector<double> ul_coupled_rates(std::span<const DropResult> drops) {
  std::vector<double> v;
  v.reserve(drops.size());
  for (const auto& d : drops) v.push_back(d.ul_rate_coupled);
  return v;
}

std::vector<double> ul_decoupled_rates(std::span<const DropResult> drops) {
  std::vector<double> v;
  v.reserve(drops.size());
  for (const auto& d : drops) v.push_back(d.ul_rate_decoupled);
  return v;
}

ScenarioResult summarize(std::vector<DropResult> drops) {
  if (drops.empty()) throw std::invalid_argument("no drops to summarize");
  ScenarioResult out;
  out.downlink = rate_stats(dl_rates(drops));
  out.uplink_coupled = rate_stats(ul_coupled_rates(drops));
  out.uplink_decoupled = rate_stats(ul_decoupled_rates(drops));
  std::size_t mismatched = 0;
  for (const auto& d : drops) {
    mismatched += d.mismatch ? 1 : 0;
    out.resamples += d.resamples;
  }
  out.mismatch_fraction = static_cast<double>(mismatched) / static_cast<double>(drops.size());
  out.drops = std::move(drops);
  return out;
}

ScenarioResult run_scenario(const ScenarioConfig& config, int workers) {
  config.validate();
  std::vector<DropResult> drops(config.n_drops);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const auto n = static_cast<long>(config.n_drops);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long d = 0; d < n; ++d) {
    try {
      drops[static_cast<std::size_t>(d)] = run_drop(config, static_cast<std::size_t>(d));
    } catch (...) {
#pragma omp critical(hetnet_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(std::move(drops));
}

GridResult run_grid(const ScenarioConfig& config, std::span<const PathLossModel> models,
                    std::span<const double> femto_biases_db, int workers) {
  config.validate();
  if (models.empty() || femto_biases_db.empty()) throw std::invalid_argument("grid needs models and biases");
  GridResult out;
  out.models.assign(models.begin(), models.end());
  out.femto_biases_db.assign(femto_biases_db.begin(), femto_biases_db.end());
  out.drops.assign(models.size(),
                   std::vector<std::vector<DropResult>>(femto_biases_db.size(), std::vector<DropResult>(config.n_drops)));

  std::vector<DownlinkPolicy> policies;
  for (double b : femto_biases_db) policies.push_back(DownlinkPolicy::femto_bias(b));
  std::vector<std::uint32_t> resamples(config.n_drops, 0);

  // Models with identical attenuation share one evaluation per drop.
  std::vector<std::size_t> first_equivalent(models.size());
  for (std::size_t m = 0; m < models.size(); ++m) {
    first_equivalent[m] = m;
    for (std::size_t k = 0; k < m; ++k) {
      if (canonical(models[k]) == canonical(models[m])) {
        first_equivalent[m] = k;
        break;
      }
    }
  }

  const int threads = workers > 0 ? workers : omp_get_max_threads();
  const auto n = static_cast<long>(config.n_drops);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long dl = 0; dl < n; ++dl) {
    const auto d = static_cast<std::size_t>(dl);
    try {
      const Drop drop = realize_drop(config, d, &resamples[d]);
      for (std::size_t m = 0; m < models.size(); ++m) {
        if (first_equivalent[m] != m) {
          for (std::size_t b = 0; b < policies.size(); ++b) out.drops[m][b][d] = out.drops[first_equivalent[m]][b][d];
          continue;
        }
        const DropEvaluator evaluator(drop, models[m], config);
        for (std::size_t b = 0; b < policies.size(); ++b) {
          DropResult r = evaluator.evaluate(policies[b]);
          r.drop_index = d;
          r.resamples = resamples[d];
          out.drops[m][b][d] = r;
        }
      }
    } catch (...) {
#pragma omp critical(hetnet_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (auto r : resamples) out.resamples += r;
  return out;
}

}  // namespace hetnet
