#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hetnet/engine.hpp"

namespace hetnet {

/// Femto bias values in dB, sorted ascending. Macro stays at 0 dB.
struct BiasGrid {
  std::vector<double> values_db;

  /// lo, lo + step, ..., hi (inclusive, snapped to the step lattice).
  static BiasGrid range(double lo_db, double hi_db, double step_db);
  static BiasGrid standard() { return range(0.0, 12.0, 1.0); }
  void validate() const;

  friend bool operator==(const BiasGrid&, const BiasGrid&) = default;
};

struct Gain {
  double ratio = 1.0;
  double db = 0.0;
};

/// with / without; throws unless without > 0.
Gain gain(double metric_with, double metric_without);

/// Mean mismatch flag; throws on empty input.
double decoupling_fraction(std::span<const DropResult> drops);

struct OptimalBias {
  double bias_db = 0.0;
  double objective = 0.0;  // the maximized percentile of the downlink rate
  std::size_t grid_index = 0;
};

/// Exhaustive argmax over the grid of the q-th percentile downlink rate of model `model`;
/// ties go to the smaller bias.
OptimalBias select_optimal_bias(const GridResult& grid, std::size_t model, double q = 50.0);

/// Evaluates every grid bias on the same drops (common random numbers).
OptimalBias optimal_bias(const ScenarioConfig& config, const BiasGrid& grid, int workers = 0, double q = 50.0);

/// One (density, path-loss model) point of a sweep.
struct SweepPoint {
  double femto_density_per_km2 = 0.0;
  double macro_density_per_km2 = 0.0;
  PathLossModel model;

  double optimal_bias_db = 0.0;       // maximizes the median downlink rate
  double edge_optimal_bias_db = 0.0;  // maximizes the 10th percentile instead
  RateStats dl_nobias;
  RateStats dl_optimal;
  Gain dl_p10_gain;
  Gain dl_p50_gain;
  Gain dl_p90_gain;
  Gain dl_p10_gain_edge_optimal;

  double ul_coupled_nobias_p50 = 0.0;
  double ul_coupled_p50 = 0.0;  // coupled to the median-optimal downlink association
  double ul_decoupled_p50 = 0.0;
  Gain ul_bias_gain;        // coupled at optimal bias over coupled without bias
  Gain ul_decoupling_gain;  // decoupled over coupled at optimal bias

  double mismatch_frac_nobias = 0.0;
  double mismatch_frac_optbias = 0.0;
  double femto_assoc_frac = 0.0;  // no bias, population share

  std::size_t n_drops = 0;
  std::uint64_t seed = 0;
  std::size_t resamples = 0;

  /// Per-drop results without bias and at the median-optimal bias, paired by drop index.
  std::vector<DropResult> nobias;
  std::vector<DropResult> optimal;
};

struct SweepResult {
  std::string swept_variable;
  std::vector<SweepPoint> points;  // density-major, then model
};

/// All sweep points of one network density for every model, on shared drops.
std::vector<SweepPoint> evaluate_density_point(const ScenarioConfig& config, std::span<const PathLossModel> models,
                                               const BiasGrid& grid, int workers = 0);

/// Macro density held at the base config value, femto density swept.
SweepResult density_sweep(const ScenarioConfig& base, std::span<const double> femto_densities,
                          std::span<const PathLossModel> models, const BiasGrid& grid, int workers = 0);

/// Both tiers swept with femto = ratio * macro.
SweepResult joint_density_sweep(const ScenarioConfig& base, std::span<const double> macro_densities, double ratio,
                                std::span<const PathLossModel> models, const BiasGrid& grid, int workers = 0);

/// Same evaluation as density_sweep; the uplink columns are its payload.
SweepResult decoupling_gain_sweep(const ScenarioConfig& base, std::span<const double> femto_densities,
                                  std::span<const PathLossModel> models, const BiasGrid& grid, int workers = 0);

/// Per-bias summary for one model.
struct BiasPoint {
  PathLossModel model;
  double femto_bias_db = 0.0;
  RateStats dl;
  RateStats ul_coupled;
  RateStats ul_decoupled;
  double mismatch_frac = 0.0;
  double femto_assoc_frac = 0.0;
};

std::vector<BiasPoint> bias_sweep(const ScenarioConfig& config, std::span<const PathLossModel> models,
                                  const BiasGrid& grid, int workers = 0);

/// Default femto densities: 8 log-spaced points over 10^-1 .. 10^2.5 per km^2.
std::vector<double> default_femto_densities();

/// Single slope 2 and 3, dual [2,2], [2,4], [3,3], [3,4].
std::vector<PathLossModel> default_models(double critical_radius_m = 30.0, double reference_distance_m = 100.0,
                                          double gain_k = 1.0);

}  // namespace hetnet
