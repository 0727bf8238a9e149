#include "hetnet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hetnet {

BiasGrid BiasGrid::range(double lo_db, double hi_db, double step_db) {
  if (!(step_db > 0.0) || !(hi_db >= lo_db) || !std::isfinite(lo_db) || !std::isfinite(hi_db)) {
    throw std::invalid_argument("bias grid needs lo <= hi and a positive step");
  }
  BiasGrid g;
  const auto steps = static_cast<long>(std::floor((hi_db - lo_db) / step_db + 1e-9));
  for (long i = 0; i <= steps; ++i) g.values_db.push_back(lo_db + static_cast<double>(i) * step_db);
  return g;
}

void BiasGrid::validate() const {
  if (values_db.empty()) throw std::invalid_argument("bias grid is empty");
  for (double v : values_db) {
    if (!std::isfinite(v)) throw std::invalid_argument("bias grid values must be finite");
  }
  if (!std::is_sorted(values_db.begin(), values_db.end())) throw std::invalid_argument("bias grid must be sorted");
}

Gain gain(double metric_with, double metric_without) {
  if (!(metric_without > 0.0)) throw std::invalid_argument("gain needs a positive baseline");
  const double ratio = metric_with / metric_without;
  return {ratio, linear_to_db(ratio)};
}

double decoupling_fraction(std::span<const DropResult> drops) {
  if (drops.empty()) throw std::invalid_argument("decoupling fraction of no drops");
  std::size_t n = 0;
  for (const auto& d : drops) n += d.mismatch ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(drops.size());
}

OptimalBias select_optimal_bias(const GridResult& grid, std::size_t model, double q) {
  OptimalBias best;
  for (std::size_t b = 0; b < grid.femto_biases_db.size(); ++b) {
    const double v = percentile(dl_rates(grid.at(model, b)), q);
    if (b == 0 || v > best.objective) best = {grid.femto_biases_db[b], v, b};
  }
  return best;
}

OptimalBias optimal_bias(const ScenarioConfig& config, const BiasGrid& grid, int workers, double q) {
  grid.validate();
  const PathLossModel models[] = {config.path_loss};
  return select_optimal_bias(run_grid(config, models, grid.values_db, workers), 0, q);
}

namespace {

double mean_femto_fraction(std::span<const DropResult> drops) {
  double s = 0.0;
  for (const auto& d : drops) s += d.femto_user_fraction;
  return s / static_cast<double>(drops.size());
}

// Grid biases always include 0 dB as the "no biasing" baseline.
std::vector<double> with_zero(const BiasGrid& grid, std::size_t& zero_index) {
  std::vector<double> v = grid.values_db;
  auto it = std::find(v.begin(), v.end(), 0.0);
  if (it == v.end()) {
    v.insert(std::lower_bound(v.begin(), v.end(), 0.0), 0.0);
    it = std::find(v.begin(), v.end(), 0.0);
  }
  zero_index = static_cast<std::size_t>(it - v.begin());
  return v;
}

}  // namespace

std::vector<SweepPoint> evaluate_density_point(const ScenarioConfig& config, std::span<const PathLossModel> models,
                                               const BiasGrid& grid, int workers) {
  grid.validate();
  std::size_t zero = 0;
  const std::vector<double> biases = with_zero(grid, zero);
  const GridResult result = run_grid(config, models, biases, workers);

  std::vector<SweepPoint> points;
  for (std::size_t m = 0; m < models.size(); ++m) {
    SweepPoint p;
    p.macro_density_per_km2 = config.tiers[kMacroTier].density_per_km2;
    p.femto_density_per_km2 = config.tiers[kFemtoTier].density_per_km2;
    p.model = models[m];
    p.n_drops = config.n_drops;
    p.seed = config.master_seed;
    p.resamples = result.resamples;

    const OptimalBias median_opt = select_optimal_bias(result, m, 50.0);
    const OptimalBias edge_opt = select_optimal_bias(result, m, 10.0);
    p.optimal_bias_db = median_opt.bias_db;
    p.edge_optimal_bias_db = edge_opt.bias_db;

    const auto none = result.at(m, zero);
    const auto opt = result.at(m, median_opt.grid_index);
    p.nobias.assign(none.begin(), none.end());
    p.optimal.assign(opt.begin(), opt.end());

    p.dl_nobias = rate_stats(dl_rates(none));
    p.dl_optimal = rate_stats(dl_rates(opt));
    p.dl_p10_gain = gain(p.dl_optimal.p10, p.dl_nobias.p10);
    p.dl_p50_gain = gain(p.dl_optimal.p50, p.dl_nobias.p50);
    p.dl_p90_gain = gain(p.dl_optimal.p90, p.dl_nobias.p90);
    p.dl_p10_gain_edge_optimal = gain(percentile(dl_rates(result.at(m, edge_opt.grid_index)), 10.0), p.dl_nobias.p10);

    p.ul_coupled_nobias_p50 = percentile(ul_coupled_rates(none), 50.0);
    p.ul_coupled_p50 = percentile(ul_coupled_rates(opt), 50.0);
    p.ul_decoupled_p50 = percentile(ul_decoupled_rates(opt), 50.0);
    p.ul_bias_gain = gain(p.ul_coupled_p50, p.ul_coupled_nobias_p50);
    p.ul_decoupling_gain = gain(p.ul_decoupled_p50, p.ul_coupled_p50);

    p.mismatch_frac_nobias = decoupling_fraction(none);
    p.mismatch_frac_optbias = decoupling_fraction(opt);
    p.femto_assoc_frac = mean_femto_fraction(none);
    points.push_back(std::move(p));
  }
  return points;
}

SweepResult density_sweep(const ScenarioConfig& base, std::span<const double> femto_densities,
                          std::span<const PathLossModel> models, const BiasGrid& grid, int workers) {
  SweepResult out{"femto_density_per_km2", {}};
  for (double density : femto_densities) {
    if (!(density > 0.0)) throw std::invalid_argument("sweep densities must be positive");
    ScenarioConfig cfg = base;
    cfg.tiers[kFemtoTier].density_per_km2 = density;
    for (auto& p : evaluate_density_point(cfg, models, grid, workers)) out.points.push_back(std::move(p));
  }
  return out;
}

SweepResult joint_density_sweep(const ScenarioConfig& base, std::span<const double> macro_densities, double ratio,
                                std::span<const PathLossModel> models, const BiasGrid& grid, int workers) {
  if (!(ratio > 0.0)) throw std::invalid_argument("femto-per-macro ratio must be positive");
  SweepResult out{"macro_density_per_km2", {}};
  for (double density : macro_densities) {
    if (!(density > 0.0)) throw std::invalid_argument("sweep densities must be positive");
    ScenarioConfig cfg = base;
    cfg.tiers[kMacroTier].density_per_km2 = density;
    cfg.tiers[kFemtoTier].density_per_km2 = ratio * density;
    for (auto& p : evaluate_density_point(cfg, models, grid, workers)) out.points.push_back(std::move(p));
  }
  return out;
}

SweepResult decoupling_gain_sweep(const ScenarioConfig& base, std::span<const double> femto_densities,
                                  std::span<const PathLossModel> models, const BiasGrid& grid, int workers) {
  return density_sweep(base, femto_densities, models, grid, workers);
}

std::vector<BiasPoint> bias_sweep(const ScenarioConfig& config, std::span<const PathLossModel> models,
                                  const BiasGrid& grid, int workers) {
  grid.validate();
  const GridResult result = run_grid(config, models, grid.values_db, workers);
  std::vector<BiasPoint> out;
  for (std::size_t m = 0; m < models.size(); ++m) {
    for (std::size_t b = 0; b < grid.values_db.size(); ++b) {
      const auto drops = result.at(m, b);
      out.push_back({models[m], grid.values_db[b], rate_stats(dl_rates(drops)), rate_stats(ul_coupled_rates(drops)),
                     rate_stats(ul_decoupled_rates(drops)), decoupling_fraction(drops), mean_femto_fraction(drops)});
    }
  }
  return out;
}

std::vector<double> default_femto_densities() {
  std::vector<double> v;
  for (int i = 0; i < 8; ++i) v.push_back(std::pow(10.0, -1.0 + 0.5 * i));
  return v;
}

std::vector<PathLossModel> default_models(double critical_radius_m, double reference_distance_m, double gain_k) {
  return {PathLossModel::single_slope(2.0, reference_distance_m, gain_k),
          PathLossModel::single_slope(3.0, reference_distance_m, gain_k),
          PathLossModel::dual_slope(2.0, 2.0, critical_radius_m, reference_distance_m, gain_k),
          PathLossModel::dual_slope(2.0, 4.0, critical_radius_m, reference_distance_m, gain_k),
          PathLossModel::dual_slope(3.0, 3.0, critical_radius_m, reference_distance_m, gain_k),
          PathLossModel::dual_slope(3.0, 4.0, critical_radius_m, reference_distance_m, gain_k)};
}

}  // namespace hetnet
