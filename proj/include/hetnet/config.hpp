#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hetnet/engine.hpp"
#include "hetnet/sweep.hpp"

namespace hetnet {

/// Sweep axes; a scenario run ignores them.
struct SweepSettings {
  BiasGrid bias_grid = BiasGrid::standard();
  std::vector<double> femto_densities_per_km2 = default_femto_densities();
  std::vector<double> macro_densities_per_km2{0.5, 1.0, 2.0, 5.0};
  double femto_per_macro = 10.0;
  std::vector<PathLossModel> models = default_models();

  friend bool operator==(const SweepSettings&, const SweepSettings&) = default;
};

struct ExperimentConfig {
  ScenarioConfig scenario;
  SweepSettings sweep;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Raised for unreadable, malformed or out-of-range configuration. `key()` is the dotted
/// path of the offending entry, or empty when the file as a whole is at fault.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message);
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Omitted keys take their defaults; unknown keys are rejected.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig config_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const PathLossModel& model);
/// Pretty-printed JSON that parses back to an equal config.
std::string emit_config(const ExperimentConfig& config);

/// Accepts "single[3]", "dual[2,4]" and the bare forms "3", "[2,4]".
PathLossModel parse_model_label(std::string_view label, double critical_radius_m = 30.0,
                                double reference_distance_m = 100.0, double gain_k = 1.0);

}  // namespace hetnet
