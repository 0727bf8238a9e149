#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "hetnet/config.hpp"

using namespace hetnet;

namespace {

std::string key_of(std::string_view text) {
  try {
    parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("an empty document yields the defaults") {
  const ExperimentConfig c = parse_config_text("{}");
  CHECK(c == ExperimentConfig{});
  CHECK(parse_config_text("") == ExperimentConfig{});
  CHECK(c.scenario.tiers[kMacroTier].density_per_km2 == 1.0);
  CHECK(c.scenario.tiers[kFemtoTier].tx_power_dbm == 23.0);
  CHECK(c.scenario.user_density_per_km2 == 200.0);
  CHECK(c.scenario.noise_dbm == -10.0);
  CHECK(c.scenario.n_drops == 2000);
  CHECK(c.sweep.bias_grid == BiasGrid::standard());
  CHECK(c.sweep.models.size() == 6);
}

TEST_CASE("values are read into the scenario") {
  const ExperimentConfig c = parse_config_text(R"({
    "region": {"half_width_km": 2},
    "tiers": {"femto": {"density_per_km2": 25, "tx_power_dBm": 20}},
    "path_loss": {"kind": "dual", "alpha0": 2, "alpha1": 4, "critical_radius_m": 40},
    "downlink": {"femto_bias_dB": 6},
    "uplink": {"policy": "coupled", "target_rx_dBm": -80},
    "drops": 77, "seed": 5, "shared_fading": true,
    "sweep": {"bias_dB": {"min": 0, "max": 6, "step": 2}, "path_loss_models": ["single[3]", "dual[3,4]"]}
  })");
  CHECK(c.scenario.region.half_width_km() == 2.0);
  CHECK(c.scenario.tiers[kFemtoTier].density_per_km2 == 25.0);
  CHECK(c.scenario.tiers[kFemtoTier].tx_power_dbm == 20.0);
  CHECK(c.scenario.path_loss == PathLossModel::dual_slope(2.0, 4.0, 40.0));
  CHECK(c.scenario.downlink == DownlinkPolicy::femto_bias(6.0));
  CHECK(c.scenario.uplink == UplinkPolicy::coupled);
  CHECK(c.scenario.uplink_power.target_rx_dbm == -80.0);
  CHECK(c.scenario.n_drops == 77);
  CHECK(c.scenario.master_seed == 5);
  CHECK(c.scenario.shared_fading);
  CHECK(c.sweep.bias_grid.values_db == std::vector<double>{0.0, 2.0, 4.0, 6.0});
  REQUIRE(c.sweep.models.size() == 2);
  // Sweep models inherit the critical radius given under path_loss.
  CHECK(c.sweep.models[1] == PathLossModel::dual_slope(3.0, 4.0, 40.0));
}

TEST_CASE("errors name the offending key") {
  CHECK(key_of(R"({"tiers": {"femto": {"density_per_km2": -1}}})") == "tiers.femto.density_per_km2");
  CHECK(key_of(R"({"tiers": {"femto": {"density_per_km2": "many"}}})") == "tiers.femto.density_per_km2");
  CHECK(key_of(R"({"drops": 0})") == "drops");
  CHECK(key_of(R"({"colour": 1})") == "colour");
  CHECK(key_of(R"({"uplink": {"policy": "sideways"}}})") == "");
  CHECK(key_of(R"({"uplink": {"policy": "sideways"}})") == "uplink.policy");
  CHECK(key_of(R"({"path_loss": {"kind": "dual", "alpha0": -1, "alpha1": 2}})").starts_with("path_loss"));
  CHECK(key_of(R"({"sweep": {"bias_dB": [3, 1]}})") == "sweep.bias_dB");
  CHECK(key_of(R"({"sweep": {"path_loss_models": ["triple[1,2,3]"]}})").starts_with("sweep.path_loss_models"));
  CHECK(key_of("[1, 2]") == "");
  CHECK(key_of("{\"drops\": ") == "");
}

TEST_CASE("a missing file is a config error") {
  CHECK_THROWS_AS(parse_config("/nonexistent/hetnet.json"), ConfigError);
}

TEST_CASE("emitted config parses back to an equal config") {
  ExperimentConfig c;
  c.scenario.region = Region(3.0);
  c.scenario.tiers[kMacroTier].density_per_km2 = 0.5;
  c.scenario.path_loss = PathLossModel::dual_slope(3.0, 4.0, 25.0);
  c.scenario.downlink = DownlinkPolicy::femto_bias(4.5);
  c.scenario.master_seed = 123456789012345ULL;
  c.sweep.bias_grid = BiasGrid::range(0.0, 3.0, 0.5);
  c.sweep.femto_densities_per_km2 = {0.1, 1.0 / 3.0, 100.0};
  c.sweep.models = {PathLossModel::single_slope(2.5), PathLossModel::dual_slope(2.0, 4.0, 25.0)};
  CHECK(parse_config_text(emit_config(c)) == c);
  CHECK(parse_config_text(emit_config(ExperimentConfig{})) == ExperimentConfig{});

  const auto path = std::filesystem::temp_directory_path() / "hetnet_config_roundtrip.json";
  std::ofstream(path) << emit_config(c);
  CHECK(parse_config(path) == c);
  std::filesystem::remove(path);
}

TEST_CASE("model labels") {
  CHECK(parse_model_label("single[3]") == PathLossModel::single_slope(3.0));
  CHECK(parse_model_label("3") == PathLossModel::single_slope(3.0));
  CHECK(parse_model_label("dual[2,4]") == PathLossModel::dual_slope(2.0, 4.0));
  CHECK(parse_model_label("[2, 4]") == PathLossModel::dual_slope(2.0, 4.0));
  CHECK(parse_model_label("dual[3,4]", 50.0).label() == "dual[3,4]");
  CHECK(parse_model_label("dual[4,2]") == PathLossModel::dual_slope(4.0, 2.0));
  CHECK_THROWS(parse_model_label("dual[-1,2]"));
  CHECK_THROWS(parse_model_label("single[]"));
  CHECK_THROWS(parse_model_label("banana"));
}
