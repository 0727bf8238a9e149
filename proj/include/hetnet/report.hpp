#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hetnet/config.hpp"
#include "hetnet/engine.hpp"
#include "hetnet/sweep.hpp"

namespace hetnet {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Shortest round-trip plain decimal, independent of the global locale.
std::string format_decimal(double v);

/// The density-sweep header, in column order.
const std::vector<std::string>& density_sweep_columns();

void write_drops_csv(std::ostream& out, std::span<const DropResult> drops);
void write_summary_csv(std::ostream& out, const ScenarioResult& result);
void write_density_sweep_csv(std::ostream& out, const SweepResult& sweep);
/// dB gains, edge-optimal bias and the remaining per-point statistics.
void write_density_sweep_detail_csv(std::ostream& out, const SweepResult& sweep);
void write_bias_sweep_csv(std::ostream& out, std::span<const BiasPoint> points, std::uint64_t seed);

struct RunManifest {
  std::string command;
  ExperimentConfig config;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
  std::vector<std::filesystem::path> outputs;
  std::size_t resamples = 0;
};

nlohmann::json to_json(const RunManifest& manifest);

/// Writes `text` to `path` and appends the path to `manifest.outputs`. Throws
/// std::runtime_error when the file cannot be written.
void write_output(const std::filesystem::path& path, const std::string& text, RunManifest& manifest);

}  // namespace hetnet
