#include "hetnet/report.hpp"

#include <array>
#include <charconv>
#include <concepts>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace hetnet {

namespace {

class Row {
 public:
  explicit Row(std::ostream& out) : out_(out) {}
  ~Row() { out_ << '\n'; }
  Row(const Row&) = delete;
  Row& operator=(const Row&) = delete;

  Row& operator<<(double v) { return text(format_decimal(v)); }
  Row& operator<<(bool v) { return text(v ? "1" : "0"); }
  template <std::unsigned_integral T>
  Row& operator<<(T v) {
    return text(std::to_string(v));
  }
  Row& operator<<(const std::string& v) { return text(v); }
  Row& operator<<(const char* v) { return text(v); }

 private:
  Row& text(const std::string& v) {
    if (!first_) out_ << ',';
    first_ = false;
    out_ << v;
    return *this;
  }

  std::ostream& out_;
  bool first_ = true;
};

void header(std::ostream& out, const std::vector<std::string>& columns) {
  Row row(out);
  for (const auto& c : columns) row << c;
}

std::string iso8601(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

}  // namespace

std::string format_decimal(double v) {
  if (v == 0.0) return "0";  // also folds -0
  std::array<char, 512> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  if (ec != std::errc()) throw std::runtime_error("cannot format value as plain decimal");
  return std::string(buf.data(), ptr);
}

const std::vector<std::string>& density_sweep_columns() {
  static const std::vector<std::string> columns{
      "femto_density_per_km2", "macro_density_per_km2", "pl_model",           "alpha0",
      "alpha1",                "optimal_bias_dB",       "dl_p10_gain",        "dl_p50_gain",
      "dl_p90_gain",           "ul_coupled_p50",        "ul_decoupled_p50",   "ul_bias_gain",
      "ul_decoupling_gain",    "mismatch_frac_nobias",  "mismatch_frac_optbias", "femto_assoc_frac",
      "n_drops",               "seed"};
  return columns;
}

void write_drops_csv(std::ostream& out, std::span<const DropResult> drops) {
  header(out, {"drop_index", "dl_rate", "ul_rate_coupled", "ul_rate_decoupled", "dl_sinr", "ul_sinr_coupled",
               "ul_sinr_decoupled", "dl_tier", "dl_site", "ul_tier", "ul_site", "mismatch", "dl_load",
               "ul_load_coupled", "ul_load_decoupled", "femto_user_fraction", "resamples"});
  for (const auto& d : drops) {
    Row(out) << d.drop_index << d.dl_rate << d.ul_rate_coupled << d.ul_rate_decoupled << d.dl_sinr
             << d.ul_sinr_coupled << d.ul_sinr_decoupled << d.dl_serving.tier << d.dl_serving.index
             << d.ul_serving.tier << d.ul_serving.index << d.mismatch << d.dl_load << d.ul_load_coupled
             << d.ul_load_decoupled << d.femto_user_fraction << d.resamples;
  }
}

void write_summary_csv(std::ostream& out, const ScenarioResult& result) {
  header(out, {"metric", "p10", "p50", "p90", "count"});
  auto stats = [&](const char* name, const RateStats& s) { Row(out) << name << s.p10 << s.p50 << s.p90 << s.count; };
  stats("dl_rate", result.downlink);
  stats("ul_rate_coupled", result.uplink_coupled);
  stats("ul_rate_decoupled", result.uplink_decoupled);
}

void write_density_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  header(out, density_sweep_columns());
  for (const auto& p : sweep.points) {
    Row(out) << p.femto_density_per_km2 << p.macro_density_per_km2 << p.model.label() << p.model.near_exponent()
             << p.model.far_exponent() << p.optimal_bias_db << p.dl_p10_gain.ratio << p.dl_p50_gain.ratio
             << p.dl_p90_gain.ratio << p.ul_coupled_p50 << p.ul_decoupled_p50 << p.ul_bias_gain.ratio
             << p.ul_decoupling_gain.ratio << p.mismatch_frac_nobias << p.mismatch_frac_optbias
             << p.femto_assoc_frac << p.n_drops << p.seed;
  }
}

void write_density_sweep_detail_csv(std::ostream& out, const SweepResult& sweep) {
  header(out, {"femto_density_per_km2", "macro_density_per_km2", "pl_model", "optimal_bias_dB",
               "edge_optimal_bias_dB", "dl_nobias_p10", "dl_nobias_p50", "dl_nobias_p90", "dl_optbias_p10",
               "dl_optbias_p50", "dl_optbias_p90", "dl_p10_gain_dB", "dl_p50_gain_dB", "dl_p90_gain_dB",
               "dl_p10_gain_edge_optimal", "dl_p10_gain_edge_optimal_dB", "ul_coupled_nobias_p50",
               "ul_bias_gain_dB", "ul_decoupling_gain_dB", "resamples"});
  for (const auto& p : sweep.points) {
    Row(out) << p.femto_density_per_km2 << p.macro_density_per_km2 << p.model.label() << p.optimal_bias_db
             << p.edge_optimal_bias_db << p.dl_nobias.p10 << p.dl_nobias.p50 << p.dl_nobias.p90 << p.dl_optimal.p10
             << p.dl_optimal.p50 << p.dl_optimal.p90 << p.dl_p10_gain.db << p.dl_p50_gain.db << p.dl_p90_gain.db
             << p.dl_p10_gain_edge_optimal.ratio << p.dl_p10_gain_edge_optimal.db << p.ul_coupled_nobias_p50
             << p.ul_bias_gain.db << p.ul_decoupling_gain.db << p.resamples;
  }
}

void write_bias_sweep_csv(std::ostream& out, std::span<const BiasPoint> points, std::uint64_t seed) {
  header(out, {"pl_model", "alpha0", "alpha1", "femto_bias_dB", "dl_p10", "dl_p50", "dl_p90", "ul_coupled_p10",
               "ul_coupled_p50", "ul_coupled_p90", "ul_decoupled_p10", "ul_decoupled_p50", "ul_decoupled_p90",
               "mismatch_frac", "femto_assoc_frac", "n_drops", "seed"});
  for (const auto& p : points) {
    Row(out) << p.model.label() << p.model.near_exponent() << p.model.far_exponent() << p.femto_bias_db << p.dl.p10
             << p.dl.p50 << p.dl.p90 << p.ul_coupled.p10 << p.ul_coupled.p50 << p.ul_coupled.p90
             << p.ul_decoupled.p10 << p.ul_decoupled.p50 << p.ul_decoupled.p90 << p.mismatch_frac
             << p.femto_assoc_frac << p.dl.count << seed;
  }
}

nlohmann::json to_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["artifact_version"] = kArtifactVersion;
  j["command"] = manifest.command;
  j["seed"] = manifest.config.scenario.master_seed;
  j["config"] = to_json(manifest.config);
  j["started_utc"] = iso8601(manifest.started);
  j["finished_utc"] = iso8601(manifest.finished);
  j["outputs"] = nlohmann::json::array();
  for (const auto& p : manifest.outputs) j["outputs"].push_back(p.filename().string());
  j["drop_resamples"] = manifest.resamples;
  return j;
}

void write_output(const std::filesystem::path& path, const std::string& text, RunManifest& manifest) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
  manifest.outputs.push_back(path);
}

}  // namespace hetnet
