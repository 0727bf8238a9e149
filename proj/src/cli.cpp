#include "hetnet/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hetnet/config.hpp"
#include "hetnet/report.hpp"
#include "hetnet/sweep.hpp"
#include "hetnet/validation.hpp"

namespace hetnet {

namespace {

namespace fs = std::filesystem;

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> drops;
  int workers = 0;
  std::string out_dir = ".";
  std::string config;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--drops", f.drops, "Monte Carlo drops per scenario");
  cmd->add_option("--workers", f.workers, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out-dir", f.out_dir, "directory for CSV files and the manifest");
  cmd->add_option("--config", f.config, "JSON configuration file");
}

ExperimentConfig effective_config(const Flags& f) {
  ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : parse_config(f.config);
  if (f.seed) cfg.scenario.master_seed = *f.seed;
  if (f.drops) {
    if (*f.drops < 1) throw ConfigError("drops", "must be at least 1");
    cfg.scenario.n_drops = *f.drops;
  }
  return cfg;
}

std::string csv(const std::function<void(std::ostream&)>& write) {
  std::ostringstream s;
  write(s);
  return s.str();
}

std::size_t total_resamples(const SweepResult& sweep) {
  // Points of one density share their drops; count each density once.
  std::size_t total = 0;
  double last_f = -1.0;
  double last_m = -1.0;
  for (const auto& p : sweep.points) {
    if (p.femto_density_per_km2 != last_f || p.macro_density_per_km2 != last_m) total += p.resamples;
    last_f = p.femto_density_per_km2;
    last_m = p.macro_density_per_km2;
  }
  return total;
}

void print_sweep(std::ostream& out, const SweepResult& sweep) {
  for (const auto& p : sweep.points) {
    out << sweep.swept_variable << '=' << format_decimal(sweep.swept_variable == "macro_density_per_km2"
                                                             ? p.macro_density_per_km2
                                                             : p.femto_density_per_km2)
        << ' ' << p.model.label() << " optimal_bias_dB=" << format_decimal(p.optimal_bias_db)
        << " dl_p50_gain=" << p.dl_p50_gain.ratio << " ul_decoupling_gain=" << p.ul_decoupling_gain.ratio << '\n';
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-tier HetNet Monte Carlo simulator", "hetnet_sim"};
  app.require_subcommand(1);
  Flags flags;

  auto* run = app.add_subcommand("run", "single scenario, per-drop and summary CSVs");
  auto* bias = app.add_subcommand("sweep-bias", "rate statistics over the femto bias grid");
  auto* density = app.add_subcommand("sweep-density", "femto density sweep, macro density fixed");
  auto* joint = app.add_subcommand("sweep-joint-density", "both densities swept at a fixed femto-per-macro ratio");
  auto* decoupling = app.add_subcommand("sweep-decoupling", "uplink coupled vs decoupled over femto density");
  auto* validate = app.add_subcommand("validate", "invariant and oracle-equivalence suite");
  for (auto* cmd : {run, bias, density, joint, decoupling, validate}) add_common(cmd, flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  ExperimentConfig cfg;
  try {
    cfg = effective_config(flags);
    cfg.scenario.validate();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const ScenarioConfig& sc = cfg.scenario;
  const SweepSettings& sw = cfg.sweep;
  const fs::path dir(flags.out_dir);
  RunManifest manifest;
  manifest.config = cfg;
  manifest.started = std::chrono::system_clock::now();

  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory '" + dir.string() + "'");

    int status = kExitOk;
    if (run->parsed()) {
      manifest.command = "run";
      const ScenarioResult r = run_scenario(sc, flags.workers);
      manifest.resamples = r.resamples;
      write_output(dir / "run_drops.csv", csv([&](std::ostream& s) { write_drops_csv(s, r.drops); }), manifest);
      write_output(dir / "run_summary.csv", csv([&](std::ostream& s) { write_summary_csv(s, r); }), manifest);
      out << "drops=" << r.drops.size() << " dl_p50=" << r.downlink.p50 << " ul_decoupled_p50="
          << r.uplink_decoupled.p50 << " mismatch_fraction=" << r.mismatch_fraction << '\n';
    } else if (bias->parsed()) {
      manifest.command = "sweep-bias";
      const auto points = bias_sweep(sc, sw.models, sw.bias_grid, flags.workers);
      write_output(dir / "bias_sweep.csv",
                   csv([&](std::ostream& s) { write_bias_sweep_csv(s, points, sc.master_seed); }), manifest);
      out << "bias points=" << points.size() << '\n';
    } else if (density->parsed() || joint->parsed() || decoupling->parsed()) {
      SweepResult sweep;
      std::string stem;
      if (density->parsed()) {
        manifest.command = stem = "sweep-density";
        sweep = density_sweep(sc, sw.femto_densities_per_km2, sw.models, sw.bias_grid, flags.workers);
      } else if (joint->parsed()) {
        manifest.command = stem = "sweep-joint-density";
        sweep = joint_density_sweep(sc, sw.macro_densities_per_km2, sw.femto_per_macro, sw.models, sw.bias_grid,
                                    flags.workers);
      } else {
        manifest.command = stem = "sweep-decoupling";
        sweep = decoupling_gain_sweep(sc, sw.femto_densities_per_km2, sw.models, sw.bias_grid, flags.workers);
      }
      std::replace(stem.begin(), stem.end(), '-', '_');
      manifest.resamples = total_resamples(sweep);
      write_output(dir / (stem + ".csv"), csv([&](std::ostream& s) { write_density_sweep_csv(s, sweep); }), manifest);
      write_output(dir / (stem + "_detail.csv"),
                   csv([&](std::ostream& s) { write_density_sweep_detail_csv(s, sweep); }), manifest);
      print_sweep(out, sweep);
    } else if (validate->parsed()) {
      manifest.command = "validate";
      const ValidationReport report = run_validation({sc.master_seed, 100});
      write_output(dir / "validation.csv", csv([&](std::ostream& s) {
                     s << "check,passed,detail\n";
                     for (const auto& c : report.checks) s << '"' << c.name << "\"," << c.passed << ",\"" << c.detail << "\"\n";
                   }),
                   manifest);
      for (const auto& c : report.checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      out << "passed " << report.passed() << ", failed " << report.failed() << '\n';
      if (!report.ok()) status = kExitRuntime;
    }

    manifest.finished = std::chrono::system_clock::now();
    std::string stem = manifest.command;
    std::replace(stem.begin(), stem.end(), '-', '_');
    const fs::path manifest_path = dir / (stem + "_manifest.json");
    RunManifest copy = manifest;
    write_output(manifest_path, to_json(manifest).dump(2) + "\n", copy);
    return status;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace hetnet
