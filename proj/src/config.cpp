#include "hetnet/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hetnet {

using nlohmann::json;

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

namespace {

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

// Walks one JSON object, remembering which keys were consumed so leftovers can be rejected.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json* find(const std::string& key) {
    auto it = node_.find(key);
    if (it == node_.end()) return nullptr;
    seen_.push_back(key);
    return &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(join(path_, key), "expected a number");
      out = v->get<double>();
    }
  }

  void count(const std::string& key, std::size_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) throw ConfigError(join(path_, key), "expected a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void seed(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) throw ConfigError(join(path_, key), "expected a non-negative integer");
      out = v->get<std::uint64_t>();
    }
  }

  void flag(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
      out = v->get<bool>();
    }
  }

  void text(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(join(path_, key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    if (const json* v = find(key)) {
      if (!v->is_array()) throw ConfigError(join(path_, key), "expected an array of numbers");
      std::vector<double> values;
      for (std::size_t i = 0; i < v->size(); ++i) {
        if (!(*v)[i].is_number()) {
          throw ConfigError(join(path_, key) + "[" + std::to_string(i) + "]", "expected a number");
        }
        values.push_back((*v)[i].get<double>());
      }
      out = std::move(values);
    }
  }

  Section child(const std::string& key) {
    const json* v = find(key);
    return Section(v ? *v : empty(), join(path_, key));
  }

  std::string key(const std::string& k) const { return join(path_, k); }
  const std::string& path() const noexcept { return path_; }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
        throw ConfigError(join(path_, it.key()), "unknown key");
      }
    }
  }

 private:
  static const json& empty() {
    static const json e = json::object();
    return e;
  }

  const json& node_;
  std::string path_;
  std::vector<std::string> seen_;
};

void positive(double v, const std::string& key) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be positive");
}

void non_negative(double v, const std::string& key) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be non-negative");
}

struct ModelDefaults {
  double critical_radius_m = 30.0;
  double reference_distance_m = 100.0;
  double gain_k = 1.0;
};

PathLossModel make_model(const std::string& kind, double alpha, double alpha0, double alpha1,
                         const ModelDefaults& d, const std::string& path) {
  positive(d.reference_distance_m, join(path, "reference_distance_m"));
  positive(d.gain_k, join(path, "gain_k"));
  if (kind == "single") {
    non_negative(alpha, join(path, "alpha"));
    return PathLossModel::single_slope(alpha, d.reference_distance_m, d.gain_k);
  }
  if (kind == "dual") {
    non_negative(alpha0, join(path, "alpha0"));
    non_negative(alpha1, join(path, "alpha1"));
    positive(d.critical_radius_m, join(path, "critical_radius_m"));
    return PathLossModel::dual_slope(alpha0, alpha1, d.critical_radius_m, d.reference_distance_m, d.gain_k);
  }
  throw ConfigError(join(path, "kind"), "expected \"single\" or \"dual\"");
}

// Explicit critical radius, reference distance and K are written back into `d`.
PathLossModel read_model(Section& s, ModelDefaults& d) {
  std::string kind = "single";
  double alpha = 3.0;
  double alpha0 = 2.0;
  double alpha1 = 4.0;
  s.text("kind", kind);
  s.number("alpha", alpha);
  s.number("alpha0", alpha0);
  s.number("alpha1", alpha1);
  s.number("critical_radius_m", d.critical_radius_m);
  s.number("reference_distance_m", d.reference_distance_m);
  s.number("gain_k", d.gain_k);
  s.finish();
  if (kind == "single" && (s.has("alpha0") || s.has("alpha1"))) {
    throw ConfigError(s.key(s.has("alpha0") ? "alpha0" : "alpha1"), "only valid for a dual-slope model");
  }
  if (kind == "dual" && s.has("alpha")) throw ConfigError(s.key("alpha"), "only valid for a single-slope model");
  return make_model(kind, alpha, alpha0, alpha1, d, s.path());
}

void read_tier(Section s, TierConfig& tier) {
  s.number("density_per_km2", tier.density_per_km2);
  s.number("tx_power_dBm", tier.tx_power_dbm);
  if (const json* v = s.find("band")) {
    if (!v->is_number_unsigned() || v->get<std::uint64_t>() > 255) {
      throw ConfigError(s.key("band"), "expected an integer in [0, 255]");
    }
    tier.band = static_cast<int>(v->get<std::uint64_t>());
  }
  s.finish();
  non_negative(tier.density_per_km2, s.key("density_per_km2"));
}

void check_densities(const std::vector<double>& v, const std::string& key) {
  if (v.empty()) throw ConfigError(key, "must not be empty");
  for (std::size_t i = 0; i < v.size(); ++i) positive(v[i], key + "[" + std::to_string(i) + "]");
}

double parse_number(std::string_view s, std::string_view whole) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad path-loss model label '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

PathLossModel parse_model_label(std::string_view label, double critical_radius_m, double reference_distance_m,
                                double gain_k) {
  std::string_view body = label;
  bool want_dual = false;
  bool want_single = false;
  if (body.starts_with("dual")) {
    want_dual = true;
    body.remove_prefix(4);
  } else if (body.starts_with("single")) {
    want_single = true;
    body.remove_prefix(6);
  }
  if (body.starts_with("[")) {
    if (!body.ends_with("]")) throw std::invalid_argument("bad path-loss model label '" + std::string(label) + "'");
    body = body.substr(1, body.size() - 2);
  } else if (want_dual || want_single) {
    throw std::invalid_argument("bad path-loss model label '" + std::string(label) + "'");
  }
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) {
    if (want_dual) throw std::invalid_argument("dual-slope label needs two exponents: '" + std::string(label) + "'");
    return PathLossModel::single_slope(parse_number(body, label), reference_distance_m, gain_k);
  }
  if (want_single) throw std::invalid_argument("single-slope label takes one exponent: '" + std::string(label) + "'");
  return PathLossModel::dual_slope(parse_number(body.substr(0, comma), label), parse_number(body.substr(comma + 1), label),
                                   critical_radius_m, reference_distance_m, gain_k);
}

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig out;
  ScenarioConfig& sc = out.scenario;
  Section root(doc, "");

  {
    Section region = root.child("region");
    double g = sc.region.half_width_km();
    region.number("half_width_km", g);
    region.finish();
    positive(g, "region.half_width_km");
    sc.region = Region(g);
  }

  {
    Section tiers = root.child("tiers");
    read_tier(tiers.child("macro"), sc.tiers[kMacroTier]);
    read_tier(tiers.child("femto"), sc.tiers[kFemtoTier]);
    tiers.finish();
  }

  root.number("user_density_per_km2", sc.user_density_per_km2);
  non_negative(sc.user_density_per_km2, "user_density_per_km2");

  ModelDefaults defaults;
  {
    Section pl = root.child("path_loss");
    sc.path_loss = read_model(pl, defaults);
  }

  root.number("noise_dBm", sc.noise_dbm);

  {
    Section dl = root.child("downlink");
    double macro = 0.0;
    double femto = 0.0;
    dl.number("macro_bias_dB", macro);
    dl.number("femto_bias_dB", femto);
    dl.finish();
    sc.downlink = (macro == 0.0 && femto == 0.0) ? DownlinkPolicy::max_received_power()
                                                 : DownlinkPolicy::biased({macro, femto});
  }

  {
    Section ul = root.child("uplink");
    std::string policy = "decoupled";
    ul.text("policy", policy);
    if (policy == "coupled") {
      sc.uplink = UplinkPolicy::coupled;
    } else if (policy == "decoupled") {
      sc.uplink = UplinkPolicy::decoupled;
    } else {
      throw ConfigError("uplink.policy", "expected \"coupled\" or \"decoupled\"");
    }
    ul.number("target_rx_dBm", sc.uplink_power.target_rx_dbm);
    ul.number("max_tx_dBm", sc.uplink_power.max_tx_dbm);
    ul.finish();
  }

  root.count("drops", sc.n_drops);
  if (sc.n_drops < 1) throw ConfigError("drops", "must be at least 1");
  root.seed("seed", sc.master_seed);
  root.flag("shared_fading", sc.shared_fading);

  {
    SweepSettings& sw = out.sweep;
    Section s = root.child("sweep");
    if (const json* b = s.find("bias_dB")) {
      const std::string key = "sweep.bias_dB";
      if (b->is_object()) {
        Section r(*b, key);
        double lo = 0.0;
        double hi = 12.0;
        double step = 1.0;
        r.number("min", lo);
        r.number("max", hi);
        r.number("step", step);
        r.finish();
        if (!(step > 0.0)) throw ConfigError(key + ".step", "must be positive");
        if (!(lo <= hi)) throw ConfigError(key + ".max", "must not be below min");
        sw.bias_grid = BiasGrid::range(lo, hi, step);
      } else if (b->is_array()) {
        sw.bias_grid.values_db.clear();
        for (std::size_t i = 0; i < b->size(); ++i) {
          if (!(*b)[i].is_number()) throw ConfigError(key + "[" + std::to_string(i) + "]", "expected a number");
          sw.bias_grid.values_db.push_back((*b)[i].get<double>());
        }
      } else {
        throw ConfigError(key, "expected an array or a {min, max, step} object");
      }
      try {
        sw.bias_grid.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
      }
    }
    s.numbers("femto_densities_per_km2", sw.femto_densities_per_km2);
    check_densities(sw.femto_densities_per_km2, "sweep.femto_densities_per_km2");
    s.numbers("macro_densities_per_km2", sw.macro_densities_per_km2);
    check_densities(sw.macro_densities_per_km2, "sweep.macro_densities_per_km2");
    s.number("femto_per_macro", sw.femto_per_macro);
    positive(sw.femto_per_macro, "sweep.femto_per_macro");
    if (const json* m = s.find("path_loss_models")) {
      const std::string key = "sweep.path_loss_models";
      if (!m->is_array() || m->empty()) throw ConfigError(key, "expected a non-empty array");
      sw.models.clear();
      for (std::size_t i = 0; i < m->size(); ++i) {
        const std::string item = key + "[" + std::to_string(i) + "]";
        const json& e = (*m)[i];
        if (e.is_string()) {
          try {
            sw.models.push_back(parse_model_label(e.get<std::string>(), defaults.critical_radius_m,
                                                  defaults.reference_distance_m, defaults.gain_k));
            sw.models.back().validate();
          } catch (const std::invalid_argument& err) {
            throw ConfigError(item, err.what());
          }
        } else {
          Section ms(e, item);
          ModelDefaults inherited = defaults;
          sw.models.push_back(read_model(ms, inherited));
        }
      }
    } else {
      sw.models = default_models(defaults.critical_radius_m, defaults.reference_distance_m, defaults.gain_k);
    }
    s.finish();
  }

  root.finish();

  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    const auto colon = what.find(": ");
    throw ConfigError(colon == std::string::npos ? "" : what.substr(0, colon),
                      colon == std::string::npos ? what : what.substr(colon + 2));
  }
  return out;
}

ExperimentConfig parse_config_text(std::string_view text) {
  json doc;
  const bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
  if (blank) {
    doc = json::object();
  } else {
    try {
      doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
  }
  return config_from_json(doc);
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

json to_json(const PathLossModel& model) {
  json j;
  if (const auto* d = std::get_if<DualSlope>(&model.slope)) {
    j["kind"] = "dual";
    j["alpha0"] = d->alpha0;
    j["alpha1"] = d->alpha1;
    j["critical_radius_m"] = d->critical_radius_m;
  } else {
    j["kind"] = "single";
    j["alpha"] = std::get<SingleSlope>(model.slope).alpha;
  }
  j["reference_distance_m"] = model.reference_distance_m;
  j["gain_k"] = model.gain_k;
  return j;
}

json to_json(const ExperimentConfig& config) {
  const ScenarioConfig& sc = config.scenario;
  auto tier = [](const TierConfig& t) {
    json j;
    j["density_per_km2"] = t.density_per_km2;
    j["tx_power_dBm"] = t.tx_power_dbm;
    j["band"] = t.band;
    return j;
  };
  json j;
  j["region"]["half_width_km"] = sc.region.half_width_km();
  j["tiers"]["macro"] = tier(sc.tiers.at(kMacroTier));
  j["tiers"]["femto"] = tier(sc.tiers.at(kFemtoTier));
  j["user_density_per_km2"] = sc.user_density_per_km2;
  j["path_loss"] = to_json(sc.path_loss);
  j["noise_dBm"] = sc.noise_dbm;
  j["downlink"]["macro_bias_dB"] = sc.downlink.bias_for(kMacroTier);
  j["downlink"]["femto_bias_dB"] = sc.downlink.bias_for(kFemtoTier);
  j["uplink"]["policy"] = sc.uplink == UplinkPolicy::coupled ? "coupled" : "decoupled";
  j["uplink"]["target_rx_dBm"] = sc.uplink_power.target_rx_dbm;
  j["uplink"]["max_tx_dBm"] = sc.uplink_power.max_tx_dbm;
  j["drops"] = sc.n_drops;
  j["seed"] = sc.master_seed;
  j["shared_fading"] = sc.shared_fading;
  json& sw = j["sweep"];
  sw["bias_dB"] = config.sweep.bias_grid.values_db;
  sw["femto_densities_per_km2"] = config.sweep.femto_densities_per_km2;
  sw["macro_densities_per_km2"] = config.sweep.macro_densities_per_km2;
  sw["femto_per_macro"] = config.sweep.femto_per_macro;
  sw["path_loss_models"] = json::array();
  for (const auto& m : config.sweep.models) sw["path_loss_models"].push_back(to_json(m));
  return j;
}

std::string emit_config(const ExperimentConfig& config) { return to_json(config).dump(2) + "\n"; }

}  // namespace hetnet
