#include "hetnet/propagation.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hetnet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_distance(double x_m) {
  if (!(x_m > 0.0)) throw std::invalid_argument("path loss needs a positive link distance");
}

// Largest x with K' * (x/d0)^-a >= f; exact inverse of the power law.
double invert_power_law(double scale, double alpha, double d0, double f) noexcept {
  if (alpha <= 0.0) return kInf;
  return d0 * std::pow(f / scale, -1.0 / alpha);
}

}  // namespace

AttenuationLaw::AttenuationLaw(const PathLossModel& model)
    : gain_k_(model.gain_k),
      far_scale_(model.gain_k),
      d0_(model.reference_distance_m),
      near_alpha_(model.near_exponent()),
      far_alpha_(model.far_exponent()),
      critical_radius_m_(std::numeric_limits<double>::infinity()),
      dual_(model.is_dual()) {
  if (const auto* d = std::get_if<DualSlope>(&model.slope)) {
    critical_radius_m_ = d->critical_radius_m;
    far_scale_ = model.gain_k * power(d->critical_radius_m / d0_, d->alpha1 - d->alpha0);
  }
}

PathLossModel PathLossModel::single_slope(double alpha, double reference_distance_m, double gain_k) {
  PathLossModel m{SingleSlope{alpha}, reference_distance_m, gain_k};
  m.validate();
  return m;
}

PathLossModel PathLossModel::dual_slope(double alpha0, double alpha1, double critical_radius_m,
                                        double reference_distance_m, double gain_k) {
  PathLossModel m{DualSlope{alpha0, alpha1, critical_radius_m}, reference_distance_m, gain_k};
  m.validate();
  return m;
}

double PathLossModel::near_exponent() const noexcept {
  return std::visit(overloaded{[](const SingleSlope& s) { return s.alpha; },
                               [](const DualSlope& d) { return d.alpha0; }},
                    slope);
}

double PathLossModel::far_exponent() const noexcept {
  return std::visit(overloaded{[](const SingleSlope& s) { return s.alpha; },
                               [](const DualSlope& d) { return d.alpha1; }},
                    slope);
}

std::string PathLossModel::kind() const { return is_dual() ? "dual" : "single"; }

std::string PathLossModel::label() const {
  std::ostringstream os;
  if (is_dual()) {
    os << "dual[" << near_exponent() << ',' << far_exponent() << ']';
  } else {
    os << "single[" << near_exponent() << ']';
  }
  return os.str();
}

void PathLossModel::validate() const {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!finite_nonneg(near_exponent()) || !finite_nonneg(far_exponent())) {
    throw std::invalid_argument("path loss exponents must be finite and non-negative");
  }
  if (!(reference_distance_m > 0.0) || !std::isfinite(reference_distance_m)) {
    throw std::invalid_argument("reference distance must be positive");
  }
  if (!(gain_k > 0.0) || !std::isfinite(gain_k)) throw std::invalid_argument("gain K must be positive");
  if (const auto* d = std::get_if<DualSlope>(&slope)) {
    if (!(d->critical_radius_m > 0.0) || !std::isfinite(d->critical_radius_m)) {
      throw std::invalid_argument("critical radius must be positive");
    }
  }
}

double near_branch_factor(const PathLossModel& model, double x_m) {
  require_positive_distance(x_m);
  return model.gain_k * power(x_m / model.reference_distance_m, -model.near_exponent());
}

double far_branch_factor(const PathLossModel& model, double x_m) {
  require_positive_distance(x_m);
  const double d0 = model.reference_distance_m;
  return std::visit(
      overloaded{
          [&](const SingleSlope& s) { return model.gain_k * power(x_m / d0, -s.alpha); },
          [&](const DualSlope& d) {
            const double continuity = power(d.critical_radius_m / d0, d.alpha1 - d.alpha0);
            return model.gain_k * continuity * power(x_m / d0, -d.alpha1);
          }},
      model.slope);
}

double path_loss_factor(const PathLossModel& model, double x_m) {
  require_positive_distance(x_m);
  return AttenuationLaw(model)(x_m);
}

double distance_bound_for_factor(const PathLossModel& model, double factor) noexcept {
  if (!(factor > 0.0)) return kInf;
  const double d0 = model.reference_distance_m;
  double x = std::visit(
      overloaded{[&](const SingleSlope& s) { return invert_power_law(model.gain_k, s.alpha, d0, factor); },
                 [&](const DualSlope& d) {
                   const double near = invert_power_law(model.gain_k, d.alpha0, d0, factor);
                   if (near <= d.critical_radius_m) return near;
                   const double continuity = power(d.critical_radius_m / d0, d.alpha1 - d.alpha0);
                   const double far = invert_power_law(model.gain_k * continuity, d.alpha1, d0, factor);
                   return std::max(far, d.critical_radius_m);
                 }},
      model.slope);
  // Round-off margin; only ever widens the bound.
  return x * (1.0 + 1e-9) + 1e-9;
}

double path_loss_db(const PathLossModel& model, double x_m) { return -linear_to_db(path_loss_factor(model, x_m)); }

Fading sample_fading(Rng& rng) { return Fading{exponential_from_bits(rng())}; }

double dbm_to_mw(double dbm) noexcept { return std::pow(10.0, dbm / 10.0); }
double mw_to_dbm(double mw) noexcept { return 10.0 * std::log10(mw); }
double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
double linear_to_db(double ratio) noexcept { return 10.0 * std::log10(ratio); }

double received_power_mw(double tx_power_dbm, Fading fading, const PathLossModel& model, double x_m) {
  return fading.h * dbm_to_mw(tx_power_dbm) * path_loss_factor(model, x_m);
}

}  // namespace hetnet
