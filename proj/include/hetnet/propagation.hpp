#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "hetnet/random.hpp"

namespace hetnet {

struct SingleSlope {
  double alpha = 3.0;
  friend bool operator==(const SingleSlope&, const SingleSlope&) = default;
};

/// Exponent alpha0 up to the critical radius, alpha1 beyond it.
struct DualSlope {
  double alpha0 = 2.0;
  double alpha1 = 4.0;
  double critical_radius_m = 30.0;
  friend bool operator==(const DualSlope&, const DualSlope&) = default;
};

/// Distance-dependent attenuation K * (x/d0)^-alpha, optionally with a slope change at
/// the critical radius. The dual-slope far branch carries (Rc/d0)^(alpha1-alpha0) so the
/// law is continuous at Rc for any choice of units.
struct PathLossModel {
  std::variant<SingleSlope, DualSlope> slope = SingleSlope{};
  double reference_distance_m = 100.0;
  double gain_k = 1.0;  // linear

  static PathLossModel single_slope(double alpha, double reference_distance_m = 100.0, double gain_k = 1.0);
  static PathLossModel dual_slope(double alpha0, double alpha1, double critical_radius_m = 30.0,
                                  double reference_distance_m = 100.0, double gain_k = 1.0);

  bool is_dual() const noexcept { return std::holds_alternative<DualSlope>(slope); }
  /// Exponent pair (alpha, alpha) for single slope.
  double near_exponent() const noexcept;
  double far_exponent() const noexcept;
  /// "single" or "dual".
  std::string kind() const;
  /// Short label such as "single[3]" or "dual[2,4]".
  std::string label() const;

  /// Throws std::invalid_argument if any invariant is violated.
  void validate() const;

  friend bool operator==(const PathLossModel&, const PathLossModel&) = default;
};

/// base^e; the small integer exponents that occur in practice are done by
/// multiplication since this sits in the association hot loop.
inline double power(double base, double e) noexcept {
  const double ae = std::fabs(e);
  double v;
  if (ae == 0.0) {
    return 1.0;
  } else if (ae == 1.0) {
    v = base;
  } else if (ae == 2.0) {
    v = base * base;
  } else if (ae == 3.0) {
    v = base * base * base;
  } else if (ae == 4.0) {
    const double b2 = base * base;
    v = b2 * b2;
  } else if (ae == 5.0) {
    const double b2 = base * base;
    v = b2 * b2 * base;
  } else {
    return std::pow(base, e);
  }
  return e < 0.0 ? 1.0 / v : v;
}

/// PathLossModel flattened for the association hot loop. Evaluates exactly the same
/// arithmetic as path_loss_factor.
class AttenuationLaw {
 public:
  explicit AttenuationLaw(const PathLossModel& model);

  /// x must be > 0 (not checked).
  double operator()(double x_m) const noexcept {
    if (dual_ && x_m > critical_radius_m_) return far_scale_ * power(x_m / d0_, -far_alpha_);
    return gain_k_ * power(x_m / d0_, -near_alpha_);
  }

 private:
  double gain_k_;
  double far_scale_;
  double d0_;
  double near_alpha_;
  double far_alpha_;
  double critical_radius_m_;
  bool dual_;
};

/// Linear attenuation multiplying transmit power. Throws for x <= 0.
double path_loss_factor(const PathLossModel& model, double x_m);

/// The two dual-slope branches evaluated without the Rc switch; for single slope both
/// return the single-slope law. Used for continuity checks.
double near_branch_factor(const PathLossModel& model, double x_m);
double far_branch_factor(const PathLossModel& model, double x_m);

/// Smallest distance beyond which path_loss_factor is certainly below `factor`.
/// +inf when the law never decays that far (zero exponent or factor <= 0).
double distance_bound_for_factor(const PathLossModel& model, double factor) noexcept;

/// Path loss in dB (positive means attenuation). Negative inside d0 when K = 1.
double path_loss_db(const PathLossModel& model, double x_m);

/// Rayleigh power gain, Exponential(1).
struct Fading {
  double h = 1.0;
};

Fading sample_fading(Rng& rng);

struct TierConfig {
  std::string name;
  double density_per_km2 = 0.0;
  double tx_power_dbm = 0.0;
  int band = 0;

  friend bool operator==(const TierConfig&, const TierConfig&) = default;
};

double dbm_to_mw(double dbm) noexcept;
double mw_to_dbm(double mw) noexcept;
double db_to_linear(double db) noexcept;
double linear_to_db(double ratio) noexcept;

/// h * P_t(mW) * path_loss_factor(x), in mW.
double received_power_mw(double tx_power_dbm, Fading fading, const PathLossModel& model, double x_m);
inline double received_power_dbm(double tx_power_dbm, Fading fading, const PathLossModel& model, double x_m) {
  return mw_to_dbm(received_power_mw(tx_power_dbm, fading, model, x_m));
}

}  // namespace hetnet
