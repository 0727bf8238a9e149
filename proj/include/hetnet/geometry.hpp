#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hetnet/random.hpp"

namespace hetnet {

/// Planar position in meters.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(Position a, Position b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double squared_distance(Position a, Position b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Square deployment area [-g, g] x [-g, g], g given in kilometers.
class Region {
 public:
  explicit Region(double half_width_km);

  double half_width_km() const noexcept { return half_width_km_; }
  double half_width_m() const noexcept { return half_width_km_ * 1000.0; }
  double side_m() const noexcept { return 2.0 * half_width_m(); }
  double area_km2() const noexcept { return 4.0 * half_width_km_ * half_width_km_; }
  bool contains(Position p) const noexcept;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  double half_width_km_;
};

struct PointSet {
  std::vector<Position> points;
  std::string label;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
};

/// Homogeneous Poisson point process on the region. `intensity_per_km2` >= 0.
/// Count ~ Poisson(intensity * area), positions iid uniform.
PointSet sample_ppp(double intensity_per_km2, const Region& region, Rng& rng, std::string label = {});

/// Uniform bucket grid over a region. Points are stored bucket-major (CSR); within a
/// bucket ids are ascending, so every query order is a function of the inputs alone.
class SpatialIndex {
 public:
  SpatialIndex() = default;
  SpatialIndex(std::span<const Position> points, const Region& region, double bucket_side_m);

  /// Ids with distance <= radius, in bucket order.
  std::vector<std::uint32_t> neighbors_within(Position center, double radius) const;

  /// Walks square rings of buckets outward from the bucket holding `center`.
  /// Before ring k, `keep_going(bound)` is asked whether to continue, where `bound` is a
  /// lower bound on the distance from `center` to any point not yet visited.
  /// `visit(id, position)` is called for each point of each visited ring.
  template <class KeepGoing, class Visit>
  void search_outward(Position center, KeepGoing&& keep_going, Visit&& visit) const;

  double bucket_side() const noexcept { return side_; }
  std::size_t size() const noexcept { return ids_.size(); }
  std::span<const Position> points() const noexcept { return points_; }

 private:
  long cell_x(double x) const noexcept { return static_cast<long>(std::floor((x - origin_) / side_)); }
  long clamp_cell(long c) const noexcept { return c < 0 ? 0 : (c >= cells_ ? cells_ - 1 : c); }
  template <class Visit>
  void visit_bucket(long cx, long cy, Visit& visit) const;

  std::vector<Position> points_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> ids_;
  double origin_ = 0.0;
  double side_ = 1.0;
  long cells_ = 0;
};

/// Default bucket side for a tier: at least the critical radius and region side / 256,
/// widened so a bucket holds about one point at the given density.
double default_bucket_side(const Region& region, double critical_radius_m, double intensity_per_km2) noexcept;

template <class Visit>
void SpatialIndex::visit_bucket(long cx, long cy, Visit& visit) const {
  if (cx < 0 || cy < 0 || cx >= cells_ || cy >= cells_) return;
  const auto b = static_cast<std::size_t>(cy * cells_ + cx);
  for (std::uint32_t k = offsets_[b]; k < offsets_[b + 1]; ++k) {
    const std::uint32_t id = ids_[k];
    visit(id, points_[id]);
  }
}

template <class KeepGoing, class Visit>
void SpatialIndex::search_outward(Position center, KeepGoing&& keep_going, Visit&& visit) const {
  if (ids_.empty()) return;
  const long cx = clamp_cell(cell_x(center.x));
  const long cy = clamp_cell(cell_x(center.y));
  for (long k = 0;; ++k) {
    // Points outside the (2k-1)-wide block around (cx, cy) are at least this far.
    double bound = 0.0;
    if (k > 0) {
      const double x_lo = origin_ + static_cast<double>(cx - k + 1) * side_;
      const double x_hi = origin_ + static_cast<double>(cx + k) * side_;
      const double y_lo = origin_ + static_cast<double>(cy - k + 1) * side_;
      const double y_hi = origin_ + static_cast<double>(cy + k) * side_;
      bound = std::min({center.x - x_lo, x_hi - center.x, center.y - y_lo, y_hi - center.y});
      bound = std::max(bound, 0.0);
    }
    if (cx - k < 0 && cy - k < 0 && cx + k >= cells_ && cy + k >= cells_) return;
    if (!keep_going(bound)) return;
    if (k == 0) {
      visit_bucket(cx, cy, visit);
      continue;
    }
    for (long x = cx - k; x <= cx + k; ++x) {
      visit_bucket(x, cy - k, visit);
      visit_bucket(x, cy + k, visit);
    }
    for (long y = cy - k + 1; y <= cy + k - 1; ++y) {
      visit_bucket(cx - k, y, visit);
      visit_bucket(cx + k, y, visit);
    }
  }
}

}  // namespace hetnet
