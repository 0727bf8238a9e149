#include "hetnet/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace hetnet {

Region::Region(double half_width_km) : half_width_km_(half_width_km) {
  if (!(half_width_km > 0.0) || !std::isfinite(half_width_km)) {
    throw std::invalid_argument("region half width must be positive and finite");
  }
}

bool Region::contains(Position p) const noexcept {
  const double g = half_width_m();
  return p.x >= -g && p.x <= g && p.y >= -g && p.y <= g;
}

PointSet sample_ppp(double intensity_per_km2, const Region& region, Rng& rng, std::string label) {
  if (!(intensity_per_km2 >= 0.0) || !std::isfinite(intensity_per_km2)) {
    throw std::invalid_argument("PPP intensity must be non-negative and finite");
  }
  PointSet out;
  out.label = std::move(label);
  const double mean = intensity_per_km2 * region.area_km2();
  if (mean == 0.0) return out;

  std::poisson_distribution<long> count_dist(mean);
  const long count = count_dist(rng);
  const double g = region.half_width_m();
  std::uniform_real_distribution<double> coord(-g, g);
  out.points.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    out.points.push_back({x, y});
  }
  return out;
}

SpatialIndex::SpatialIndex(std::span<const Position> points, const Region& region, double bucket_side_m)
    : points_(points.begin(), points.end()), origin_(-region.half_width_m()), side_(bucket_side_m) {
  if (!(bucket_side_m > 0.0)) throw std::invalid_argument("bucket side must be positive");
  cells_ = std::max(1L, static_cast<long>(std::ceil(region.side_m() / side_)));

  const auto n_buckets = static_cast<std::size_t>(cells_ * cells_);
  std::vector<std::uint32_t> bucket_of(points_.size());
  offsets_.assign(n_buckets + 1, 0);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const long bx = clamp_cell(cell_x(points_[i].x));
    const long by = clamp_cell(cell_x(points_[i].y));
    bucket_of[i] = static_cast<std::uint32_t>(by * cells_ + bx);
    ++offsets_[bucket_of[i] + 1];
  }
  for (std::size_t b = 0; b < n_buckets; ++b) offsets_[b + 1] += offsets_[b];

  // Counting sort keeps ids ascending inside each bucket.
  ids_.resize(points_.size());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < points_.size(); ++i) {
    ids_[cursor[bucket_of[i]]++] = static_cast<std::uint32_t>(i);
  }
}

std::vector<std::uint32_t> SpatialIndex::neighbors_within(Position center, double radius) const {
  if (radius < 0.0) throw std::invalid_argument("query radius must be non-negative");
  std::vector<std::uint32_t> out;
  if (ids_.empty()) return out;
  const long x0 = clamp_cell(cell_x(center.x - radius));
  const long x1 = clamp_cell(cell_x(center.x + radius));
  const long y0 = clamp_cell(cell_x(center.y - radius));
  const long y1 = clamp_cell(cell_x(center.y + radius));
  auto keep = [&](std::uint32_t id, Position p) {
    if (distance(center, p) <= radius) out.push_back(id);
  };
  for (long y = y0; y <= y1; ++y) {
    for (long x = x0; x <= x1; ++x) visit_bucket(x, y, keep);
  }
  return out;
}

double default_bucket_side(const Region& region, double critical_radius_m, double intensity_per_km2) noexcept {
  double side = std::max(critical_radius_m, region.side_m() / 256.0);
  if (intensity_per_km2 > 0.0) {
    side = std::max(side, 1000.0 * std::sqrt(1.0 / intensity_per_km2));
  }
  return std::min(side, region.side_m());
}

}  // namespace hetnet
