#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hetnet {

/// Engine used for every sequential draw (point counts, positions).
using Rng = std::mt19937_64;

/// splitmix64 finalizer; a bijection on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream split: folds each key into the master seed. Distinct key
/// tuples give statistically independent seeds, independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept;

/// Maps 64 random bits to a uniform on the open interval (0, 1), using the
/// lattice (k + 1/2) * 2^-52. Both ends are excluded exactly.
inline double open_unit(std::uint64_t bits) noexcept {
  const auto k = static_cast<double>(bits >> 12);  // 52 bits, exact in a double
  return (k + 0.5) * 0x1.0p-52;
}

/// Exponential(1) variate from 64 random bits. Always > 0 and <= kMaxExponential.
double exponential_from_bits(std::uint64_t bits) noexcept;

/// Upper bound of exponential_from_bits over all inputs: -ln(2^-53) = 53 ln 2,
/// rounded up.
inline constexpr double kMaxExponential = 36.74;

}  // namespace hetnet
