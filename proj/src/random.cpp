#include "hetnet/random.hpp"

#include <cmath>

namespace hetnet {

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(master);
  for (std::uint64_t k : keys) {
    h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  }
  return h;
}

double exponential_from_bits(std::uint64_t bits) noexcept {
  return -std::log(open_unit(bits));
}

}  // namespace hetnet
