#pragma once

#include <cstdint>

namespace tailsum {

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Key for an independent sub-stream, e.g. derive_key(seed, replication).
constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) {
  return mix64(mix64(parent) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Counter-based uniform stream: draw i depends only on (key, i).
class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key) : key_(mix64(key)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const { return mix64(key_ ^ mix64(counter)); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  constexpr double uniform(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

}  // namespace tailsum
