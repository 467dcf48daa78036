#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace netclass {

/// Deterministic random stream identified by (master seed, stream id).
///
/// Child streams are derived by name or index, never by draw order, so a
/// replicate's randomness is independent of how many replicates ran before
/// it or on which thread.
class SeededRng {
 public:
  using Engine = std::mt19937_64;

  explicit SeededRng(std::uint64_t master_seed, std::uint64_t stream = 0);

  std::uint64_t master_seed() const noexcept { return master_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  SeededRng derive(std::string_view name) const;
  SeededRng derive(std::uint64_t index) const;
  template <typename... Rest>
  SeededRng derive(std::string_view name, std::uint64_t index, Rest... rest) const {
    return derive(name).derive(index, rest...);
  }
  template <typename... Rest>
  SeededRng derive(std::uint64_t index, std::uint64_t next, Rest... rest) const {
    return derive(index).derive(next, rest...);
  }

  /// Engine positioned at the start of this stream.
  Engine engine() const;

 private:
  std::uint64_t master_;
  std::uint64_t stream_;
};

/// Uniform double in [0, 1).
inline double uniform01(SeededRng::Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound). `bound` must be positive.
inline std::uint64_t uniform_index(SeededRng::Engine& eng, std::uint64_t bound) {
  // Rejection sampling on the top bits keeps this exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = eng();
  while (x >= limit) x = eng();
  return x % bound;
}

}  // namespace netclass
