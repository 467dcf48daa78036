#include "netclass/rng.hpp"

namespace netclass {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream)
    : master_(master_seed), stream_(stream) {}

SeededRng SeededRng::derive(std::string_view name) const {
  return SeededRng(master_, splitmix64(stream_ ^ splitmix64(fnv1a(name))));
}

SeededRng SeededRng::derive(std::uint64_t index) const {
  return SeededRng(master_, splitmix64(splitmix64(stream_) + splitmix64(index ^ 0x5851F42D4C957F2DULL)));
}

SeededRng::Engine SeededRng::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(master_), static_cast<std::uint32_t>(master_ >> 32),
                    static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  return Engine(seq);
}

}  // namespace netclass
