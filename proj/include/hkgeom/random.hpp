#ifndef HKGEOM_RANDOM_HPP
#define HKGEOM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace hk {

// Seeded stream with distributions written out by hand: the standard
// distribution classes are implementation-defined, and seeded output has to
// be reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hk

#endif  // HKGEOM_RANDOM_HPP
