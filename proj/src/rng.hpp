#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace commsched {

// All randomness in the library flows through this wrapper around
// std::mt19937_64. The raw 64-bit output of mt19937_64 is pinned by the
// C++ standard, so identical seeds give identical streams on every
// platform; the standard *distributions* are not pinned, which is why
// bounded() and unit() are hand-rolled here.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw from [0, n). Rejection sampling, no modulo bias.
  std::uint64_t bounded(std::uint64_t n) {
    if (n < 2) return 0;
    const std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
    const std::uint64_t limit = UINT64_MAX - rem;        // last accepted value
    std::uint64_t v;
    do {
      v = next();
    } while (v > limit);
    return v % n;
  }

  // Uniform draw from [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

// Fisher-Yates shuffle driven by Rng::bounded.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.bounded(i));
    std::swap(items[i - 1], items[j]);
  }
}

// Stateless 64-bit mixer, used to derive independent seeds from one.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace commsched
