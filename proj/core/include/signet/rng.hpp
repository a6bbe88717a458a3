#pragma once

// Counter-based normal variates. Every draw is a pure function of
// (seed, path, step, stream), so paths can run in any order or on any thread
// and still see the same noise.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace signet {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

class CounterNormal {
 public:
  explicit CounterNormal(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  /// Two independent uniforms in the open interval (0, 1).
  std::pair<double, double> uniform_pair(std::uint32_t path, std::uint64_t step,
                                         std::uint32_t stream) const noexcept {
    const auto r = Philox4x32::generate(
        {static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32), stream, path},
        key_);
    const std::uint64_t a = (std::uint64_t{r[0]} << 32) | r[1];
    const std::uint64_t b = (std::uint64_t{r[2]} << 32) | r[3];
    return {to_open_unit(a), to_open_unit(b)};
  }

  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair(std::uint32_t path, std::uint64_t step,
                                        std::uint32_t stream) const noexcept {
    const auto [u1, u2] = uniform_pair(path, step, stream);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  static double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  Philox4x32::Key key_;
};

}  // namespace signet
