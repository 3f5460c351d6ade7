#pragma once

// Counter-based random streams.
//
// Every random quantity in the library is drawn from a Stream addressed by
// (seed, purpose, replicate, lane). A stream is a Philox4x32-10 block cipher
// keyed by the seed/purpose pair and walking a counter whose upper words hold
// the replicate and lane. Two streams with different addresses never share a
// counter value, so work can be split across threads in any schedule and the
// draws stay identical.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace hdgeom::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace detail

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
constexpr Counter philox4x32(Counter ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += detail::kPhiloxW0;
      key[1] += detail::kPhiloxW1;
    }
    std::uint32_t hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
    detail::mulhilo(detail::kPhiloxM0, ctr[0], hi0, lo0);
    detail::mulhilo(detail::kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

/// SplitMix64 finalizer; used only to derive keys from (seed, purpose).
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// What a stream is used for. Distinct purposes get independent keys.
enum class Purpose : std::uint32_t {
  design = 1,
  subset = 2,
  noise = 3,
  response = 4,
  reference = 5,
};

class Stream {
 public:
  Stream(std::uint64_t seed, Purpose purpose, std::uint64_t replicate, std::uint64_t lane) {
    const std::uint64_t k = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(purpose)));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    // Replicate and lane occupy the upper counter words; fold anything above
    // 32 bits back in so very large indices still address distinct streams
    // for all practical sizes.
    replicate_ = static_cast<std::uint32_t>(replicate ^ (replicate >> 32));
    lane_ = static_cast<std::uint32_t>(lane ^ (lane >> 32));
  }

  std::uint64_t next_u64() {
    if (slot_ == 2) refill();
    const std::uint64_t v = (static_cast<std::uint64_t>(buffer_[2 * slot_]) << 32) | buffer_[2 * slot_ + 1];
    ++slot_;
    return v;
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by Lemire's multiply-and-reject.
  std::uint64_t uniform_index(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard normal by the Box-Muller transform (both outputs used).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Laplace(0, scale) by inversion.
  double laplace(double scale) {
    const double u = uniform() - 0.5;
    const double mag = -scale * std::log1p(-2.0 * std::abs(u));
    return u < 0 ? -mag : mag;
  }

  /// Gamma(shape, 1) by Marsaglia-Tsang; shapes below 1 use the boosting identity.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = 0, v = 0;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

 private:
  void refill() {
    buffer_ = philox4x32({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32), replicate_, lane_},
                         key_);
    ++block_;
    slot_ = 0;
  }

  Key key_{};
  std::uint32_t replicate_ = 0;
  std::uint32_t lane_ = 0;
  std::uint64_t block_ = 0;
  Counter buffer_{};
  int slot_ = 2;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hdgeom::rng
