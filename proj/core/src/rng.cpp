#include "proxsmooth/rng.hpp"

#include <cmath>

namespace proxsmooth::rng {

namespace {

constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 prod =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(prod >> 64);
  lo = static_cast<std::uint64_t>(prod);
}

// uniform in (0, 1): 53-bit mantissa, half-ulp offset keeps 0 out
inline double to_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key) {
  std::array<std::uint64_t, 4> x = counter;
  std::uint64_t k0 = key[0], k1 = key[1];
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMult0, x[0], hi0, lo0);
    mulhilo(kMult1, x[2], hi1, lo1);
    x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  return x;
}

void SampleStream::gaussians(std::uint64_t sample_index, std::span<double> out) const {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (std::uint64_t b = 0; i < n; ++b) {
    const auto words = block(sample_index, b);
    for (int pair = 0; pair < 2 && i < n; ++pair) {
      const double u1 = to_unit(words[2 * pair]);
      const double u2 = to_unit(words[2 * pair + 1]);
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double th = 2.0 * M_PI * u2;
      out[i++] = r * std::cos(th);
      if (i < n) out[i++] = r * std::sin(th);
    }
  }
}

}  // namespace proxsmooth::rng
