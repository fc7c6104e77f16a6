#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "proxsmooth/rng.hpp"

using proxsmooth::rng::SampleStream;
using proxsmooth::rng::derive_stream;
using proxsmooth::rng::philox4x64;

namespace {
constexpr std::uint64_t kMax = ~0ULL;
using Block = std::array<std::uint64_t, 4>;
}  // namespace

// Reference vectors cross-checked against numpy.random.Philox (same key;
// numpy advances its 256-bit counter before emitting a block, so its block j
// for counter c equals philox4x64 at counter c + 1 + j with little-endian
// carry across the four words).
TEST_CASE("philox reference blocks") {
  struct Case {
    Block counter;
    std::array<std::uint64_t, 2> key;
    Block expect;
  };
  const Case cases[] = {
      {{1, 0, 0, 0},
       {0, 0},
       {0x02f4ba6408e4d89bULL, 0x3dd62b0b9ca8c5b2ULL, 0x1c8667a55d902e79ULL,
        0x907d7a052fd5b4dcULL}},
      {{2, 0, 0, 0},
       {0, 0},
       {0x809bf322883987c3ULL, 0x471128b9e807f7ddULL, 0xf250ba0dbec065b7ULL,
        0xfc6ed66767a457bcULL}},
      {{3, 0, 0, 0},
       {0, 0},
       {0x40fa86f0f781945dULL, 0x31eed5a366689e12ULL, 0xb6329ed9f2a1cebaULL,
        0x219a8fa4c23828e2ULL}},
      {{2, 2, 0, 0},
       {42, 7},
       {0xbeece2bf081c369aULL, 0x52dcc09bbc99f624ULL, 0x3a007075045d688bULL,
        0xc69baf309a712459ULL}},
      {{3, 2, 0, 0},
       {42, 7},
       {0x006f65ed7148dad0ULL, 0x7c826843e0b962ddULL, 0x21abb571161c6958ULL,
        0x27ccda5214586d2dULL}},
      // carry out of word 0 (numpy counter {kMax,0,0,0} -> next block)
      {{0, 1, 0, 0},
       {0, 0},
       {0xe85facf8b3b067d6ULL, 0xfdbc6a61c123b5f8ULL, 0x349bde9a4b8d60c1ULL,
        0x39212690df8b178aULL}},
      {{1, 1, 0, 0},
       {0, 0},
       {0x363c6d54f81ba26eULL, 0x372e02c93de0b01eULL, 0xc182a0e88e99b6d5ULL,
        0x8893b0f0fb6673dcULL}},
      // carry out of word 1 (numpy counter {kMax,1,0,0})
      {{0, 2, 0, 0},
       {3, 9},
       {0x418f1e5f4ab2a453ULL, 0x22d5a4bde3fbd00fULL, 0x4768c47a8b5cc82fULL,
        0xbd553e0c0a25dbccULL}},
      // full 256-bit wraparound (numpy counter all-ones, key all-ones)
      {{0, 0, 0, 0},
       {kMax, kMax},
       {0x44b7493d1acfc229ULL, 0x6636af8e997921ddULL, 0x3f73e132b5b3780eULL,
        0x605644dde03b01b1ULL}},
      {{1, 0, 0, 0},
       {kMax, kMax},
       {0x6d46cc0e71f0be7eULL, 0x924ea1693f9a8bc0ULL, 0xfdc35f0198c91181ULL,
        0xb4a311f17aa6568dULL}},
  };
  for (const auto& c : cases) {
    const Block got = philox4x64(c.counter, c.key);
    CAPTURE(c.counter[0]);
    CAPTURE(c.counter[1]);
    CAPTURE(c.key[0]);
    for (int w = 0; w < 4; ++w) CHECK(got[w] == c.expect[w]);
  }
}

TEST_CASE("stream blocks are keyed philox calls") {
  const SampleStream s = derive_stream(42, 7);
  const Block direct = philox4x64({2, 2, 0, 0}, {42, 7});
  const Block via = s.block(2, 2);
  for (int w = 0; w < 4; ++w) CHECK(via[w] == direct[w]);
}

TEST_CASE("same seed and task reproduce the same draws") {
  const SampleStream a = derive_stream(123, 5);
  const SampleStream b = derive_stream(123, 5);
  std::vector<double> ga(9), gb(9);
  for (std::uint64_t i : {0ULL, 1ULL, 77ULL, 1000000ULL}) {
    a.gaussians(i, ga);
    b.gaussians(i, gb);
    for (int j = 0; j < 9; ++j) CHECK(ga[j] == gb[j]);
  }
}

TEST_CASE("distinct tasks give distinct draws") {
  const SampleStream a = derive_stream(123, 0);
  const SampleStream b = derive_stream(123, 1);
  std::vector<double> ga(4), gb(4);
  a.gaussians(0, ga);
  b.gaussians(0, gb);
  int same = 0;
  for (int j = 0; j < 4; ++j) same += (ga[j] == gb[j]);
  CHECK(same == 0);
}

TEST_CASE("draws are random access: order of visits is irrelevant") {
  const SampleStream s = derive_stream(9, 3);
  std::vector<double> fwd(5), rev(5);
  std::array<std::array<double, 5>, 8> forward{};
  for (std::uint64_t i = 0; i < 8; ++i) {
    s.gaussians(i, std::span<double>(forward[i].data(), 5));
  }
  for (std::uint64_t i = 8; i-- > 0;) {
    std::array<double, 5> again{};
    s.gaussians(i, again);
    for (int j = 0; j < 5; ++j) CHECK(again[j] == forward[i][j]);
  }
}

TEST_CASE("dimension does not change the leading coordinates") {
  // a dim-n sample reads blocks 0..ceil(n/4)-1, so shorter reads are prefixes
  const SampleStream s = derive_stream(2024, 11);
  std::vector<double> g3(3), g7(7);
  s.gaussians(4, g3);
  s.gaussians(4, g7);
  for (int j = 0; j < 3; ++j) CHECK(g3[j] == g7[j]);
}

TEST_CASE("gaussian output passes moment sanity checks") {
  const SampleStream s = derive_stream(31337, 0);
  const std::size_t n = 1 << 19;
  double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
  double g[1];
  for (std::uint64_t i = 0; i < n; ++i) {
    s.gaussians(i, g);
    sum += g[0];
    sum2 += g[0] * g[0];
    sum4 += g[0] * g[0] * g[0] * g[0];
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  const double kurt = (sum4 / n) / (var * var);
  // n = 2^19: sd(mean) ~ 1/sqrt(n) = 1.4e-3, sd(var) ~ sqrt(2/n) = 2e-3,
  // sd(kurt) ~ sqrt(96/n) = 1.4e-2; allow five sigmas
  CHECK(std::abs(mean) < 7e-3);
  CHECK(std::abs(var - 1.0) < 1e-2);
  CHECK(std::abs(kurt - 3.0) < 7e-2);
  // all finite, none repeated at index 0 vs 1
  CHECK(std::isfinite(mean));
}
