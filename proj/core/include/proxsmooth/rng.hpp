#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace proxsmooth::rng {

// Philox4x64-10 block function (counter-based, splittable). The exact
// bit-level algorithm is documented in the README; outputs match
// numpy.random.Philox for the same key/counter.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key);

// One logical stream, addressed by (seed, task). Draws are random access:
// sample `index` reads counter blocks {index, block, 0, 0} under key
// {seed, task}, so any batching or parallel split reproduces identical
// values. Block b yields four uniforms, turned into four gaussians by two
// Box-Muller pairs; a dim-n sample consumes ceil(n/4) blocks.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t task) : key_{seed, task} {}

  std::uint64_t seed() const { return key_[0]; }
  std::uint64_t task() const { return key_[1]; }

  // Raw 64-bit words of one counter block.
  std::array<std::uint64_t, 4> block(std::uint64_t sample_index,
                                     std::uint64_t block_index) const {
    return philox4x64({sample_index, block_index, 0, 0}, key_);
  }

  // Fills `out` with the standard gaussian vector of the given sample.
  void gaussians(std::uint64_t sample_index, std::span<double> out) const;

 private:
  std::array<std::uint64_t, 2> key_;
};

inline SampleStream derive_stream(std::uint64_t seed, std::uint64_t task) {
  return SampleStream(seed, task);
}

}  // namespace proxsmooth::rng
