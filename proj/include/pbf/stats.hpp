#pragma once

// Reproducible random draws and the pooled-variance two-sample t-test.
//
// RngStream wraps the Philox4x32-10 counter-based generator (Salmon et al.,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11). The 64-bit seed is
// the Philox key; the 128-bit counter is split into a 64-bit block index and
// a 64-bit stream id. Substreams for simulation cell (N, iteration) use
// stream id (N << 32 | iteration), so every cell's draws are a pure function
// of (seed, N, iteration) and cells can be evaluated in any order on any
// thread. Output is identical on every platform with IEEE doubles.
//
// An RngStream has a single owner; do not share one across threads.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pbf {

/// One Philox4x32-10 block: 10 rounds of the bijection over `counter` keyed by `key`.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  std::size_t used_ = 4;
};

RngStream make_rng(std::uint64_t seed);

/// Independent stream for simulation cell (n_total, iteration).
RngStream substream(std::uint64_t seed, std::uint32_t n_total, std::uint32_t iteration);

double draw_uniform(RngStream& rng);

struct Sample {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::span<const double> view() const { return values; }
};

/// n normal variates (Marsaglia polar method). Throws DomainError unless
/// sd > 0 and n >= 1.
Sample draw_normal(RngStream& rng, double mean, double sd, std::size_t n);

struct TestResult {
  double t;
  double nu;
};

/// Student's pooled-variance t-test for mean(a) - mean(b), nu = |a| + |b| - 2.
/// Throws ArgumentError if either sample has fewer than 2 values and
/// DegenerateDataError if both samples have zero variance.
TestResult two_sample_t(std::span<const double> a, std::span<const double> b);
inline TestResult two_sample_t(const Sample& a, const Sample& b) {
  return two_sample_t(a.view(), b.view());
}

}  // namespace pbf
