#include "pbf/stats.hpp"

#include <cmath>
#include <string>

#include "pbf/error.hpp"

namespace pbf {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;  // sqrt(3) - 1

struct Moments {
  double mean;
  double sum_sq;  // sum of squared deviations from the mean
};

Moments moments(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  double sum_sq = 0.0;
  for (double x : xs) sum_sq += (x - mean) * (x - mean);
  return {mean, sum_sq};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c,
                                           std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * c[2];
    c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
         static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return c;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

void RngStream::refill() {
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(stream_id_), static_cast<std::uint32_t>(stream_id_ >> 32)};
  const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
  buffer_ = philox4x32_10(counter, key);
  ++block_;
  used_ = 0;
}

std::uint32_t RngStream::next_u32() {
  if (used_ == buffer_.size()) refill();
  return buffer_[used_++];
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double RngStream::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

RngStream make_rng(std::uint64_t seed) { return RngStream(seed); }

RngStream substream(std::uint64_t seed, std::uint32_t n_total, std::uint32_t iteration) {
  return RngStream(seed, (std::uint64_t{n_total} << 32) | iteration);
}

double draw_uniform(RngStream& rng) { return rng.next_uniform(); }

Sample draw_normal(RngStream& rng, double mean, double sd, std::size_t n) {
  if (!std::isfinite(mean) || !std::isfinite(sd) || !(sd > 0.0)) {
    throw DomainError("draw_normal: need finite mean and sd > 0");
  }
  if (n == 0) throw DomainError("draw_normal: n must be >= 1");

  Sample sample;
  sample.values.reserve(n + 1);
  while (sample.values.size() < n) {
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
      u = 2.0 * rng.next_uniform() - 1.0;
      v = 2.0 * rng.next_uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    sample.values.push_back(mean + sd * u * factor);
    sample.values.push_back(mean + sd * v * factor);
  }
  sample.values.resize(n);
  return sample;
}

TestResult two_sample_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw ArgumentError("two_sample_t: each sample needs at least 2 values (got " +
                        std::to_string(a.size()) + " and " + std::to_string(b.size()) + ")");
  }
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double nu = n1 + n2 - 2.0;

  // Symmetric in (a, b) so that swapping the samples negates t exactly.
  const double pooled_var = (ma.sum_sq + mb.sum_sq) / nu;
  if (!(pooled_var > 0.0)) {
    throw DegenerateDataError("two_sample_t: both samples have zero variance");
  }
  const double se = std::sqrt(pooled_var * (1.0 / n1 + 1.0 / n2));
  return {(ma.mean - mb.mean) / se, nu};
}

}  // namespace pbf
