// Copyright 2026 The edplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace edplab {

/// SplitMix64 finalizer; used to derive child stream ids.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// A reproducible random stream identified by (seed, stream id).
///
/// Backed by mt19937_64 (period 2^19937 - 1) seeded through std::seed_seq
/// with both 64-bit words of the seed and of the stream id. Uniform and
/// Gaussian variates are produced here rather than by the <random>
/// distributions so that sample sequences do not depend on the standard
/// library vendor.
class RngStream {
 public:
  using engine_type = std::mt19937_64;
  static constexpr std::string_view kGeneratorId = "mt19937_64/seed_seq(seed,stream)";

  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream() const { return stream_; }

  /// A child stream keyed by `index`; children of distinct indices (or of
  /// distinct parents) get distinct stream ids with overwhelming probability.
  [[nodiscard]] RngStream substream(std::uint64_t index) const {
    return RngStream(seed_, mix64(stream_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
  }

  engine_type& engine() { return engine_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Standard complex normal CN(0, 1): real and imaginary parts are
  /// independent N(0, 1/2), so E|z|^2 = 1.
  std::complex<double> complex_normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

  /// Standard real normal N(0, 1).
  double normal() { return std::sqrt(2.0) * complex_normal().real(); }

  /// Number of successes in n Bernoulli(p) trials.
  // TODO: swap in a portable BTPE sampler; std::binomial_distribution output
  // differs between libstdc++ and libc++, so WITNESS runs only reproduce
  // within one standard library.
  std::uint64_t binomial(std::uint64_t n, double p) {
    if (p <= 0.0 || n == 0) return 0;
    if (p >= 1.0) return n;
    std::binomial_distribution<std::uint64_t> dist(n, p);
    return dist(engine_);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  engine_type engine_;
};

}  // namespace edplab
