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
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "edplab/protocols.hpp"

namespace edplab {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  [[nodiscard]] bool contains(double x) const { return lo <= x && x <= hi; }
  [[nodiscard]] double width() const { return hi - lo; }
};

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::size_t successes, std::size_t n, double z = kZ95) {
  if (n == 0) throw std::invalid_argument("wilson_interval: n must be positive");
  if (successes > n) throw std::invalid_argument("wilson_interval: successes exceed n");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {successes == 0 ? 0.0 : std::max(0.0, center - half),
          successes == n ? 1.0 : std::min(1.0, center + half)};
}

struct Ratio {
  double value = 0.0;
  Interval ci;
};

struct TrialStats {
  std::size_t n_trials = 0;
  std::size_t n_decided = 0;
  std::size_t n_correct = 0;  // decided entangled and truly entangled
  Ratio completeness;
  /// Absent when nothing was decided entangled.
  std::optional<Ratio> soundness;

  /// Both Wilson lower edges reach their targets.
  [[nodiscard]] bool meets(double completeness_target, double soundness_target) const {
    return completeness.ci.lo >= completeness_target && soundness &&
           soundness->ci.lo >= soundness_target;
  }
};

inline TrialStats stats_from_counts(std::size_t n, std::size_t decided, std::size_t correct) {
  if (n == 0) throw std::invalid_argument("completeness_soundness: empty outcome list");
  TrialStats s;
  s.n_trials = n;
  s.n_decided = decided;
  s.n_correct = correct;
  s.completeness = {static_cast<double>(decided) / static_cast<double>(n),
                    wilson_interval(decided, n)};
  if (decided > 0) {
    s.soundness = Ratio{static_cast<double>(correct) / static_cast<double>(decided),
                        wilson_interval(correct, decided)};
  }
  return s;
}

inline TrialStats completeness_soundness(std::span<const TrialOutcome> outcomes) {
  std::size_t decided = 0;
  std::size_t correct = 0;
  for (const auto& o : outcomes) {
    if (o.outcome.decided_entangled) {
      ++decided;
      if (o.entangled) ++correct;
    }
  }
  return stats_from_counts(outcomes.size(), decided, correct);
}

/// Sample mean and its standard error.
struct MeanEstimate {
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double stderr_mean = 0.0;
  std::size_t n = 0;

  /// |mean - expected| <= sigmas * stderr.
  [[nodiscard]] bool agrees_with(double expected, double sigmas = 4.0) const {
    return std::abs(mean - expected) <= sigmas * stderr_mean;
  }
};

/// Welford accumulator.
class RunningMoments {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }

  [[nodiscard]] std::size_t count() const { return n_; }
  [[nodiscard]] double mean() const { return mean_; }
  [[nodiscard]] double variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  }

  [[nodiscard]] MeanEstimate estimate() const {
    return {mean_, variance(), n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0,
            n_};
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline MeanEstimate mean_estimate(std::span<const double> xs) {
  RunningMoments m;
  for (double x : xs) m.add(x);
  return m.estimate();
}

/// Sample variance with a standard error from the fourth central moment:
/// se^2 ~ (m4 - (n-3)/(n-1) s^4) / n.
struct VarianceEstimate {
  double variance = 0.0;
  double stderr_variance = 0.0;
};

inline VarianceEstimate variance_estimate(std::span<const double> xs) {
  const auto n = xs.size();
  if (n < 4) throw std::invalid_argument("variance_estimate: need at least 4 samples");
  const double mean = mean_estimate(xs).mean;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double c = x - mean;
    m2 += c * c;
    m4 += c * c * c * c;
  }
  const double nn = static_cast<double>(n);
  const double s2 = m2 / (nn - 1.0);
  m4 /= nn;
  const double var_of_s2 = (m4 - (nn - 3.0) / (nn - 1.0) * s2 * s2) / nn;
  return {s2, std::sqrt(std::max(var_of_s2, 0.0))};
}

}  // namespace edplab
