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

/// \file scaling.hpp
/// \brief Minimal-budget search for each protocol and log-log fits of the
/// resulting budgets against d.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "edplab/protocols.hpp"
#include "edplab/stats.hpp"

namespace edplab {

struct Targets {
  double completeness = 0.25;
  double soundness = 5.0 / 6.0;

  void validate() const {
    if (!(completeness > 0.0 && completeness < 1.0) || !(soundness > 0.0 && soundness < 1.0)) {
      throw std::invalid_argument("Targets: completeness and soundness must lie in (0, 1)");
    }
  }
};

struct SearchOptions {
  std::size_t trials = 2000;
  std::uint64_t budget_cap = 1'000'000;
  std::size_t unitaries = kDefaultUnitaries;
  /// Overrides the default decision threshold of the protocol.
  std::optional<double> threshold;
};

/// One evaluated level of the search.
struct ProbeRecord {
  std::uint64_t level = 0;   // T_shots, N_M or T_pairs
  std::uint64_t budget = 0;  // total copies
  TrialStats stats;
  bool meets = false;
};

struct ScalingPoint {
  std::size_t d = 0;
  ProtocolId protocol = ProtocolId::Witness;
  bool attained = false;
  std::uint64_t budget = 0;  // minimal total budget, when attained
  std::uint64_t level = 0;
  std::optional<TrialStats> achieved;
  /// Every probe in evaluation order.
  std::vector<ProbeRecord> probes;
};

/// Decision threshold the search uses by default.
inline double default_threshold(ProtocolId p, std::size_t d) {
  return p == ProtocolId::Witness ? default_witness_threshold(d) : kDefaultPurityThreshold;
}

inline EdpConfig config_for_level(ProtocolId p, std::size_t d, std::uint64_t level,
                                  const SearchOptions& opts) {
  const double thr = opts.threshold.value_or(default_threshold(p, d));
  switch (p) {
    case ProtocolId::Witness: return EdpConfig::witness(level, thr);
    case ProtocolId::RandMeas: return EdpConfig::rand_meas(opts.unitaries, level, thr);
    case ProtocolId::SwapTest: return EdpConfig::swap_test(level, thr);
  }
  throw std::logic_error("config_for_level: unknown protocol");
}

/// Levels up to this are probed one by one before doubling starts. Rounding
/// of small shot counts makes the outcome statistics non-monotone there
/// (e.g. an even number of swap-test pairs can tie at the threshold).
inline constexpr std::uint64_t kExhaustiveLevels = 16;

/// Scans levels first_level..kExhaustiveLevels, then doubles and bisects,
/// probing `evaluate` (which returns the trial statistics at a level).
/// Levels whose budget exceeds the cap are never probed.
inline ScalingPoint search_min_level(std::uint64_t first_level,
                                     const std::function<std::uint64_t(std::uint64_t)>& budget_of,
                                     const std::function<TrialStats(std::uint64_t)>& evaluate,
                                     const Targets& targets, std::uint64_t budget_cap,
                                     std::uint64_t exhaustive_up_to = kExhaustiveLevels) {
  targets.validate();
  if (first_level < 1) throw std::invalid_argument("search_min_level: first level must be >= 1");
  ScalingPoint pt;
  std::map<std::uint64_t, bool> seen;
  auto probe = [&](std::uint64_t level) {
    if (auto it = seen.find(level); it != seen.end()) return it->second;
    ProbeRecord rec;
    rec.level = level;
    rec.budget = budget_of(level);
    rec.stats = evaluate(level);
    rec.meets = rec.stats.meets(targets.completeness, targets.soundness);
    pt.probes.push_back(rec);
    seen[level] = rec.meets;
    return rec.meets;
  };
  auto finish = [&](std::uint64_t level) {
    pt.attained = true;
    pt.level = level;
    pt.budget = budget_of(level);
    for (const auto& r : pt.probes) {
      if (r.level == level) pt.achieved = r.stats;
    }
    return pt;
  };

  std::uint64_t level = first_level;
  for (; level <= std::max(first_level, exhaustive_up_to); ++level) {
    if (budget_of(level) > budget_cap) return pt;
    if (probe(level)) return finish(level);
  }
  --level;  // largest failing level so far

  std::uint64_t lo = level;
  std::uint64_t hi = 0;
  for (;;) {
    const std::uint64_t next = level * 2;
    if (budget_of(next) > budget_cap) {
      // Largest level within the cap, probed once.
      std::uint64_t a = level;
      std::uint64_t b = next;
      while (b - a > 1) {
        const auto m = a + (b - a) / 2;
        (budget_of(m) <= budget_cap ? a : b) = m;
      }
      if (a == level || !probe(a)) return pt;
      hi = a;
      lo = level;
      break;
    }
    if (probe(next)) {
      hi = next;
      lo = level;
      break;
    }
    level = next;
  }
  while (hi - lo > 1) {
    const auto mid = lo + (hi - lo) / 2;
    (probe(mid) ? hi : lo) = mid;
  }
  return finish(hi);
}

/// Smallest total budget meeting both targets at the lower Wilson edge, on
/// the ensemble `params`. Every probe uses the same random streams.
inline ScalingPoint find_min_budget(const EnsembleParams& params, ProtocolId protocol,
                                    const Targets& targets, const RngStream& rng,
                                    const SearchOptions& opts = {}) {
  if (opts.trials < 1) throw std::invalid_argument("find_min_budget: trials must be positive");
  const auto da = exact_root(params.d, params.parties);
  if (!da) throw std::invalid_argument("find_min_budget: d is not a perfect power");
  const std::uint64_t first = protocol == ProtocolId::RandMeas ? 2 : 1;
  auto budget_of = [&](std::uint64_t level) {
    return protocol == ProtocolId::RandMeas ? level * opts.unitaries : level;
  };
  auto evaluate = [&](std::uint64_t level) {
    const auto cfg = config_for_level(protocol, params.d, level, opts);
    const auto outcomes = run_edp_on_distribution(params, cfg, opts.trials, rng);
    return completeness_soundness(outcomes);
  };
  auto pt = search_min_level(first, budget_of, evaluate, targets, opts.budget_cap);
  pt.d = params.d;
  pt.protocol = protocol;
  return pt;
}

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::size_t n_points = 0;
};

/// OLS of log(budget) on log(d) over attained points. Needs at least three
/// attained points whose d spans at least two octaves.
inline ScalingFit fit_scaling_exponent(const std::vector<ScalingPoint>& points) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : points) {
    if (!p.attained) continue;
    if (p.d < 1 || p.budget < 1) throw std::invalid_argument("fit_scaling_exponent: bad point");
    xs.push_back(std::log(static_cast<double>(p.d)));
    ys.push_back(std::log(static_cast<double>(p.budget)));
  }
  if (xs.size() < 3) {
    throw std::invalid_argument("fit_scaling_exponent: need at least 3 attained points");
  }
  const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
  if (*xmax - *xmin < 2.0 * std::log(2.0) - 1e-12) {
    throw std::invalid_argument("fit_scaling_exponent: d must span at least two octaves");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  ScalingFit fit;
  fit.n_points = xs.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - fit.intercept - fit.slope * xs[i];
    ssr += r * r;
  }
  fit.stderr_slope = std::sqrt(ssr / (n - 2.0) / sxx);
  return fit;
}

}  // namespace edplab
