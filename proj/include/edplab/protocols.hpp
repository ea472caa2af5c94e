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

/// \file protocols.hpp
/// \brief Finite-sample entanglement detection protocols.
///
/// Each simulator turns a state into a random statistic c_hat and decides
/// "entangled" exactly when c_hat < 0. Measurement outcomes are drawn from
/// the exact Born distribution of the state; that is the only randomness.
///
///  - WITNESS: single-copy two-outcome measurement of the SWAP witness
///    {Pi_+, Pi_-}; c_hat = (mean of +-1 outcomes) - tau.
///  - RAND_MEAS: randomized measurements on A with the pair estimator
///    X(b, b') = -(-d_A)^{delta_{b b'}}; c_hat = P_hat_A - threshold.
///  - SWAP_TEST: two-copy swap test on A, accept with probability
///    (1 + Tr rho_A^2)/2; c_hat = (2 f_accept - 1) - threshold.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edplab/criteria.hpp"
#include "edplab/linalg.hpp"
#include "edplab/parallel.hpp"
#include "edplab/random_states.hpp"
#include "edplab/rng.hpp"

namespace edplab {

enum class ProtocolId { Witness, RandMeas, SwapTest };

inline std::string_view to_string(ProtocolId p) {
  switch (p) {
    case ProtocolId::Witness: return "WITNESS";
    case ProtocolId::RandMeas: return "RAND_MEAS";
    case ProtocolId::SwapTest: return "SWAP_TEST";
  }
  return "?";
}

inline ProtocolId parse_protocol(std::string_view name) {
  std::string upper;
  for (char c : name) upper.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(c)));
  if (upper == "WITNESS") return ProtocolId::Witness;
  if (upper == "RAND_MEAS" || upper == "RANDMEAS") return ProtocolId::RandMeas;
  if (upper == "SWAP_TEST" || upper == "SWAPTEST") return ProtocolId::SwapTest;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

/// tau = -(1/2) d^{-1/2}.
inline double default_witness_threshold(std::size_t d) {
  return -0.5 / std::sqrt(static_cast<double>(d));
}

inline constexpr double kDefaultPurityThreshold = 0.5;
inline constexpr std::size_t kDefaultUnitaries = 20;

/// 4 * ceil(sqrt(d_A)).
inline std::size_t default_measurements_per_unitary(std::size_t d_a) {
  return 4 * static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d_a))));
}

struct EdpConfig {
  ProtocolId protocol = ProtocolId::Witness;
  std::size_t shots = 1;           // WITNESS: T_shots
  std::size_t unitaries = kDefaultUnitaries;  // RAND_MEAS: N_U
  std::size_t measurements = 2;    // RAND_MEAS: N_M per unitary
  std::size_t pairs = 1;           // SWAP_TEST: T_pairs
  double threshold = 0.0;
  /// Purity protocols on mixed inputs compare Tr(rho_A^2) against the exact
  /// Tr(rho^2) instead of `threshold`. Off by default.
  bool mixed_extension = false;

  static EdpConfig witness(std::size_t shots, double tau) {
    EdpConfig c;
    c.protocol = ProtocolId::Witness;
    c.shots = shots;
    c.threshold = tau;
    return c;
  }
  static EdpConfig rand_meas(std::size_t unitaries, std::size_t measurements,
                             double threshold = kDefaultPurityThreshold) {
    EdpConfig c;
    c.protocol = ProtocolId::RandMeas;
    c.unitaries = unitaries;
    c.measurements = measurements;
    c.threshold = threshold;
    return c;
  }
  static EdpConfig swap_test(std::size_t pairs, double threshold = kDefaultPurityThreshold) {
    EdpConfig c;
    c.protocol = ProtocolId::SwapTest;
    c.pairs = pairs;
    c.threshold = threshold;
    return c;
  }

  /// Copies consumed: T_shots, N_U * N_M, or T_pairs (each pair uses two
  /// copies of rho but counts as one swap-test round).
  [[nodiscard]] std::size_t total_budget() const {
    switch (protocol) {
      case ProtocolId::Witness: return shots;
      case ProtocolId::RandMeas: return unitaries * measurements;
      case ProtocolId::SwapTest: return pairs;
    }
    return 0;
  }

  void validate() const {
    switch (protocol) {
      case ProtocolId::Witness:
        if (shots < 1) throw std::invalid_argument("EdpConfig: WITNESS needs T_shots >= 1");
        if (threshold > 0.0) throw std::invalid_argument("EdpConfig: WITNESS needs tau <= 0");
        break;
      case ProtocolId::RandMeas:
        if (unitaries < 1) throw std::invalid_argument("EdpConfig: RAND_MEAS needs N_U >= 1");
        if (measurements < 2) throw std::invalid_argument("EdpConfig: RAND_MEAS needs N_M >= 2");
        break;
      case ProtocolId::SwapTest:
        if (pairs < 1) throw std::invalid_argument("EdpConfig: SWAP_TEST needs T_pairs >= 1");
        break;
    }
  }
};

struct EdpOutcome {
  double c_hat = 0.0;
  bool decided_entangled = false;
  std::size_t shots_consumed = 0;
  /// The raw estimate the statistic was formed from (witness sample mean or
  /// purity estimate).
  double estimate = 0.0;
};

inline EdpOutcome make_outcome(double estimate, double threshold, std::size_t shots) {
  const double c = estimate - threshold;
  return {c, c < 0.0, shots, estimate};
}

/// Raw randomized-measurement data: outcomes[u] lists the basis indices
/// observed under the u-th unitary.
struct ShotRecord {
  std::vector<std::vector<std::uint32_t>> outcomes;
  std::size_t local_dim = 0;
};

// ---------------------------------------------------------------------------
// WITNESS

inline EdpOutcome witness_from_value(double swap_expectation, const EdpConfig& cfg,
                                     RngStream& rng) {
  cfg.validate();
  if (cfg.protocol != ProtocolId::Witness) {
    throw std::invalid_argument("simulate_witness_edp: config is not WITNESS");
  }
  const double p_plus = std::clamp(0.5 * (1.0 + swap_expectation), 0.0, 1.0);
  const auto plus = rng.binomial(cfg.shots, p_plus);
  const double mean =
      (2.0 * static_cast<double>(plus) - static_cast<double>(cfg.shots)) /
      static_cast<double>(cfg.shots);
  return make_outcome(mean, cfg.threshold, cfg.shots);
}

inline EdpOutcome simulate_witness_edp(const StateVector& psi, const EdpConfig& cfg,
                                       RngStream& rng) {
  return witness_from_value(swap_witness_value(psi).value, cfg, rng);
}

inline EdpOutcome simulate_witness_edp(const DensityMatrix& rho, const EdpConfig& cfg,
                                       RngStream& rng) {
  return witness_from_value(swap_witness_value(rho).value, cfg, rng);
}

inline EdpOutcome simulate_witness_edp(const LabeledState& s, const EdpConfig& cfg,
                                       RngStream& rng) {
  return s.is_pure() ? simulate_witness_edp(s.pure(), cfg, rng)
                     : simulate_witness_edp(s.mixed(), cfg, rng);
}

// ---------------------------------------------------------------------------
// RAND_MEAS

/// P_hat_A = mean over unitaries of (1/(N(N-1))) sum_{i != j} X(b_i, b_j).
///
/// Uses sum_{i != j} X = (d_A + 1) sum_b n_b (n_b - 1) - N (N - 1), where n_b
/// counts outcome b under one unitary.
inline double purity_estimator_from_shots(const ShotRecord& shots, std::size_t d_a) {
  if (shots.outcomes.empty()) {
    throw std::invalid_argument("purity_estimator_from_shots: no unitaries");
  }
  if (d_a < 1) throw std::invalid_argument("purity_estimator_from_shots: d_A must be positive");
  std::vector<std::uint64_t> counts(d_a);
  double total = 0.0;
  for (const auto& list : shots.outcomes) {
    const std::size_t n = list.size();
    if (n < 2) {
      throw std::invalid_argument("purity_estimator_from_shots: fewer than 2 shots under a unitary");
    }
    std::fill(counts.begin(), counts.end(), 0);
    for (auto b : list) {
      if (b >= d_a) throw std::out_of_range("purity_estimator_from_shots: outcome out of range");
      ++counts[b];
    }
    double coincident = 0.0;
    for (auto c : counts) coincident += static_cast<double>(c) * static_cast<double>(c - (c > 0));
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    total += (static_cast<double>(d_a + 1) * coincident - pairs) / pairs;
  }
  return total / static_cast<double>(shots.outcomes.size());
}

/// Born probabilities <b| U rho U^dagger |b>.
inline std::vector<double> rotated_populations(const ComplexMatrix& rho, const ComplexMatrix& u) {
  const ComplexMatrix v = u * rho;
  std::vector<double> p(static_cast<std::size_t>(u.rows()));
  double sum = 0.0;
  for (Eigen::Index b = 0; b < u.rows(); ++b) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < u.cols(); ++j) acc += (v(b, j) * std::conj(u(b, j))).real();
    p[static_cast<std::size_t>(b)] = std::max(acc, 0.0);
    sum += p[static_cast<std::size_t>(b)];
  }
  for (auto& x : p) x /= sum;
  return p;
}

/// Draws `n` indices from the discrete distribution `p` by inversion.
inline std::vector<std::uint32_t> sample_outcomes(const std::vector<double>& p, std::size_t n,
                                                  RngStream& rng) {
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  std::vector<std::uint32_t> out(n);
  for (auto& o : out) {
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    o = static_cast<std::uint32_t>(std::min<std::size_t>(
        static_cast<std::size_t>(it - cdf.begin()), p.size() - 1));
  }
  return out;
}

/// Measurement record of the randomized-measurement protocol on rho_A.
inline ShotRecord draw_randomized_measurements(const DensityMatrix& rho_a, std::size_t unitaries,
                                               std::size_t measurements, RngStream& rng) {
  ShotRecord rec;
  rec.local_dim = rho_a.dim();
  rec.outcomes.reserve(unitaries);
  for (std::size_t u = 0; u < unitaries; ++u) {
    const auto unitary = sample_haar_unitary(rho_a.dim(), rng);
    rec.outcomes.push_back(sample_outcomes(rotated_populations(rho_a.matrix(), unitary),
                                           measurements, rng));
  }
  return rec;
}

namespace detail {

inline double purity_threshold_for(const DensityMatrix& rho, const EdpConfig& cfg,
                                   bool pure_input, const char* who) {
  if (pure_input) return cfg.threshold;
  if (!cfg.mixed_extension) {
    throw std::invalid_argument(std::string(who) +
                                ": mixed input needs EdpConfig::mixed_extension");
  }
  return rho.purity();
}

}  // namespace detail

inline EdpOutcome rand_meas_on_reduced(const DensityMatrix& rho_a, double threshold,
                                       const EdpConfig& cfg, RngStream& rng) {
  const auto rec = draw_randomized_measurements(rho_a, cfg.unitaries, cfg.measurements, rng);
  return make_outcome(purity_estimator_from_shots(rec, rho_a.dim()), threshold,
                      cfg.total_budget());
}

inline EdpOutcome simulate_rand_meas_edp(const StateVector& psi, const EdpConfig& cfg,
                                         RngStream& rng) {
  cfg.validate();
  if (cfg.protocol != ProtocolId::RandMeas) {
    throw std::invalid_argument("simulate_rand_meas_edp: config is not RAND_MEAS");
  }
  return rand_meas_on_reduced(reduced_state(psi, {0}), cfg.threshold, cfg, rng);
}

inline EdpOutcome simulate_rand_meas_edp(const DensityMatrix& rho, const EdpConfig& cfg,
                                         RngStream& rng) {
  cfg.validate();
  if (cfg.protocol != ProtocolId::RandMeas) {
    throw std::invalid_argument("simulate_rand_meas_edp: config is not RAND_MEAS");
  }
  const double thr = detail::purity_threshold_for(rho, cfg, false, "simulate_rand_meas_edp");
  return rand_meas_on_reduced(partial_trace(rho, {0}), thr, cfg, rng);
}

inline EdpOutcome simulate_rand_meas_edp(const LabeledState& s, const EdpConfig& cfg,
                                         RngStream& rng) {
  return s.is_pure() ? simulate_rand_meas_edp(s.pure(), cfg, rng)
                     : simulate_rand_meas_edp(s.mixed(), cfg, rng);
}

// ---------------------------------------------------------------------------
// SWAP_TEST

inline EdpOutcome swap_test_from_purity(double purity_a, double threshold, const EdpConfig& cfg,
                                        RngStream& rng) {
  const double p_accept = std::clamp(0.5 * (1.0 + purity_a), 0.0, 1.0);
  const auto accepted = rng.binomial(cfg.pairs, p_accept);
  const double estimate =
      2.0 * static_cast<double>(accepted) / static_cast<double>(cfg.pairs) - 1.0;
  return make_outcome(estimate, threshold, cfg.pairs);
}

inline EdpOutcome simulate_swap_test_edp(const StateVector& psi, const EdpConfig& cfg,
                                         RngStream& rng) {
  cfg.validate();
  if (cfg.protocol != ProtocolId::SwapTest) {
    throw std::invalid_argument("simulate_swap_test_edp: config is not SWAP_TEST");
  }
  return swap_test_from_purity(subsystem_purity(psi), cfg.threshold, cfg, rng);
}

inline EdpOutcome simulate_swap_test_edp(const DensityMatrix& rho, const EdpConfig& cfg,
                                         RngStream& rng) {
  cfg.validate();
  if (cfg.protocol != ProtocolId::SwapTest) {
    throw std::invalid_argument("simulate_swap_test_edp: config is not SWAP_TEST");
  }
  const double thr = detail::purity_threshold_for(rho, cfg, false, "simulate_swap_test_edp");
  return swap_test_from_purity(subsystem_purity(rho), thr, cfg, rng);
}

inline EdpOutcome simulate_swap_test_edp(const LabeledState& s, const EdpConfig& cfg,
                                         RngStream& rng) {
  return s.is_pure() ? simulate_swap_test_edp(s.pure(), cfg, rng)
                     : simulate_swap_test_edp(s.mixed(), cfg, rng);
}

// ---------------------------------------------------------------------------

/// Runs whichever protocol `cfg` selects.
inline EdpOutcome simulate_edp(const LabeledState& s, const EdpConfig& cfg, RngStream& rng) {
  switch (cfg.protocol) {
    case ProtocolId::Witness: return simulate_witness_edp(s, cfg, rng);
    case ProtocolId::RandMeas: return simulate_rand_meas_edp(s, cfg, rng);
    case ProtocolId::SwapTest: return simulate_swap_test_edp(s, cfg, rng);
  }
  throw std::logic_error("simulate_edp: unknown protocol");
}

struct TrialOutcome {
  EdpOutcome outcome;
  Branch branch = Branch::GlobalHaar;
  bool entangled = false;
};

/// Draws n_trials fresh states from the ensemble and runs the protocol on
/// each. Trial t uses substream 2t for the state and 2t + 1 for the
/// measurements, so the output depends only on the seed and not on the
/// worker count.
inline std::vector<TrialOutcome> run_edp_on_distribution(const EnsembleParams& params,
                                                         const EdpConfig& cfg,
                                                         std::size_t n_trials,
                                                         const RngStream& rng,
                                                         const LabelPolicy& policy = {}) {
  if (n_trials < 1) throw std::invalid_argument("run_edp_on_distribution: n_trials must be >= 1");
  cfg.validate();
  std::vector<TrialOutcome> out(n_trials);
  parallel_for(n_trials, [&](std::size_t t) {
    auto state_rng = rng.substream(2 * t);
    auto protocol_rng = rng.substream(2 * t + 1);
    const auto state = sample_ensemble(params, state_rng, policy);
    out[t] = {simulate_edp(state, cfg, protocol_rng), state.label(), state.entangled()};
  });
  return out;
}

}  // namespace edplab
