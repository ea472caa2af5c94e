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

/// \file criteria.hpp
/// \brief Exact entanglement criteria (infinite statistics) and the closed
/// form for the detection power of the SWAP witness on pi*_{d,1}.
///
/// A criterion value below zero certifies entanglement; on separable inputs
/// every criterion here is >= 0 up to roundoff.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "edplab/linalg.hpp"
#include "edplab/special_functions.hpp"

namespace edplab {

enum class CriterionId { SwapWitness, Ppt, Purity };

struct CriterionValue {
  double value = 0.0;
  CriterionId id = CriterionId::SwapWitness;

  [[nodiscard]] bool certifies_entanglement() const { return value < 0.0; }
};

namespace detail {

inline void require_symmetric_bipartite(const SubsystemShape& shape, const char* who) {
  if (!shape.is_symmetric_bipartite()) {
    throw std::invalid_argument(std::string(who) + ": requires a bipartition with d_A = d_B");
  }
}

inline void require_bipartite(const SubsystemShape& shape, const char* who) {
  if (!shape.is_bipartite()) {
    throw std::invalid_argument(std::string(who) + ": requires a bipartite shape");
  }
}

}  // namespace detail

/// Tr(S rho) with S the A<->B swap.
inline CriterionValue swap_witness_value(const DensityMatrix& rho) {
  detail::require_symmetric_bipartite(rho.shape(), "swap_witness_value");
  const auto n = static_cast<Eigen::Index>(rho.shape().dim(0));
  const auto& m = rho.matrix();
  double acc = 0.0;
  // (S rho)_{(ij),(ij)} = rho_{(ji),(ij)}
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) acc += m(j * n + i, i * n + j).real();
  }
  return {acc, CriterionId::SwapWitness};
}

/// <psi|S|psi>, O(d).
inline CriterionValue swap_witness_value(const StateVector& psi) {
  detail::require_symmetric_bipartite(psi.shape(), "swap_witness_value");
  const auto n = psi.shape().dim(0);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      acc += (std::conj(psi[i * n + j]) * psi[j * n + i]).real();
    }
  }
  return {acc, CriterionId::SwapWitness};
}

/// lambda_min(rho^{T_A}).
inline CriterionValue ppt_min_eig(const DensityMatrix& rho) {
  detail::require_bipartite(rho.shape(), "ppt_min_eig");
  return {min_eigenvalue(partial_transpose(rho, 0)), CriterionId::Ppt};
}

/// Tr(rho_A^2) of a pure state, A being the first party.
inline double subsystem_purity(const StateVector& psi) {
  if (psi.shape().parties() < 2) {
    throw std::invalid_argument("subsystem_purity: state has a single party");
  }
  return reduced_state(psi, {0}).purity();
}

inline double subsystem_purity(const DensityMatrix& rho) {
  if (rho.shape().parties() < 2) {
    throw std::invalid_argument("subsystem_purity: state has a single party");
  }
  return partial_trace(rho, {0}).purity();
}

/// Tr(rho_A^2) - Tr(rho^2).
inline CriterionValue purity_criterion_value(const DensityMatrix& rho) {
  detail::require_bipartite(rho.shape(), "purity_criterion_value");
  return {subsystem_purity(rho) - rho.purity(), CriterionId::Purity};
}

inline CriterionValue purity_criterion_value(const StateVector& psi) {
  detail::require_bipartite(psi.shape(), "purity_criterion_value");
  return {subsystem_purity(psi) - 1.0, CriterionId::Purity};
}

/// Probability that Tr(S rho) < 0 for rho ~ pi*_{d,1}:
/// (1/2) I_{1/2}((d + sqrt d)/2, (d - sqrt d)/2). For d = 1 the swap is the
/// identity and the probability is 0.
inline double detection_power_closed_form(std::size_t d) {
  const auto da = exact_sqrt(d);
  if (!da || d == 0) {
    throw std::invalid_argument("detection_power_closed_form: d = " + std::to_string(d) +
                                " is not a perfect square");
  }
  if (d == 1) return 0.0;
  const double plus = static_cast<double>(d + *da) / 2.0;   // dim of the +1 eigenspace
  const double minus = static_cast<double>(d - *da) / 2.0;  // dim of the -1 eigenspace
  return 0.5 * regularized_incomplete_beta(0.5, plus, minus);
}

}  // namespace edplab
