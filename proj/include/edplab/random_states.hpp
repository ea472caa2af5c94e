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

/// \file random_states.hpp
/// \brief Haar-random unitaries and states, and the induced ensembles
/// pi_{d,k}, pi*_{d,k} and the K-partite pi^{(K)*}.

#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <variant>

#include "edplab/linalg.hpp"
#include "edplab/rng.hpp"

namespace edplab {

/// Haar unitary from a Ginibre matrix: QR, then rescale each column of Q by
/// the phase of the matching diagonal entry of R.
inline ComplexMatrix sample_haar_unitary(std::size_t d, RngStream& rng) {
  if (d == 0) throw std::invalid_argument("sample_haar_unitary: d must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd z(n, n);
  // Fill row by row so the draw order matches the row-major convention.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
  }
  return q;
}

/// Raw (unnormalized) standard complex Gaussian vector.
inline ComplexVector sample_complex_gaussian(std::size_t d, RngStream& rng) {
  ComplexVector v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return v;
}

/// Haar pure state: a normalized standard complex Gaussian vector.
inline StateVector sample_haar_pure(const SubsystemShape& shape, RngStream& rng) {
  if (shape.total() == 0) throw std::invalid_argument("sample_haar_pure: empty shape");
  return StateVector::normalized(sample_complex_gaussian(shape.total(), rng), shape);
}

inline StateVector sample_haar_pure(std::size_t d, RngStream& rng) {
  if (d == 0) throw std::invalid_argument("sample_haar_pure: d must be positive");
  return sample_haar_pure(SubsystemShape::single(d), rng);
}

/// rho ~ pi_{d,k}: the reduction to `system` of a Haar pure state on
/// system (x) C^k. k = 1 yields a pure-state projector.
inline DensityMatrix sample_pi(const SubsystemShape& system, std::size_t k, RngStream& rng) {
  if (system.total() == 0 || k == 0) {
    throw std::invalid_argument("sample_pi: d and k must be positive");
  }
  auto dims = system.dims();
  dims.push_back(k);
  const auto psi = sample_haar_pure(SubsystemShape(dims), rng);
  std::vector<std::size_t> keep(system.parties());
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  auto rho = reduced_state(psi, keep);
  return DensityMatrix(DensityMatrix::trusted_t{}, rho.matrix(), system);
}

inline DensityMatrix sample_pi(std::size_t d, std::size_t k, RngStream& rng) {
  if (d == 0) throw std::invalid_argument("sample_pi: d must be positive");
  return sample_pi(SubsystemShape::single(d), k, rng);
}

// ---------------------------------------------------------------------------
// Labeled ensembles

enum class Branch { GlobalHaar, Product };

inline const char* to_string(Branch b) {
  return b == Branch::GlobalHaar ? "GLOBAL_HAAR" : "PRODUCT";
}

/// Parameters of pi*_{d,k} (parties = 2) or pi^{(K)*}_{d,1} (parties = K).
struct EnsembleParams {
  std::size_t d = 4;
  std::size_t k = 1;
  std::size_t parties = 2;
};

/// When a mixed GLOBAL_HAAR draw may be labeled entangled: k <= d^exponent.
/// Outside that regime labeling is refused.
struct LabelPolicy {
  double max_k_exponent = 1.5;
};

/// A sampled state together with the branch it was drawn from.
///
/// Pure draws (k = 1) hold a StateVector; mixed draws hold a DensityMatrix.
/// The shape is always the party split: (d_A, d_B) or K equal parties.
class LabeledState {
 public:
  using State = std::variant<StateVector, DensityMatrix>;

  LabeledState(State state, Branch label, EnsembleParams params, bool entangled)
      : state_(std::move(state)), label_(label), params_(params), entangled_(entangled) {}

  [[nodiscard]] const State& state() const { return state_; }
  [[nodiscard]] Branch label() const { return label_; }
  [[nodiscard]] const EnsembleParams& params() const { return params_; }
  /// Ground truth from the construction branch.
  [[nodiscard]] bool entangled() const { return entangled_; }
  [[nodiscard]] bool is_pure() const { return std::holds_alternative<StateVector>(state_); }
  [[nodiscard]] const StateVector& pure() const { return std::get<StateVector>(state_); }
  [[nodiscard]] const DensityMatrix& mixed() const { return std::get<DensityMatrix>(state_); }
  [[nodiscard]] const SubsystemShape& shape() const {
    return is_pure() ? pure().shape() : mixed().shape();
  }
  [[nodiscard]] DensityMatrix density() const {
    return is_pure() ? DensityMatrix::from_pure(pure()) : mixed();
  }

 private:
  State state_;
  Branch label_;
  EnsembleParams params_;
  bool entangled_;
};

/// pi^{(K)*}_{d,1}: fair coin between a Haar pure state on C^d and a product
/// of K independent Haar pure states on C^{d^{1/K}}.
inline LabeledState sample_pi_star_multipartite(std::size_t d, std::size_t parties,
                                                 RngStream& rng) {
  if (parties < 2) throw std::invalid_argument("sample_pi_star_multipartite: need K >= 2");
  const auto local = exact_root(d, parties);
  if (!local || *local < 1) {
    throw std::invalid_argument("sample_pi_star_multipartite: d = " + std::to_string(d) +
                                " is not a perfect " + std::to_string(parties) + "-th power");
  }
  const auto shape = SubsystemShape::uniform(*local, parties);
  const EnsembleParams params{d, 1, parties};
  if (rng.coin()) {
    return LabeledState(sample_haar_pure(shape, rng), Branch::GlobalHaar, params, true);
  }
  ComplexVector amp = ComplexVector::Ones(1);
  for (std::size_t p = 0; p < parties; ++p) {
    amp = kron(amp, sample_haar_pure(*local, rng).amplitudes());
  }
  return LabeledState(StateVector::normalized(std::move(amp), shape), Branch::Product, params,
                      false);
}

/// pi*_{d,k}: fair coin between pi_{d,k} and rho_A (x) rho_B with rho_A,
/// rho_B ~ pi_{sqrt d, sqrt k}. k = 1 draws pure states.
inline LabeledState sample_pi_star(std::size_t d, std::size_t k, RngStream& rng,
                                   const LabelPolicy& policy = {}) {
  const auto da = exact_sqrt(d);
  const auto ka = exact_sqrt(k);
  if (!da || d == 0) {
    throw std::invalid_argument("sample_pi_star: d = " + std::to_string(d) +
                                " is not a perfect square");
  }
  if (!ka || k == 0) {
    throw std::invalid_argument("sample_pi_star: k = " + std::to_string(k) +
                                " is not a perfect square");
  }
  if (k == 1) return sample_pi_star_multipartite(d, 2, rng);

  if (static_cast<double>(k) > std::pow(static_cast<double>(d), policy.max_k_exponent)) {
    throw std::domain_error("sample_pi_star: k = " + std::to_string(k) +
                            " is outside the regime where GLOBAL_HAAR draws are labeled "
                            "entangled");
  }
  const auto shape = SubsystemShape::bipartite(*da, *da);
  const EnsembleParams params{d, k, 2};
  if (rng.coin()) {
    return LabeledState(sample_pi(shape, k, rng), Branch::GlobalHaar, params, true);
  }
  auto ra = sample_pi(*da, *ka, rng);
  auto rb = sample_pi(*da, *ka, rng);
  return LabeledState(kron(ra, rb), Branch::Product, params, false);
}

/// Dispatches on params.parties.
inline LabeledState sample_ensemble(const EnsembleParams& params, RngStream& rng,
                                    const LabelPolicy& policy = {}) {
  if (params.parties == 2) return sample_pi_star(params.d, params.k, rng, policy);
  if (params.k != 1) {
    throw std::invalid_argument("sample_ensemble: multipartite ensembles are pure (k = 1)");
  }
  return sample_pi_star_multipartite(params.d, params.parties, rng);
}

}  // namespace edplab
