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

/// \file lemmas.hpp
/// \brief Brute-force checks of the Haar-moment, product-state, twirl and
/// swap-moment identities the lower and upper bounds rest on.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "edplab/linalg.hpp"
#include "edplab/parallel.hpp"
#include "edplab/protocols.hpp"
#include "edplab/random_states.hpp"
#include "edplab/rng.hpp"
#include "edplab/stats.hpp"

namespace edplab {

// ---------------------------------------------------------------------------
// Haar moments

struct HaarMomentReport {
  std::size_t d = 0;
  std::size_t copies = 0;
  std::size_t n_samples = 0;
  double max_deviation = 0.0;
};

/// Monte Carlo mean of (psi psi^dagger)^{(x)T} against
/// (sum_sigma W_sigma) / (d (d+1) ... (d+T-1)), entrywise.
inline HaarMomentReport check_haar_moment_lemma(std::size_t d, std::size_t copies,
                                                std::size_t n_samples, RngStream& rng,
                                                std::size_t max_dim = kDefaultOperatorDimCap) {
  if (d < 1 || copies < 1 || n_samples < 1) {
    throw std::invalid_argument("check_haar_moment_lemma: d, T and n must be positive");
  }
  const auto n = checked_pow(d, copies, max_dim);
  if (!n) throw std::length_error("check_haar_moment_lemma: d^T exceeds the dimension cap");
  const auto N = static_cast<Eigen::Index>(*n);

  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(N, N);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto psi = sample_haar_pure(d, rng);
    ComplexVector v = psi.amplitudes();
    for (std::size_t t = 1; t < copies; ++t) v = kron(v, psi.amplitudes());
    acc.selfadjointView<Eigen::Lower>().rankUpdate(v);
  }
  acc = acc.selfadjointView<Eigen::Lower>();
  acc /= static_cast<double>(n_samples);

  double norm = 1.0;
  for (std::size_t t = 0; t < copies; ++t) norm *= static_cast<double>(d + t);
  const ComplexMatrix expected = symmetrizer_sum(copies, d, max_dim) / norm;
  return {d, copies, n_samples, (acc - expected).cwiseAbs().maxCoeff()};
}

/// Pass threshold for check_haar_moment_lemma: 5e-3 (T <= 2) or 1e-2
/// (T >= 3) at 10^6 samples, scaled as 1/sqrt(n).
inline double haar_moment_tolerance(std::size_t copies, std::size_t n_samples) {
  const double base = copies <= 2 ? 5e-3 : 1e-2;
  return base * std::sqrt(1e6 / static_cast<double>(n_samples));
}

// ---------------------------------------------------------------------------
// Product-state lemmas

enum class ProductLemmaVariant { Pure, MixedSingle, MixedDouble };

inline std::string_view to_string(ProductLemmaVariant v) {
  switch (v) {
    case ProductLemmaVariant::Pure: return "PURE";
    case ProductLemmaVariant::MixedSingle: return "MIXED_SINGLE";
    case ProductLemmaVariant::MixedDouble: return "MIXED_DOUBLE";
  }
  return "?";
}

enum class ContractionRoute { Automatic, Materialized, Factorized };

struct ProductLemmaOptions {
  ProductLemmaVariant variant = ProductLemmaVariant::Pure;
  std::size_t k = 1;
  ContractionRoute route = ContractionRoute::Automatic;
  /// Automatic materializes the operator when d^T is at most this.
  std::size_t materialize_below = std::size_t{1} << 10;
  std::size_t max_dim = kDefaultOperatorDimCap;
};

struct ProductLemmaReport {
  ProductLemmaVariant variant = ProductLemmaVariant::Pure;
  std::size_t d = 0;
  std::size_t k = 1;
  std::size_t copies = 0;
  std::size_t n_states = 0;
  double min_value = std::numeric_limits<double>::infinity();
  double bound = 1.0;
  ContractionRoute route = ContractionRoute::Materialized;

  [[nodiscard]] bool passed(double tol = 1e-8) const { return min_value >= bound - tol; }
};

namespace detail {

/// Product of the factors' reshaped d_A x d_B matrices: for each cycle of
/// sigma2^{-1} sigma1 the trace of prod_i M_{s_i}^T conj(M_{sigma1(s_i)}).
/// gram[s][u] holds M_s^T conj(M_u).
inline Complex factorized_pair_term(const std::vector<std::vector<ComplexMatrix>>& gram,
                                    const Permutation& sigma1, const Permutation& sigma2_inv) {
  const auto T = sigma1.size();
  std::vector<bool> seen(T, false);
  Complex value(1.0, 0.0);
  for (std::size_t start = 0; start < T; ++start) {
    if (seen[start]) continue;
    ComplexMatrix prod;
    bool first = true;
    for (auto s = start; !seen[s]; s = sigma2_inv(sigma1(s))) {
      seen[s] = true;
      const auto& g = gram[s][sigma1(s)];
      if (first) {
        prod = g;
        first = false;
      } else {
        prod = prod * g;
      }
    }
    value *= prod.trace();
  }
  return value;
}

inline std::vector<std::vector<ComplexMatrix>> factor_grams(
    const std::vector<ComplexVector>& factors, std::size_t da, std::size_t db) {
  const auto T = factors.size();
  std::vector<ComplexMatrix> mats;
  mats.reserve(T);
  for (const auto& f : factors) {
    mats.push_back(Eigen::Map<const ComplexMatrix>(f.data(), static_cast<Eigen::Index>(da),
                                                   static_cast<Eigen::Index>(db)));
  }
  std::vector<std::vector<ComplexMatrix>> gram(T, std::vector<ComplexMatrix>(T));
  for (std::size_t s = 0; s < T; ++s) {
    for (std::size_t u = 0; u < T; ++u) gram[s][u] = mats[s].transpose() * mats[u].conjugate();
  }
  return gram;
}

/// <Phi| V (sum_{s1,s2} w(s1) w(s2) W_{s1} (x) W_{s2}) V^dagger |Phi> by the
/// cycle factorization; weights[i] multiplies the i-th element of
/// Permutation::all(T).
inline double factorized_bipartite_value(const std::vector<ComplexVector>& factors,
                                         std::size_t da, std::size_t db,
                                         const std::vector<Permutation>& perms,
                                         const std::vector<double>& weights) {
  const auto gram = factor_grams(factors, da, db);
  Complex total(0.0, 0.0);
  for (std::size_t i = 0; i < perms.size(); ++i) {
    for (std::size_t j = 0; j < perms.size(); ++j) {
      total += weights[i] * weights[j] *
               factorized_pair_term(gram, perms[i], perms[j].inverse());
    }
  }
  return total.real();
}

/// Same quantity with the operator built explicitly.
inline double materialized_bipartite_value(const ComplexVector& phi, std::size_t da,
                                           std::size_t db, std::size_t copies,
                                           const std::vector<Permutation>& perms,
                                           const std::vector<double>& weights,
                                           std::size_t max_dim) {
  const auto na = checked_pow(da, copies, max_dim);
  const auto nb = checked_pow(db, copies, max_dim);
  if (!na || !nb || !checked_pow(da * db, copies, max_dim)) {
    throw std::length_error("check_product_state_lemma: operator exceeds the dimension cap");
  }
  ComplexMatrix sum_a = ComplexMatrix::Zero(static_cast<Eigen::Index>(*na),
                                            static_cast<Eigen::Index>(*na));
  ComplexMatrix sum_b = ComplexMatrix::Zero(static_cast<Eigen::Index>(*nb),
                                            static_cast<Eigen::Index>(*nb));
  for (std::size_t i = 0; i < perms.size(); ++i) {
    sum_a += weights[i] * permutation_operator(perms[i], da, max_dim);
    sum_b += weights[i] * permutation_operator(perms[i], db, max_dim);
  }
  const auto v = unravel(copies, SubsystemShape::bipartite(da, db));
  const ComplexVector x = v.apply_inverse(phi);
  return x.dot(kron(sum_a, sum_b) * x).real();
}

}  // namespace detail

/// Minimum over n_states random product states |Phi> = |phi_1>...|phi_T>,
/// phi_t Haar on C^d, of
///  - PURE: <Phi| V (sum W) (x) (sum W) V^dagger |Phi>, bound 1;
///  - MIXED_SINGLE: sum_sigma k^{cyc(sigma)} <Phi|W_sigma|Phi>, bound k^T;
///  - MIXED_DOUBLE: the PURE form with weights sqrt(k)^{cyc}, bound k^T.
inline ProductLemmaReport check_product_state_lemma(std::size_t d, std::size_t copies,
                                                    std::size_t n_states, RngStream& rng,
                                                    const ProductLemmaOptions& opts = {}) {
  if (copies < 1 || n_states < 1) {
    throw std::invalid_argument("check_product_state_lemma: T and n_states must be positive");
  }
  if (opts.k < 1) throw std::invalid_argument("check_product_state_lemma: k must be positive");
  const auto total = checked_pow(d, copies, opts.max_dim);
  if (!total) throw std::length_error("check_product_state_lemma: d^T exceeds the dimension cap");

  ProductLemmaReport rep;
  rep.variant = opts.variant;
  rep.d = d;
  rep.k = opts.k;
  rep.copies = copies;
  rep.n_states = n_states;
  const double kd = static_cast<double>(opts.k);
  rep.bound = opts.variant == ProductLemmaVariant::Pure ? 1.0
                                                        : std::pow(kd, static_cast<double>(copies));
  rep.route = opts.route == ContractionRoute::Automatic
                  ? (*total <= opts.materialize_below ? ContractionRoute::Materialized
                                                      : ContractionRoute::Factorized)
                  : opts.route;

  const auto perms = Permutation::all(copies);
  std::vector<double> weights(perms.size(), 1.0);
  std::size_t da = 0;
  if (opts.variant != ProductLemmaVariant::MixedSingle) {
    const auto root = exact_sqrt(d);
    if (!root) throw std::invalid_argument("check_product_state_lemma: d must be a perfect square");
    da = *root;
  }
  if (opts.variant == ProductLemmaVariant::MixedDouble) {
    if (!exact_sqrt(opts.k)) {
      throw std::invalid_argument("check_product_state_lemma: MIXED_DOUBLE needs k square");
    }
    for (std::size_t i = 0; i < perms.size(); ++i) {
      weights[i] = std::pow(std::sqrt(kd), static_cast<double>(perms[i].cycle_count()));
    }
  }
  if (opts.variant == ProductLemmaVariant::MixedSingle) {
    for (std::size_t i = 0; i < perms.size(); ++i) {
      weights[i] = std::pow(kd, static_cast<double>(perms[i].cycle_count()));
    }
  }

  // Only needed on the materialized single-system route.
  std::optional<ComplexMatrix> single_op;
  if (opts.variant == ProductLemmaVariant::MixedSingle &&
      rep.route == ContractionRoute::Materialized) {
    const auto N = static_cast<Eigen::Index>(*total);
    single_op = ComplexMatrix::Zero(N, N);
    for (std::size_t i = 0; i < perms.size(); ++i) {
      *single_op += weights[i] * permutation_operator(perms[i], d, opts.max_dim);
    }
  }

  for (std::size_t n = 0; n < n_states; ++n) {
    std::vector<ComplexVector> factors;
    factors.reserve(copies);
    for (std::size_t t = 0; t < copies; ++t) factors.push_back(sample_haar_pure(d, rng).amplitudes());

    double value = 0.0;
    if (opts.variant == ProductLemmaVariant::MixedSingle) {
      if (single_op) {
        ComplexVector phi = factors[0];
        for (std::size_t t = 1; t < copies; ++t) phi = kron(phi, factors[t]);
        value = phi.dot(*single_op * phi).real();
      } else {
        // <Phi|W_sigma|Phi> = prod_s <phi_{sigma(s)}|phi_s>
        for (std::size_t i = 0; i < perms.size(); ++i) {
          Complex term(1.0, 0.0);
          for (std::size_t s = 0; s < copies; ++s) term *= factors[perms[i](s)].dot(factors[s]);
          value += weights[i] * term.real();
        }
      }
    } else if (rep.route == ContractionRoute::Materialized) {
      ComplexVector phi = factors[0];
      for (std::size_t t = 1; t < copies; ++t) phi = kron(phi, factors[t]);
      value = detail::materialized_bipartite_value(phi, da, da, copies, perms, weights,
                                                   opts.max_dim);
    } else {
      value = detail::factorized_bipartite_value(factors, da, da, perms, weights);
    }
    rep.min_value = std::min(rep.min_value, value);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Twirl identities

/// X = sum_{b, b'} X(b, b') |b b'><b b'| with X(b, b') = d_A if b = b', else -1.
inline ComplexMatrix pair_statistic_operator(std::size_t d_a) {
  const auto n = static_cast<Eigen::Index>(d_a * d_a);
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (std::size_t b = 0; b < d_a; ++b) {
    for (std::size_t c = 0; c < d_a; ++c) {
      const auto i = static_cast<Eigen::Index>(b * d_a + c);
      x(i, i) = b == c ? static_cast<double>(d_a) : -1.0;
    }
  }
  return x;
}

struct TwirlOptions {
  /// Fixed state for identities (ii) and (iii); a pi_{d_A, d_A} draw when
  /// absent.
  std::optional<DensityMatrix> rho;
  std::size_t estimator_runs = 2000;
  std::size_t unitaries = 1;
  std::size_t measurements = 4;
};

struct TwirlReport {
  std::size_t d_a = 0;
  std::size_t n_samples = 0;
  double purity = 0.0;
  /// (i) max_{ij} |E U^{(x)2} X U^{dagger (x)2} - S|.
  double swap_max_deviation = 0.0;
  /// (ii) Monte Carlo mean of Tr(U^{dagger (x)2} X^2 U^{(x)2} rho^{(x)2}).
  MeanEstimate second_moment;
  double second_moment_expected = 0.0;
  /// (iii) mean of the full estimator over independent runs.
  MeanEstimate estimator;

  [[nodiscard]] bool passed(double swap_tol = 0.05, double sigmas = 4.0) const {
    return swap_max_deviation < swap_tol &&
           second_moment.agrees_with(second_moment_expected, sigmas) &&
           estimator.agrees_with(purity, sigmas);
  }
};

inline TwirlReport check_twirl_identities(std::size_t d_a, std::size_t n_samples, RngStream& rng,
                                          TwirlOptions opts = {}) {
  if (d_a < 2 || d_a > 16) {
    throw std::invalid_argument("check_twirl_identities: d_A must lie in [2, 16]");
  }
  if (n_samples < 2) throw std::invalid_argument("check_twirl_identities: need >= 2 samples");
  auto twirl_rng = rng.substream(0);
  auto state_rng = rng.substream(1);
  auto est_rng = rng.substream(2);

  const DensityMatrix rho = opts.rho ? *opts.rho : sample_pi(d_a, d_a, state_rng);
  if (rho.dim() != d_a) throw std::invalid_argument("check_twirl_identities: rho has wrong dim");

  TwirlReport rep;
  rep.d_a = d_a;
  rep.n_samples = n_samples;
  rep.purity = rho.purity();
  rep.second_moment_expected =
      static_cast<double>(d_a) + static_cast<double>(d_a - 1) * rep.purity;

  const ComplexMatrix x = pair_statistic_operator(d_a);
  const auto n2 = static_cast<Eigen::Index>(d_a * d_a);
  ComplexMatrix acc = ComplexMatrix::Zero(n2, n2);
  RunningMoments second;
  const double dsq_minus_one = static_cast<double>(d_a * d_a) - 1.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto u = sample_haar_unitary(d_a, twirl_rng);
    const ComplexMatrix uu = kron(u, u);
    acc.noalias() += uu * x * uu.adjoint();
    // Tr(X^2 (U rho U^dagger)^{(x)2}) with X^2 diagonal: (d_A^2 - 1) sum p_b^2 + 1.
    const auto p = rotated_populations(rho.matrix(), u);
    double sum_sq = 0.0;
    for (double pb : p) sum_sq += pb * pb;
    second.add(dsq_minus_one * sum_sq + 1.0);
  }
  acc /= static_cast<double>(n_samples);
  rep.swap_max_deviation = (acc - swap_operator(d_a)).cwiseAbs().maxCoeff();
  rep.second_moment = second.estimate();

  RunningMoments est;
  for (std::size_t r = 0; r < opts.estimator_runs; ++r) {
    const auto rec = draw_randomized_measurements(rho, opts.unitaries, opts.measurements, est_rng);
    est.add(purity_estimator_from_shots(rec, d_a));
  }
  rep.estimator = est.estimate();
  return rep;
}

// ---------------------------------------------------------------------------
// Moments over Haar pure states

struct MomentCheck {
  double observed = 0.0;
  double expected = 0.0;
  double stderr_observed = 0.0;

  [[nodiscard]] double deviation() const { return observed - expected; }
  [[nodiscard]] bool passed(double sigmas = 4.0) const {
    return std::abs(deviation()) <= sigmas * stderr_observed;
  }
};

struct SwapMomentsReport {
  std::size_t d = 0;
  std::size_t n_samples = 0;
  MomentCheck mean;      // against 1/sqrt(d)
  MomentCheck variance;  // against 2/(d+1) - 1/d

  [[nodiscard]] bool passed(double sigmas = 4.0) const {
    return mean.passed(sigmas) && variance.passed(sigmas);
  }
};

/// Mean and variance of Tr(S psi) over Haar pure states on C^{sqrt d} (x) C^{sqrt d}.
inline SwapMomentsReport check_swap_moments(std::size_t d, std::size_t n_samples,
                                            RngStream& rng) {
  const auto da = exact_sqrt(d);
  if (!da || d < 1) throw std::invalid_argument("check_swap_moments: d must be a perfect square");
  if (n_samples < 4) throw std::invalid_argument("check_swap_moments: need >= 4 samples");
  const auto shape = SubsystemShape::bipartite(*da, *da);
  std::vector<double> xs(n_samples);
  for (auto& x : xs) x = swap_witness_value(sample_haar_pure(shape, rng)).value;
  const auto m = mean_estimate(xs);
  const auto v = variance_estimate(xs);
  const double dd = static_cast<double>(d);
  SwapMomentsReport rep;
  rep.d = d;
  rep.n_samples = n_samples;
  rep.mean = {m.mean, 1.0 / std::sqrt(dd), m.stderr_mean};
  rep.variance = {v.variance, 2.0 / (dd + 1.0) - 1.0 / dd, v.stderr_variance};
  return rep;
}

struct PagePurityReport {
  std::size_t d = 0;
  std::size_t n_samples = 0;
  /// Against (sqrt d + 1)/(d + 1).
  MomentCheck stated;
  /// Exact second moment (d_A + d_B)/(d_A d_B + 1) = 2 sqrt d/(d + 1).
  MomentCheck exact;
};

/// Mean subsystem purity of Haar pure states on C^{sqrt d} (x) C^{sqrt d}.
inline PagePurityReport check_page_purity(std::size_t d, std::size_t n_samples, RngStream& rng) {
  const auto da = exact_sqrt(d);
  if (!da || d < 1) throw std::invalid_argument("check_page_purity: d must be a perfect square");
  if (n_samples < 2) throw std::invalid_argument("check_page_purity: need >= 2 samples");
  const auto shape = SubsystemShape::bipartite(*da, *da);
  RunningMoments m;
  for (std::size_t s = 0; s < n_samples; ++s) m.add(subsystem_purity(sample_haar_pure(shape, rng)));
  const auto e = m.estimate();
  const double root = static_cast<double>(*da);
  const double dd = static_cast<double>(d);
  PagePurityReport rep;
  rep.d = d;
  rep.n_samples = n_samples;
  rep.stated = {e.mean, (root + 1.0) / (dd + 1.0), e.stderr_mean};
  rep.exact = {e.mean, 2.0 * root / (dd + 1.0), e.stderr_mean};
  return rep;
}

// ---------------------------------------------------------------------------
// Randomized-measurement estimator variance

struct VarianceGridPoint {
  std::size_t d_a = 0;
  std::size_t measurements = 0;  // N_M
  std::size_t unitaries = 1;     // N_U
  std::string state;             // "product" or "haar"
  double purity = 0.0;
  double cubic = 0.0;  // Tr(rho_A^3)
  MeanEstimate estimate;
  VarianceEstimate spread;
};

struct VarianceFit {
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<VarianceGridPoint> points;

  /// Bound (1/N_U)(c1 d_A / N_M^2 + c2 Tr(rho^3) / N_M) at a grid point.
  [[nodiscard]] double bound_at(const VarianceGridPoint& p) const {
    const double nm = static_cast<double>(p.measurements);
    return (c1 * static_cast<double>(p.d_a) / (nm * nm) + c2 * p.cubic / nm) /
           static_cast<double>(p.unitaries);
  }
};

/// Smallest (c1, c2) >= 0 in the max-norm with
/// N_U var_i <= c1 a_i + c2 b_i for every point; ties broken by the smaller
/// sum. a_i = d_A / N_M^2, b_i = Tr(rho^3) / N_M.
inline std::pair<double, double> fit_variance_constants(const std::vector<VarianceGridPoint>& pts) {
  if (pts.empty()) throw std::invalid_argument("fit_variance_constants: no points");
  struct Row {
    double a, b, y;
  };
  std::vector<Row> rows;
  for (const auto& p : pts) {
    const double nm = static_cast<double>(p.measurements);
    rows.push_back({static_cast<double>(p.d_a) / (nm * nm), p.cubic / nm,
                    p.spread.variance * static_cast<double>(p.unitaries)});
  }
  double c = 0.0;
  for (const auto& r : rows) c = std::max(c, r.y / (r.a + r.b));
  // With one constant pinned at c, the other only needs to cover the slack.
  auto min_other = [&](bool pin_first) {
    double other = 0.0;
    for (const auto& r : rows) {
      const double pinned = pin_first ? r.a : r.b;
      const double free = pin_first ? r.b : r.a;
      const double need = r.y - c * pinned;
      if (need > 0.0) other = std::max(other, free > 0.0 ? need / free : c);
    }
    return std::min(other, c);
  };
  const double c2_if_c1 = min_other(true);
  const double c1_if_c2 = min_other(false);
  if (c + c2_if_c1 <= c + c1_if_c2) return {c, c2_if_c1};
  return {c1_if_c2, c};
}

struct VarianceGridOptions {
  std::vector<std::size_t> d_a_values{2, 4, 8, 16};
  std::vector<std::size_t> measurement_values{2, 4, 8, 16, 32};
  std::size_t unitaries = 1;
  std::size_t runs = 4000;
};

/// Empirical estimator variance on a product (pure rho_A) and a
/// Haar-reduced rho_A at every grid point, plus the fitted constants.
inline VarianceFit estimator_variance_grid(RngStream& rng, const VarianceGridOptions& opts = {}) {
  VarianceFit fit;
  std::uint64_t stream = 0;
  for (auto d_a : opts.d_a_values) {
    auto state_rng = rng.substream(stream++);
    const auto pure = DensityMatrix::from_pure(sample_haar_pure(d_a, state_rng));
    const auto haar = reduced_state(sample_haar_pure(SubsystemShape::bipartite(d_a, d_a), state_rng),
                                    {0});
    for (const auto* which : {"product", "haar"}) {
      const DensityMatrix& rho = std::string_view(which) == "product" ? pure : haar;
      const ComplexMatrix r2 = rho.matrix() * rho.matrix();
      const double cubic = (r2 * rho.matrix()).trace().real();
      for (auto nm : opts.measurement_values) {
        auto run_rng = rng.substream(stream++);
        std::vector<double> xs(opts.runs);
        for (auto& x : xs) {
          const auto rec = draw_randomized_measurements(rho, opts.unitaries, nm, run_rng);
          x = purity_estimator_from_shots(rec, d_a);
        }
        VarianceGridPoint p;
        p.d_a = d_a;
        p.measurements = nm;
        p.unitaries = opts.unitaries;
        p.state = which;
        p.purity = rho.purity();
        p.cubic = cubic;
        p.estimate = mean_estimate(xs);
        p.spread = variance_estimate(xs);
        fit.points.push_back(std::move(p));
      }
    }
  }
  std::tie(fit.c1, fit.c2) = fit_variance_constants(fit.points);
  return fit;
}

// ---------------------------------------------------------------------------
// Detection frequency of the exact witness

struct DetectionCount {
  std::size_t hits = 0;
  std::size_t n = 0;
};

inline constexpr std::size_t kSampleBlock = 4096;

/// Counts draws rho ~ pi*_{d,1} with Tr(S rho) < 0. Block b of kSampleBlock
/// draws uses substream b, so the count does not depend on the worker count.
inline DetectionCount sample_detection_frequency(std::size_t d, std::size_t n_samples,
                                                 const RngStream& rng) {
  if (n_samples < 1) throw std::invalid_argument("sample_detection_frequency: need samples");
  const std::size_t blocks = (n_samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::size_t> hits(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    auto block_rng = rng.substream(b);
    const std::size_t count = std::min(kSampleBlock, n_samples - b * kSampleBlock);
    for (std::size_t i = 0; i < count; ++i) {
      const auto s = sample_pi_star(d, 1, block_rng);
      if (swap_witness_value(s.pure()).value < 0.0) ++hits[b];
    }
  });
  DetectionCount c;
  c.n = n_samples;
  for (auto h : hits) c.hits += h;
  return c;
}

}  // namespace edplab
