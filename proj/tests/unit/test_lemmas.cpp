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

#include <gtest/gtest.h>

#include <cmath>

#include "edplab/lemmas.hpp"
#include "oracles.hpp"

namespace {

using edplab::ContractionRoute;
using edplab::ProductLemmaOptions;
using edplab::ProductLemmaVariant;
using edplab::RngStream;

TEST(HaarMoment, SingleCopyIsMaximallyMixed) {
  RngStream rng(11, 0);
  const auto r = edplab::check_haar_moment_lemma(3, 1, 20000, rng);
  EXPECT_LT(r.max_deviation, edplab::haar_moment_tolerance(1, 20000));
}

TEST(HaarMoment, TwoQubitCopies) {
  RngStream rng(11, 1);
  const auto r = edplab::check_haar_moment_lemma(2, 2, 40000, rng);
  EXPECT_LT(r.max_deviation, edplab::haar_moment_tolerance(2, 40000));
}

TEST(HaarMoment, RefusesOversizedOperators) {
  RngStream rng(11, 2);
  EXPECT_THROW(edplab::check_haar_moment_lemma(64, 4, 1, rng, 1u << 12), std::length_error);
}

TEST(ProductLemma, SingleCopyIsExact) {
  RngStream rng(12, 0);
  ProductLemmaOptions pure;
  const auto p = edplab::check_product_state_lemma(16, 1, 20, rng, pure);
  EXPECT_NEAR(p.min_value, 1.0, 1e-10);
  ProductLemmaOptions single{ProductLemmaVariant::MixedSingle, 3};
  EXPECT_NEAR(edplab::check_product_state_lemma(5, 1, 20, rng, single).min_value, 3.0, 1e-10);
}

TEST(ProductLemma, RoutesAgree) {
  for (auto variant : {ProductLemmaVariant::Pure, ProductLemmaVariant::MixedDouble,
                       ProductLemmaVariant::MixedSingle}) {
    ProductLemmaOptions a{variant, 4, ContractionRoute::Materialized};
    ProductLemmaOptions b{variant, 4, ContractionRoute::Factorized};
    RngStream ra(12, 1);
    RngStream rb(12, 1);
    const auto x = edplab::check_product_state_lemma(4, 3, 30, ra, a);
    const auto y = edplab::check_product_state_lemma(4, 3, 30, rb, b);
    EXPECT_NEAR(x.min_value, y.min_value, 1e-9 * std::abs(x.min_value))
        << edplab::to_string(variant);
    EXPECT_EQ(x.route, ContractionRoute::Materialized);
    EXPECT_EQ(y.route, ContractionRoute::Factorized);
  }
}

TEST(ProductLemma, AutomaticRoutePicksBySize) {
  RngStream rng(12, 2);
  EXPECT_EQ(edplab::check_product_state_lemma(4, 3, 1, rng).route, ContractionRoute::Materialized);
  EXPECT_EQ(edplab::check_product_state_lemma(16, 3, 1, rng).route, ContractionRoute::Factorized);
}

TEST(ProductLemma, BoundsHold) {
  RngStream rng(12, 3);
  for (std::size_t t = 2; t <= 4; ++t) {
    EXPECT_TRUE(edplab::check_product_state_lemma(4, t, 40, rng).passed()) << "PURE T=" << t;
    EXPECT_TRUE(edplab::check_product_state_lemma(
                    4, t, 40, rng, {ProductLemmaVariant::MixedSingle, 2}).passed())
        << "MIXED_SINGLE T=" << t;
    EXPECT_TRUE(edplab::check_product_state_lemma(
                    4, t, 40, rng, {ProductLemmaVariant::MixedDouble, 4}).passed())
        << "MIXED_DOUBLE T=" << t;
  }
}

TEST(ProductLemma, RejectsBadShapes) {
  RngStream rng(12, 4);
  EXPECT_THROW(edplab::check_product_state_lemma(8, 2, 1, rng), std::invalid_argument);
  EXPECT_THROW(edplab::check_product_state_lemma(4, 2, 1, rng, {ProductLemmaVariant::MixedDouble, 3}),
               std::invalid_argument);
}

TEST(Twirl, PairOperatorSquaresToItsSecondMomentForm) {
  // Full-matrix oracle for Tr(X^2 (U rho U^dagger)^{(x)2}) at one fixed U.
  RngStream rng(13, 0);
  for (std::size_t da : {2u, 3u, 5u}) {
    const auto rho = edplab::sample_pi(da, da, rng);
    const auto u = edplab::sample_haar_unitary(da, rng);
    const edplab::ComplexMatrix x = edplab::pair_statistic_operator(da);
    const edplab::ComplexMatrix r = u * rho.matrix() * u.adjoint();
    const double full = (x * x * edplab::kron(r, r)).trace().real();
    const auto p = edplab::rotated_populations(rho.matrix(), u);
    double sq = 0.0;
    for (double pb : p) sq += pb * pb;
    EXPECT_NEAR(full, (static_cast<double>(da * da) - 1.0) * sq + 1.0, 1e-10);
  }
}

TEST(Twirl, MaximallyMixedQubit) {
  RngStream rng(13, 1);
  edplab::TwirlOptions opts;
  opts.rho = edplab::DensityMatrix::maximally_mixed(edplab::SubsystemShape::single(2));
  const auto r = edplab::check_twirl_identities(2, 20000, rng, opts);
  EXPECT_DOUBLE_EQ(r.second_moment_expected, 2.5);
  EXPECT_TRUE(r.passed()) << r.swap_max_deviation << " " << r.second_moment.mean << " "
                          << r.estimator.mean;
}

TEST(Twirl, PureStateSecondMoment) {
  RngStream rng(13, 2);
  for (std::size_t da : {2u, 3u}) {
    edplab::TwirlOptions opts;
    opts.rho = edplab::DensityMatrix::from_pure(edplab::sample_haar_pure(da, rng));
    const auto r = edplab::check_twirl_identities(da, 20000, rng, opts);
    EXPECT_NEAR(r.second_moment_expected, 2.0 * da - 1.0, 1e-12);
    EXPECT_TRUE(r.passed());
  }
}

TEST(Twirl, DefaultStateAndRange) {
  RngStream rng(13, 3);
  EXPECT_TRUE(edplab::check_twirl_identities(3, 20000, rng).passed());
  EXPECT_THROW(edplab::check_twirl_identities(1, 10, rng), std::invalid_argument);
  EXPECT_THROW(edplab::check_twirl_identities(17, 10, rng), std::invalid_argument);
}

TEST(SwapMoments, SmallDimension) {
  RngStream rng(14, 0);
  const auto r = edplab::check_swap_moments(4, 50000, rng);
  EXPECT_TRUE(r.passed()) << r.mean.observed << " " << r.variance.observed;
  EXPECT_DOUBLE_EQ(r.mean.expected, 0.5);
  EXPECT_DOUBLE_EQ(r.variance.expected, 2.0 / 5.0 - 0.25);
}

TEST(PagePurity, MatchesExactHaarAverage) {
  RngStream rng(15, 0);
  for (std::size_t d : {4u, 16u, 64u}) {
    const auto r = edplab::check_page_purity(d, 20000, rng);
    const double root = std::sqrt(static_cast<double>(d));
    EXPECT_NEAR(r.exact.expected, oracle::haar_mean_purity(root, root), 1e-15);
    EXPECT_TRUE(r.exact.passed()) << "d=" << d << " mean " << r.exact.observed;
  }
}

edplab::VarianceGridPoint grid_point(std::size_t da, std::size_t nm, double cubic, double var) {
  edplab::VarianceGridPoint p;
  p.d_a = da;
  p.measurements = nm;
  p.cubic = cubic;
  p.spread.variance = var;
  return p;
}

TEST(VarianceFit, CoversEveryPointWithTheSmallestMaxConstant) {
  std::vector<edplab::VarianceGridPoint> pts;
  for (std::size_t da : {2u, 4u, 8u}) {
    for (std::size_t nm : {2u, 8u, 32u}) {
      for (double cubic : {1.0, 0.1}) {
        const double n = static_cast<double>(nm);
        pts.push_back(grid_point(da, nm, cubic, 3.0 * da / (n * n) + 2.0 * cubic / n));
      }
    }
  }
  const auto [c1, c2] = edplab::fit_variance_constants(pts);
  EXPECT_LE(std::max(c1, c2), 3.0);
  EXPECT_GE(std::min(c1, c2), 0.0);
  edplab::VarianceFit fit{c1, c2, pts};
  for (const auto& p : pts) EXPECT_LE(p.spread.variance, fit.bound_at(p) * (1.0 + 1e-12));
}

TEST(VarianceFit, SingleTermLawLeavesTheOtherAtZero) {
  std::vector<edplab::VarianceGridPoint> pts;
  for (std::size_t nm : {2u, 4u, 16u}) {
    const double n = static_cast<double>(nm);
    pts.push_back(grid_point(4, nm, 0.0, 3.0 * 4.0 / (n * n)));
  }
  const auto [c1, c2] = edplab::fit_variance_constants(pts);
  EXPECT_NEAR(c1, 3.0, 1e-12);
  EXPECT_EQ(c2, 0.0);
  EXPECT_THROW(edplab::fit_variance_constants({}), std::invalid_argument);
}

TEST(VarianceFit, SmallGridStaysUnderTen) {
  RngStream rng(16, 0);
  edplab::VarianceGridOptions opts;
  opts.d_a_values = {2, 4};
  opts.measurement_values = {2, 8};
  opts.runs = 3000;
  const auto fit = edplab::estimator_variance_grid(rng, opts);
  EXPECT_EQ(fit.points.size(), 8u);
  EXPECT_LE(fit.c1, 10.0);
  EXPECT_LE(fit.c2, 10.0);
  for (const auto& p : fit.points) {
    EXPECT_TRUE(p.estimate.agrees_with(p.purity, 5.0)) << p.state << " d_A=" << p.d_a;
  }
}

TEST(DetectionFrequency, QubitPairsMatchClosedForm) {
  const auto c = edplab::sample_detection_frequency(4, 60000, RngStream(17, 0));
  const double p = edplab::detection_power_closed_form(4);
  const double f = static_cast<double>(c.hits) / static_cast<double>(c.n);
  EXPECT_NEAR(f, p, 4.0 * std::sqrt(p * (1.0 - p) / c.n));
}

}  // namespace
