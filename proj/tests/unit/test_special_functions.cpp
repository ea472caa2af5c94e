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

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <cstdint>

#include "edplab/special_functions.hpp"
#include "oracles.hpp"

namespace {

using edplab::regularized_incomplete_beta;

TEST(IncompleteBeta, EndpointsAndDomain) {
  EXPECT_EQ(regularized_incomplete_beta(0.0, 2.0, 3.0), 0.0);
  EXPECT_EQ(regularized_incomplete_beta(1.0, 2.0, 3.0), 1.0);
  EXPECT_THROW(regularized_incomplete_beta(-0.1, 2.0, 3.0), std::domain_error);
  EXPECT_THROW(regularized_incomplete_beta(1.1, 2.0, 3.0), std::domain_error);
  EXPECT_THROW(regularized_incomplete_beta(0.5, 0.0, 3.0), std::domain_error);
  EXPECT_THROW(regularized_incomplete_beta(0.5, 2.0, -1.0), std::domain_error);
}

TEST(IncompleteBeta, PowerLawWhenBIsOne) {
  // I_x(a, 1) = x^a
  for (double a : {0.5, 1.0, 3.0, 17.5}) {
    for (double x : {0.1, 0.5, 0.9}) {
      EXPECT_NEAR(regularized_incomplete_beta(x, a, 1.0), std::pow(x, a), 1e-14);
    }
  }
}

TEST(IncompleteBeta, MatchesBinomialTailAtHalf) {
  for (std::uint64_t a = 1; a <= 60; a += 3) {
    for (std::uint64_t b = 1; b <= 60; b += 4) {
      EXPECT_NEAR(regularized_incomplete_beta(0.5, a, b), oracle::binomial_tail_half(a, b), 1e-13)
          << "a=" << a << " b=" << b;
    }
  }
}

TEST(IncompleteBeta, MatchesBoostUpToLargeParameters) {
  for (double s : {4.0, 64.0, 512.0, 2048.0, 4096.0}) {
    for (double frac : {0.25, 0.5, 0.53, 0.75}) {
      const double a = std::max(1.0, std::round(frac * s));
      const double b = std::max(1.0, s - a);
      for (double x : {0.3, 0.5, 0.52, 0.7}) {
        EXPECT_NEAR(regularized_incomplete_beta(x, a, b), boost::math::ibeta(a, b, x), 1e-12)
            << "a=" << a << " b=" << b << " x=" << x;
      }
    }
  }
}

TEST(IncompleteBeta, ReflectionSymmetry) {
  for (double a : {0.7, 2.0, 40.0, 1000.0}) {
    for (double b : {0.3, 5.0, 33.0, 900.0}) {
      for (double x : {0.05, 0.4, 0.5, 0.93}) {
        EXPECT_NEAR(regularized_incomplete_beta(x, a, b),
                    1.0 - regularized_incomplete_beta(1.0 - x, b, a), 1e-12);
      }
    }
  }
}

TEST(IncompleteBeta, MonotoneInX) {
  double prev = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double v = regularized_incomplete_beta(i / 100.0, 12.0, 7.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

}  // namespace
