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

/// \file bounds.hpp
/// \brief Closed-form total-variation upper bounds between the T-copy
/// leaf distributions of GLOBAL_HAAR and PRODUCT states, the matching Le Cam
/// success bound, and the copy count below which success >= 2/3 is
/// impossible.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace edplab {

enum class BoundKind { PureBipartite, Mixed, Multipartite };

struct BoundVariant {
  BoundKind kind = BoundKind::PureBipartite;
  std::size_t k = 1;        // environment dimension, Mixed only
  std::size_t parties = 2;  // K, Multipartite only

  static BoundVariant pure_bipartite() { return {}; }
  static BoundVariant mixed(std::size_t k) { return {BoundKind::Mixed, k, 2}; }
  static BoundVariant multipartite(std::size_t parties) {
    return {BoundKind::Multipartite, 1, parties};
  }

  void validate() const {
    if (kind == BoundKind::Mixed && k < 1) {
      throw std::invalid_argument("BoundVariant: MIXED needs k >= 1");
    }
    if (kind == BoundKind::Multipartite && parties < 2) {
      throw std::invalid_argument("BoundVariant: MULTIPARTITE needs K >= 2");
    }
  }
};

inline std::string_view to_string(BoundKind k) {
  switch (k) {
    case BoundKind::PureBipartite: return "PURE_BIPARTITE";
    case BoundKind::Mixed: return "MIXED";
    case BoundKind::Multipartite: return "MULTIPARTITE";
  }
  return "?";
}

inline BoundKind parse_bound_kind(std::string_view name) {
  if (name == "PURE_BIPARTITE" || name == "pure" || name == "pure_bipartite") {
    return BoundKind::PureBipartite;
  }
  if (name == "MIXED" || name == "mixed") return BoundKind::Mixed;
  if (name == "MULTIPARTITE" || name == "multipartite") return BoundKind::Multipartite;
  throw std::invalid_argument("unknown bound variant '" + std::string(name) + "'");
}

struct BoundReport {
  std::size_t d = 0;
  std::size_t k = 1;
  std::size_t parties = 2;
  std::size_t copies = 1;  // T
  double tv_upper = 0.0;
  double le_cam_success = 0.5;
  double min_copies = 0.0;
};

/// 1/2 + tv/2, clipped to [1/2, 1].
inline double le_cam_success_bound(double tv) { return std::clamp(0.5 + 0.5 * tv, 0.5, 1.0); }

/// sqrt((1/K) ln(6/5)) D^{1/(2K)} + 1, with D = d (pure, K = 2), dk (mixed).
inline double min_copies_lower_bound(std::size_t d, const BoundVariant& v = {}) {
  v.validate();
  if (d < 2) throw std::invalid_argument("min_copies_lower_bound: d must be >= 2");
  const double ln_ratio = std::log(6.0 / 5.0);
  switch (v.kind) {
    case BoundKind::PureBipartite:
      return std::sqrt(0.5 * ln_ratio) * std::pow(static_cast<double>(d), 0.25) + 1.0;
    case BoundKind::Mixed:
      return std::sqrt(0.5 * ln_ratio) *
                 std::pow(static_cast<double>(d) * static_cast<double>(v.k), 0.25) +
             1.0;
    case BoundKind::Multipartite: {
      const double K = static_cast<double>(v.parties);
      return std::sqrt(ln_ratio / K) * std::pow(static_cast<double>(d), 1.0 / (2.0 * K)) + 1.0;
    }
  }
  throw std::logic_error("min_copies_lower_bound: unknown variant");
}

/// 2 - (1 + (T-1)/D)^{-(T-1)} - (1 + (T-1)/D^{1/K})^{-K(T-1)}, with D = d
/// (pure, K = 2) or dk (mixed, K = 2) or d (multipartite).
inline BoundReport tv_upper_bound(std::size_t d, std::size_t copies,
                                  const BoundVariant& v = {}) {
  v.validate();
  if (copies < 1) throw std::invalid_argument("tv_upper_bound: T must be >= 1");
  if (d < 1) throw std::invalid_argument("tv_upper_bound: d must be >= 1");
  double D = static_cast<double>(d);
  double K = 2.0;
  if (v.kind == BoundKind::Mixed) D *= static_cast<double>(v.k);
  if (v.kind == BoundKind::Multipartite) K = static_cast<double>(v.parties);
  const double m = static_cast<double>(copies - 1);
  const double global = std::pow(1.0 + m / D, -m);
  const double product = std::pow(1.0 + m / std::pow(D, 1.0 / K), -K * m);
  BoundReport r;
  r.d = d;
  r.k = v.kind == BoundKind::Mixed ? v.k : 1;
  r.parties = v.kind == BoundKind::Multipartite ? v.parties : 2;
  r.copies = copies;
  r.tv_upper = std::max(0.0, 2.0 - global - product);
  r.le_cam_success = le_cam_success_bound(r.tv_upper);
  r.min_copies = d >= 2 ? min_copies_lower_bound(d, v) : 0.0;
  return r;
}

}  // namespace edplab
