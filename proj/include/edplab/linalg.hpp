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

/// \file linalg.hpp
/// \brief Dense complex linear algebra on multipartite Hilbert spaces.
///
/// Basis convention: a tensor-product basis state |i_1 ... i_K> with local
/// dimensions (d_1, ..., d_K) has linear index sum_k i_k * prod_{j>k} d_j,
/// i.e. the first factor is the most significant digit. kron() follows the
/// same convention. All matrices are stored row-major.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace edplab {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-8;

/// Default cap on the dimension (per axis) of explicitly built permutation
/// and moment operators.
inline constexpr std::size_t kDefaultOperatorDimCap = std::size_t{1} << 14;

// ---------------------------------------------------------------------------
// small integer helpers

/// n^p, or nullopt when the result exceeds `cap`.
inline std::optional<std::size_t> checked_pow(std::size_t n, std::size_t p,
                                              std::size_t cap) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (n != 0 && r > cap / n) return std::nullopt;
    r *= n;
  }
  if (r > cap) return std::nullopt;
  return r;
}

/// Exact integer K-th root of n, if it exists.
inline std::optional<std::size_t> exact_root(std::size_t n, std::size_t k) {
  if (k == 0) return std::nullopt;
  if (n <= 1 || k == 1) return n;
  auto guess = static_cast<std::size_t>(
      std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k))));
  for (std::size_t c = guess > 1 ? guess - 1 : 1; c <= guess + 1; ++c) {
    auto p = checked_pow(c, k, std::numeric_limits<std::size_t>::max());
    if (p && *p == n) return c;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> exact_sqrt(std::size_t n) {
  return exact_root(n, 2);
}

// ---------------------------------------------------------------------------
// SubsystemShape

/// Ordered local dimensions (d_1, ..., d_K) of a multipartite space. An empty
/// shape describes the trivial one-dimensional space.
class SubsystemShape {
 public:
  SubsystemShape() = default;
  explicit SubsystemShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    for (auto d : dims_) {
      if (d == 0) throw std::invalid_argument("SubsystemShape: zero local dimension");
    }
  }
  SubsystemShape(std::initializer_list<std::size_t> dims)
      : SubsystemShape(std::vector<std::size_t>(dims)) {}

  static SubsystemShape single(std::size_t d) { return SubsystemShape({d}); }
  static SubsystemShape bipartite(std::size_t da, std::size_t db) {
    return SubsystemShape({da, db});
  }
  /// K parties of equal local dimension.
  static SubsystemShape uniform(std::size_t d_local, std::size_t parties) {
    return SubsystemShape(std::vector<std::size_t>(parties, d_local));
  }

  [[nodiscard]] std::size_t parties() const { return dims_.size(); }
  [[nodiscard]] std::size_t dim(std::size_t i) const { return dims_.at(i); }
  [[nodiscard]] const std::vector<std::size_t>& dims() const { return dims_; }
  [[nodiscard]] std::size_t total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                           std::multiplies<>());
  }
  [[nodiscard]] bool is_bipartite() const { return dims_.size() == 2; }
  [[nodiscard]] bool is_symmetric_bipartite() const {
    return is_bipartite() && dims_[0] == dims_[1];
  }

  /// Row-major stride of each factor.
  [[nodiscard]] std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(dims_.size(), 1);
    for (std::size_t i = dims_.size(); i-- > 1;) s[i - 1] = s[i] * dims_[i];
    return s;
  }

  friend bool operator==(const SubsystemShape&, const SubsystemShape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

// ---------------------------------------------------------------------------
// matrix predicates

inline double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance) {
  return hermiticity_defect(m) <= tol;
}

/// All eigenvalues of a Hermitian matrix in ascending order.
inline Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h,
                                             double tol = kHermitianTolerance) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square and non-empty");
  }
  if (!is_hermitian(h, tol)) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
  }
  Eigen::MatrixXcd col = h;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(col, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

/// Smallest eigenvalue of a Hermitian matrix. Throws std::invalid_argument
/// when the input departs from Hermiticity by more than `tol` entrywise.
inline double min_eigenvalue(const ComplexMatrix& h, double tol = kHermitianTolerance) {
  return hermitian_eigenvalues(h, tol)(0);
}

// ---------------------------------------------------------------------------
// StateVector / DensityMatrix

/// Normalized pure state with an attached subsystem shape.
class StateVector {
 public:
  StateVector(ComplexVector amplitudes, SubsystemShape shape)
      : amplitudes_(std::move(amplitudes)), shape_(std::move(shape)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != shape_.total()) {
      throw std::invalid_argument("StateVector: shape does not match dimension");
    }
    if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
      throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
  }

  /// Normalizes `v` first; throws on the zero vector.
  static StateVector normalized(ComplexVector v, SubsystemShape shape) {
    const double n = v.norm();
    if (!(n > 0.0)) throw std::invalid_argument("StateVector: zero vector");
    v /= n;
    return StateVector(std::move(v), std::move(shape));
  }

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  [[nodiscard]] const ComplexVector& amplitudes() const { return amplitudes_; }
  [[nodiscard]] const SubsystemShape& shape() const { return shape_; }
  [[nodiscard]] Complex operator[](std::size_t i) const {
    return amplitudes_(static_cast<Eigen::Index>(i));
  }

  [[nodiscard]] ComplexMatrix projector() const {
    return amplitudes_ * amplitudes_.adjoint();
  }

 private:
  ComplexVector amplitudes_;
  SubsystemShape shape_;
};

/// Hermitian, unit-trace, positive semidefinite matrix with a subsystem shape.
class DensityMatrix {
 public:
  /// Validates every invariant, including PSD via a full eigensolve.
  DensityMatrix(ComplexMatrix m, SubsystemShape shape)
      : matrix_(std::move(m)), shape_(std::move(shape)) {
    validate_structure();
    if (min_eigenvalue(matrix_) < -kPsdTolerance) {
      throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
    }
  }

  struct trusted_t {};
  /// For matrices positive by construction (reductions, projectors,
  /// products): checks shape, Hermiticity and trace but skips the eigensolve.
  DensityMatrix(trusted_t, ComplexMatrix m, SubsystemShape shape)
      : matrix_(std::move(m)), shape_(std::move(shape)) {
    validate_structure();
  }

  static DensityMatrix from_pure(const StateVector& psi) {
    return DensityMatrix(trusted_t{}, psi.projector(), psi.shape());
  }

  static DensityMatrix maximally_mixed(SubsystemShape shape) {
    const auto n = static_cast<Eigen::Index>(shape.total());
    ComplexMatrix m = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
    return DensityMatrix(trusted_t{}, std::move(m), std::move(shape));
  }

  [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
  [[nodiscard]] const SubsystemShape& shape() const { return shape_; }

  /// Tr(rho^2).
  [[nodiscard]] double purity() const { return matrix_.squaredNorm(); }

 private:
  void validate_structure() const {
    if (matrix_.rows() != matrix_.cols()) {
      throw std::invalid_argument("DensityMatrix: matrix is not square");
    }
    if (static_cast<std::size_t>(matrix_.rows()) != shape_.total()) {
      throw std::invalid_argument("DensityMatrix: shape does not match dimension");
    }
    if (!is_hermitian(matrix_)) {
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kTraceTolerance) {
      throw std::invalid_argument("DensityMatrix: trace differs from one");
    }
  }

  ComplexMatrix matrix_;
  SubsystemShape shape_;
};

// ---------------------------------------------------------------------------
// kron / partial trace / partial transpose

/// Tensor product a (x) b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

inline StateVector kron(const StateVector& a, const StateVector& b) {
  auto dims = a.shape().dims();
  dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
  return StateVector::normalized(kron(a.amplitudes(), b.amplitudes()),
                                 SubsystemShape(std::move(dims)));
}

inline DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  auto dims = a.shape().dims();
  dims.insert(dims.end(), b.shape().dims().begin(), b.shape().dims().end());
  return DensityMatrix(DensityMatrix::trusted_t{}, kron(a.matrix(), b.matrix()),
                       SubsystemShape(std::move(dims)));
}

namespace detail {

/// Splits the factors of `shape` into kept and traced sets and returns, for
/// every multi-index of each set, its contribution to the full linear index.
struct IndexSplit {
  std::vector<std::size_t> kept_offsets;
  std::vector<std::size_t> traced_offsets;
  std::vector<std::size_t> kept_dims;
};

inline std::vector<std::size_t> offsets_for(const SubsystemShape& shape,
                                            const std::vector<std::size_t>& factors) {
  const auto strides = shape.strides();
  std::vector<std::size_t> offsets{0};
  for (auto f : factors) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * shape.dim(f));
    for (auto base : offsets) {
      for (std::size_t i = 0; i < shape.dim(f); ++i) next.push_back(base + i * strides[f]);
    }
    offsets = std::move(next);
  }
  return offsets;
}

inline IndexSplit split_indices(const SubsystemShape& shape, std::vector<std::size_t> keep) {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (auto k : keep) {
    if (k >= shape.parties()) {
      throw std::out_of_range("partial_trace: subsystem index " + std::to_string(k) +
                              " out of range");
    }
  }
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < shape.parties(); ++i) {
    if (!std::binary_search(keep.begin(), keep.end(), i)) traced.push_back(i);
  }
  IndexSplit split;
  split.kept_offsets = offsets_for(shape, keep);
  split.traced_offsets = offsets_for(shape, traced);
  for (auto k : keep) split.kept_dims.push_back(shape.dim(k));
  return split;
}

}  // namespace detail

/// Partial trace of an arbitrary square operator: keeps the listed factors
/// (in ascending order) and traces out the rest.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                                   const std::vector<std::size_t>& keep) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != shape.total()) {
    throw std::invalid_argument("partial_trace: shape does not match operator");
  }
  const auto split = detail::split_indices(shape, keep);
  const auto n = static_cast<Eigen::Index>(split.kept_offsets.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      Complex acc{0.0, 0.0};
      for (auto t : split.traced_offsets) {
        acc += m(static_cast<Eigen::Index>(split.kept_offsets[r] + t),
                 static_cast<Eigen::Index>(split.kept_offsets[c] + t));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   const std::vector<std::size_t>& keep) {
  auto m = partial_trace(rho.matrix(), rho.shape(), keep);
  auto split = detail::split_indices(rho.shape(), keep);
  return DensityMatrix(DensityMatrix::trusted_t{}, std::move(m),
                       SubsystemShape(std::move(split.kept_dims)));
}

/// Reduced state of a pure state on the kept factors, computed as M M^dagger
/// where M is the (kept x traced) reshaping of the amplitudes.
inline DensityMatrix reduced_state(const StateVector& psi,
                                   const std::vector<std::size_t>& keep) {
  auto split = detail::split_indices(psi.shape(), keep);
  const auto rows = static_cast<Eigen::Index>(split.kept_offsets.size());
  const auto cols = static_cast<Eigen::Index>(split.traced_offsets.size());
  ComplexMatrix mat(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      mat(r, c) = psi[split.kept_offsets[r] + split.traced_offsets[c]];
    }
  }
  ComplexMatrix rho = mat * mat.adjoint();
  // Hermitize exactly; the product is Hermitian only up to roundoff.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityMatrix(DensityMatrix::trusted_t{}, std::move(rho),
                       SubsystemShape(std::move(split.kept_dims)));
}

/// Partial transpose of a bipartite operator on factor `part` (0 = A, 1 = B).
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemShape& shape,
                                       std::size_t part) {
  if (!shape.is_bipartite()) {
    throw std::invalid_argument("partial_transpose: shape is not bipartite");
  }
  if (part > 1) throw std::out_of_range("partial_transpose: part must be 0 or 1");
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != shape.total()) {
    throw std::invalid_argument("partial_transpose: shape does not match operator");
  }
  const auto da = static_cast<Eigen::Index>(shape.dim(0));
  const auto db = static_cast<Eigen::Index>(shape.dim(1));
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < db; ++j) {
      for (Eigen::Index k = 0; k < da; ++k) {
        for (Eigen::Index l = 0; l < db; ++l) {
          const auto src = part == 0 ? m(k * db + j, i * db + l) : m(i * db + l, k * db + j);
          out(i * db + j, k * db + l) = src;
        }
      }
    }
  }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t part) {
  return partial_transpose(rho.matrix(), rho.shape(), part);
}

// ---------------------------------------------------------------------------
// Permutations

/// A bijection on {0, ..., T-1}; image()[t] is sigma(t). Composition follows
/// function composition: (sigma * tau)(t) = sigma(tau(t)).
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (auto v : image_) {
      if (v >= image_.size() || seen[v]) {
        throw std::invalid_argument("Permutation: image is not a bijection");
      }
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t size) {
    std::vector<std::size_t> img(size);
    std::iota(img.begin(), img.end(), std::size_t{0});
    return Permutation(std::move(img));
  }

  static Permutation transposition(std::size_t size, std::size_t a, std::size_t b) {
    auto p = identity(size);
    if (a >= size || b >= size) throw std::out_of_range("transposition: index out of range");
    std::swap(p.image_[a], p.image_[b]);
    return p;
  }

  /// Every element of S_T in lexicographic order of images.
  static std::vector<Permutation> all(std::size_t size) {
    std::vector<Permutation> out;
    auto img = identity(size).image_;
    do {
      out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
  }

  [[nodiscard]] std::size_t size() const { return image_.size(); }
  [[nodiscard]] std::size_t operator()(std::size_t t) const { return image_.at(t); }
  [[nodiscard]] const std::vector<std::size_t>& image() const { return image_; }

  [[nodiscard]] Permutation inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t t = 0; t < image_.size(); ++t) inv[image_[t]] = t;
    return Permutation(std::move(inv));
  }

  [[nodiscard]] std::size_t cycle_count() const {
    std::vector<bool> seen(image_.size(), false);
    std::size_t cycles = 0;
    for (std::size_t t = 0; t < image_.size(); ++t) {
      if (seen[t]) continue;
      ++cycles;
      for (auto u = t; !seen[u]; u = image_[u]) seen[u] = true;
    }
    return cycles;
  }

  friend Permutation operator*(const Permutation& sigma, const Permutation& tau) {
    if (sigma.size() != tau.size()) {
      throw std::invalid_argument("Permutation: size mismatch in composition");
    }
    std::vector<std::size_t> img(tau.size());
    for (std::size_t t = 0; t < tau.size(); ++t) img[t] = sigma.image_[tau.image_[t]];
    return Permutation(std::move(img));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

/// Basis index of the state obtained by moving tensor factor s of the basis
/// state `index` (over `dims`) to position perm(s). The output factor
/// dimensions are dims permuted accordingly.
inline std::size_t permute_basis_index(std::size_t index, const std::vector<std::size_t>& dims,
                                       const Permutation& perm) {
  const auto n = dims.size();
  std::vector<std::size_t> digits(n);
  for (std::size_t s = n; s-- > 0;) {
    digits[s] = index % dims[s];
    index /= dims[s];
  }
  std::vector<std::size_t> out_digits(n), out_dims(n);
  for (std::size_t s = 0; s < n; ++s) {
    out_digits[perm(s)] = digits[s];
    out_dims[perm(s)] = dims[s];
  }
  std::size_t out = 0;
  for (std::size_t t = 0; t < n; ++t) out = out * out_dims[t] + out_digits[t];
  return out;
}

/// Moves tensor factor s of `v` (factor dimensions `dims`) to position perm(s).
inline ComplexVector permute_factors(const ComplexVector& v, const std::vector<std::size_t>& dims,
                                     const Permutation& perm) {
  if (perm.size() != dims.size()) {
    throw std::invalid_argument("permute_factors: permutation size differs from factor count");
  }
  ComplexVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(permute_basis_index(static_cast<std::size_t>(i), dims, perm))) =
        v(i);
  }
  return out;
}

/// W_sigma on (C^d)^{(x)T}: W|i_1..i_T> = |i_{sigma^-1(1)} .. i_{sigma^-1(T)}>,
/// i.e. the factor in slot s is carried to slot sigma(s). Throws
/// std::length_error when d^T exceeds `max_dim`.
inline ComplexMatrix permutation_operator(const Permutation& sigma, std::size_t d_local,
                                          std::size_t max_dim = kDefaultOperatorDimCap) {
  const auto n = checked_pow(d_local, sigma.size(), max_dim);
  if (!n) throw std::length_error("permutation_operator: d^T exceeds the dimension cap");
  const std::vector<std::size_t> dims(sigma.size(), d_local);
  const auto N = static_cast<Eigen::Index>(*n);
  ComplexMatrix w = ComplexMatrix::Zero(N, N);
  for (std::size_t col = 0; col < *n; ++col) {
    w(static_cast<Eigen::Index>(permute_basis_index(col, dims, sigma)),
      static_cast<Eigen::Index>(col)) = 1.0;
  }
  return w;
}

/// Sum of W_sigma over all of S_T.
inline ComplexMatrix symmetrizer_sum(std::size_t copies, std::size_t d_local,
                                     std::size_t max_dim = kDefaultOperatorDimCap) {
  const auto n = checked_pow(d_local, copies, max_dim);
  if (!n) throw std::length_error("symmetrizer_sum: d^T exceeds the dimension cap");
  const std::vector<std::size_t> dims(copies, d_local);
  const auto N = static_cast<Eigen::Index>(*n);
  ComplexMatrix acc = ComplexMatrix::Zero(N, N);
  for (const auto& sigma : Permutation::all(copies)) {
    for (std::size_t col = 0; col < *n; ++col) {
      acc(static_cast<Eigen::Index>(permute_basis_index(col, dims, sigma)),
          static_cast<Eigen::Index>(col)) += 1.0;
    }
  }
  return acc;
}

/// SWAP on C^d (x) C^d: S|ij> = |ji>.
inline ComplexMatrix swap_operator(std::size_t d_local) {
  return permutation_operator(Permutation::transposition(2, 0, 1), d_local);
}

// ---------------------------------------------------------------------------
// Unravelling

/// Relabeling V_T^{(K)} : H_1^{(x)T} (x) ... (x) H_K^{(x)T} -> (H_1 (x) ... (x) H_K)^{(x)T}.
///
/// Input factor slot k*T + t (party k, copy t) is carried to output slot
/// t*K + k.
class Unravelling {
 public:
  Unravelling(std::size_t copies, SubsystemShape parties)
      : copies_(copies), parties_(std::move(parties)), map_(Permutation::identity(0)) {
    if (copies == 0) throw std::invalid_argument("Unravelling: need at least one copy");
    const auto K = parties_.parties();
    std::vector<std::size_t> img(K * copies_);
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t t = 0; t < copies_; ++t) {
        img[k * copies_ + t] = t * K + k;
        input_dims_.push_back(parties_.dim(k));
      }
    }
    map_ = Permutation(std::move(img));
    for (std::size_t t = 0; t < copies_; ++t) {
      for (std::size_t k = 0; k < K; ++k) output_dims_.push_back(parties_.dim(k));
    }
  }

  [[nodiscard]] const Permutation& factor_map() const { return map_; }
  [[nodiscard]] const std::vector<std::size_t>& input_dims() const { return input_dims_; }
  [[nodiscard]] const std::vector<std::size_t>& output_dims() const { return output_dims_; }
  [[nodiscard]] std::size_t copies() const { return copies_; }

  /// V_T x.
  [[nodiscard]] ComplexVector apply(const ComplexVector& x) const {
    return permute_factors(x, input_dims_, map_);
  }
  /// V_T^dagger y.
  [[nodiscard]] ComplexVector apply_inverse(const ComplexVector& y) const {
    return permute_factors(y, output_dims_, map_.inverse());
  }

 private:
  std::size_t copies_;
  SubsystemShape parties_;
  Permutation map_;
  std::vector<std::size_t> input_dims_;
  std::vector<std::size_t> output_dims_;
};

inline Unravelling unravel(std::size_t copies, const SubsystemShape& parties) {
  return Unravelling(copies, parties);
}

}  // namespace edplab
