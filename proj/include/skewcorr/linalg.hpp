// Copyright 2026 The skewcorr Authors.
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

/**
 * @file linalg.hpp
 * Fixed-size dense complex matrices for one- and two-qubit operators.
 *
 * Basis ordering is |00>, |01>, |10>, |11> with subsystem A as the slow
 * index everywhere in the library.
 */
#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>

namespace skewcorr {

using cplx = std::complex<double>;

template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t size = N;

  constexpr Matrix() : data_{} {}

  /// Row-major initializer; missing trailing entries are zero.
  Matrix(std::initializer_list<cplx> rowMajor) : data_{} {
    std::size_t k = 0;
    for (const auto& v : rowMajor) {
      if (k == N * N) break;
      data_[k++] = v;
    }
  }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  const std::array<cplx, N * N>& data() const { return data_; }

  Matrix adjoint() const {
    Matrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
  friend Matrix operator*(Matrix a, double s) { return a *= cplx(s); }
  friend Matrix operator*(double s, Matrix a) { return a *= cplx(s); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx ark = a(r, k);
        for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
      }
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.data_ == b.data_; }

 private:
  std::array<cplx, N * N> data_;
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

template <std::size_t N>
using Vec = std::array<cplx, N>;

/// Largest entrywise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < N * N; ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

/// Largest |H_ij - conj(H_ji)|.
template <std::size_t N>
double hermiticity_residual(const Matrix<N>& h) {
  double m = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = r; c < N; ++c) m = std::max(m, std::abs(h(r, c) - std::conj(h(c, r))));
  return m;
}

/// <v| M |v>
template <std::size_t N>
cplx expectation(const Matrix<N>& m, const Vec<N>& v) {
  cplx acc = 0.0;
  for (std::size_t r = 0; r < N; ++r) {
    cplx row = 0.0;
    for (std::size_t c = 0; c < N; ++c) row += m(r, c) * v[c];
    acc += std::conj(v[r]) * row;
  }
  return acc;
}

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdClampTol = 1e-10;
inline constexpr double kPsdRankFloor = 64.0 * std::numeric_limits<double>::epsilon();

/// Eigenpairs of a Hermitian matrix. Eigenvalues ascend; column k of
/// `vectors` belongs to `values[k]` and has its largest-magnitude component
/// real and positive.
template <std::size_t N>
struct Spectrum {
  std::array<double, N> values{};
  Matrix<N> vectors;

  Vec<N> vector(std::size_t k) const {
    Vec<N> v;
    for (std::size_t r = 0; r < N; ++r) v[r] = vectors(r, k);
    return v;
  }
};

/// Cyclic complex Jacobi. Throws NonHermitian or NoConvergence.
template <std::size_t N>
Spectrum<N> hermitian_eig(const Matrix<N>& h);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything lower throws NotPSD.
/// Eigenvalues within the solver's rounding floor, kPsdRankFloor times the
/// spectral radius, are also treated as zero.
template <std::size_t N>
Matrix<N> psd_sqrt(const Matrix<N>& h);

Mat4 kron(const Mat2& a, const Mat2& b);

enum class Subsystem { A, B };

/// Reduced operator on `keep`, tracing out the other qubit.
Mat2 partial_trace(const Mat4& m, Subsystem keep);

/// Single-qubit Pauli matrices indexed 0, x, y, z.
const std::array<Mat2, 4>& paulis();

enum Pauli : std::size_t { P0 = 0, PX = 1, PY = 2, PZ = 3 };

/// a[i][j] = Tr{(sigma_i (x) sigma_j) M} for a Hermitian M.
struct PauliCoefficients {
  std::array<std::array<double, 4>, 4> a{};

  double operator()(Pauli i, Pauli j) const { return a[i][j]; }
};

PauliCoefficients pauli_coeffs(const Mat4& m);

}  // namespace skewcorr
