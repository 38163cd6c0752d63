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

#include "skewcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "skewcorr/error.hpp"

namespace skewcorr {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTarget = 1e-12;

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

template <std::size_t N>
double frobenius(const Matrix<N>& a) {
  double s = 0.0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary J = diag(1, e^{-i alpha}) R(c, s) acting on
// the (p,q) plane, where a(p,q) = |a(p,q)| e^{i alpha}.
template <std::size_t N>
void rotate(Matrix<N>& a, Matrix<N>& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double b = std::abs(apq);
  if (b == 0.0) return;
  const cplx phase = apq / b;
  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * b);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // Columns p and q of J.
  const cplx jpp = c;
  const cplx jqp = -s * std::conj(phase);
  const cplx jpq = s;
  const cplx jqq = c * std::conj(phase);

  // a <- a J
  for (std::size_t r = 0; r < N; ++r) {
    const cplx arp = a(r, p);
    const cplx arq = a(r, q);
    a(r, p) = arp * jpp + arq * jqp;
    a(r, q) = arp * jpq + arq * jqq;
  }
  // a <- J^dagger a
  for (std::size_t col = 0; col < N; ++col) {
    const cplx apc = a(p, col);
    const cplx aqc = a(q, col);
    a(p, col) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
    a(q, col) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t r = 0; r < N; ++r) {
    const cplx vrp = v(r, p);
    const cplx vrq = v(r, q);
    v(r, p) = vrp * jpp + vrq * jqp;
    v(r, q) = vrp * jpq + vrq * jqq;
  }
}

}  // namespace

template <std::size_t N>
Spectrum<N> hermitian_eig(const Matrix<N>& h) {
  const double herm = hermiticity_residual(h);
  if (!(herm <= kHermitianTol)) {
    std::ostringstream os;
    os << "matrix is not Hermitian (residual " << herm << ")";
    throw Error(ErrorCode::NonHermitian, os.str());
  }

  Matrix<N> a = h;
  Matrix<N> v = Matrix<N>::identity();
  const double target = kOffDiagonalTarget * std::max(1.0, frobenius(h));

  int sweep = 0;
  while (off_diagonal_norm(a) > target) {
    if (++sweep > kMaxSweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi iteration exceeded sweep budget");
    }
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) rotate(a, v, p, q);
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  Spectrum<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();
    std::size_t big = 0;
    for (std::size_t r = 1; r < N; ++r)
      if (std::abs(v(r, src)) > std::abs(v(big, src)) * (1.0 + 1e-12)) big = r;
    const cplx fix = std::conj(v(big, src)) / std::abs(v(big, src));
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, k) = v(r, src) * fix;
    out.vectors(big, k) = std::abs(v(big, src));
  }
  return out;
}

template <std::size_t N>
Matrix<N> psd_sqrt(const Matrix<N>& h) {
  const Spectrum<N> spec = hermitian_eig(h);
  const double floor =
      kPsdRankFloor * std::max(std::abs(spec.values.front()), std::abs(spec.values.back()));
  Matrix<N> s;
  for (std::size_t k = 0; k < N; ++k) {
    const double lambda = spec.values[k];
    if (lambda < -kPsdClampTol) {
      std::ostringstream os;
      os << "eigenvalue " << lambda << " below -" << kPsdClampTol;
      throw Error(ErrorCode::NotPSD, os.str());
    }
    const double root = lambda > floor ? std::sqrt(lambda) : 0.0;
    if (root == 0.0) continue;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c)
        s(r, c) += root * spec.vectors(r, k) * std::conj(spec.vectors(c, k));
  }
  // Symmetrize away rounding so downstream Hermiticity checks see exact symmetry.
  return 0.5 * (s + s.adjoint());
}

template Spectrum<2> hermitian_eig<2>(const Mat2&);
template Spectrum<4> hermitian_eig<4>(const Mat4&);
template Mat2 psd_sqrt<2>(const Mat2&);
template Mat4 psd_sqrt<4>(const Mat4&);

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

Mat2 partial_trace(const Mat4& m, Subsystem keep) {
  Mat2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        if (keep == Subsystem::A) {
          out(i, j) += m(2 * i + k, 2 * j + k);
        } else {
          out(i, j) += m(2 * k + i, 2 * k + j);
        }
      }
  return out;
}

const std::array<Mat2, 4>& paulis() {
  static const std::array<Mat2, 4> p = {
      Mat2{1.0, 0.0, 0.0, 1.0},
      Mat2{0.0, 1.0, 1.0, 0.0},
      Mat2{0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0},
      Mat2{1.0, 0.0, 0.0, -1.0},
  };
  return p;
}

PauliCoefficients pauli_coeffs(const Mat4& m) {
  const double herm = hermiticity_residual(m);
  if (!(herm <= kHermitianTol)) {
    std::ostringstream os;
    os << "Pauli expansion needs a Hermitian matrix (residual " << herm << ")";
    throw Error(ErrorCode::NonHermitian, os.str());
  }
  PauliCoefficients out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      // Tr(P M) = sum_{rc} P(r,c) M(c,r); P is a permutation-times-phase matrix.
      const Mat4 p = kron(paulis()[i], paulis()[j]);
      cplx t = 0.0;
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
          if (p(r, c) != 0.0) t += p(r, c) * m(c, r);
      if (std::abs(t.imag()) > kHermitianTol) {
        throw Error(ErrorCode::NonHermitian, "imaginary Pauli coefficient residue");
      }
      out.a[i][j] = t.real();
    }
  return out;
}

}  // namespace skewcorr
