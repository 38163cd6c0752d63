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

#include <numbers>

#include "skewcorr/error.hpp"
#include "skewcorr/linalg.hpp"
#include "skewcorr/states.hpp"
#include "test_support.hpp"

using namespace skewcorr;
using skewcorr::testing::random_hermitian;
using skewcorr::testing::random_psd;

namespace {

template <std::size_t N>
double orthonormality_residual(const Matrix<N>& v) {
  return max_abs_diff(v.adjoint() * v, Matrix<N>::identity());
}

template <std::size_t N>
Matrix<N> reconstruct(const Spectrum<N>& s) {
  std::array<double, N> d = s.values;
  return s.vectors * Matrix<N>::diagonal(d) * s.vectors.adjoint();
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("eig of identity and diagonal matrices") {
    const auto id = hermitian_eig(Mat4::identity());
    for (double v : id.values) CHECK_CLOSE(v, 1.0, 1e-15);
    CHECK(orthonormality_residual(id.vectors) <= 1e-12);

    const auto d = hermitian_eig(Mat4::diagonal({0.3, 0.1, 0.4, 0.2}));
    CHECK(d.values == std::array<double, 4>{0.1, 0.2, 0.3, 0.4});
    // Columns are a permutation of the identity columns.
    const std::array<std::size_t, 4> expected_row = {1, 3, 0, 2};
    for (std::size_t k = 0; k < 4; ++k) CHECK(d.vectors(expected_row[k], k) == cplx(1.0));
  }

  TEST_CASE("eig reconstructs random Hermitian matrices") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
      const Mat4 h = random_hermitian<4>(gen);
      const auto s = hermitian_eig(h);
      CHECK(orthonormality_residual(s.vectors) <= 1e-10);
      CHECK(max_abs_diff(reconstruct(s), h) <= 1e-10);
      CHECK(std::is_sorted(s.values.begin(), s.values.end()));
      double sum = 0.0;
      for (double v : s.values) sum += v;
      CHECK_CLOSE(sum, h.trace().real(), 1e-10);
      // Phase convention: the largest component of each vector is real positive.
      for (std::size_t k = 0; k < 4; ++k) {
        std::size_t big = 0;
        for (std::size_t r = 1; r < 4; ++r)
          if (std::abs(s.vectors(r, k)) > std::abs(s.vectors(big, k))) big = r;
        CHECK(s.vectors(big, k).imag() == 0.0);
        CHECK(s.vectors(big, k).real() > 0.0);
      }
    }
    const Mat2 h2 = random_hermitian<2>(gen);
    CHECK(max_abs_diff(reconstruct(hermitian_eig(h2)), h2) <= 1e-12);
  }

  TEST_CASE("eig is deterministic") {
    std::mt19937_64 gen(5);
    const Mat4 h = random_hermitian<4>(gen);
    const auto a = hermitian_eig(h);
    const auto b = hermitian_eig(h);
    CHECK(a.values == b.values);
    CHECK(a.vectors == b.vectors);
  }

  TEST_CASE("eig rejects non-Hermitian input") {
    Mat4 m = Mat4::identity();
    m(0, 1) = 1e-6;
    try {
      hermitian_eig(m);
      FAIL("expected NonHermitian");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonHermitian);
    }
  }

  TEST_CASE("psd_sqrt basic cases") {
    CHECK(max_abs_diff(psd_sqrt(0.25 * Mat4::identity()), 0.5 * Mat4::identity()) <= 1e-15);

    // Projector onto a pure state is its own root.
    const Mat4 bell = bell_phi_plus().matrix();
    CHECK(max_abs_diff(psd_sqrt(bell), bell) <= 1e-12);

    // Werner x = 1 has spectrum {1/3, 1/3, 1/3, 0}; its root has {1/sqrt3 x3, 0}.
    const Mat4 w = werner(1.0).matrix();
    const Mat4 s = psd_sqrt(w);
    CHECK(max_abs_diff(s * s, w) <= 1e-9);
    const auto spec = hermitian_eig(s);
    CHECK_CLOSE(spec.values[0], 0.0, 1e-12);
    for (std::size_t k = 1; k < 4; ++k) CHECK_CLOSE(spec.values[k], 1.0 / std::sqrt(3.0), 1e-12);
  }

  TEST_CASE("psd_sqrt of random PSD matrices") {
    std::mt19937_64 gen(21);
    for (int trial = 0; trial < 100; ++trial) {
      Mat4 p = random_psd<4>(gen);
      p = p * (1.0 / p.trace().real());
      const Mat4 s = psd_sqrt(p);
      CHECK(max_abs_diff(s * s, p) <= 1e-9);
      CHECK(hermiticity_residual(s) == 0.0);
      CHECK(hermitian_eig(s).values[0] >= -1e-12);
    }
  }

  TEST_CASE("psd_sqrt clamps noise and rejects negative spectra") {
    const Mat4 slightly = Mat4::diagonal({0.5, 0.5, -5e-11, 0.0});
    const Mat4 s = psd_sqrt(slightly);
    CHECK(s(2, 2) == cplx(0.0));
    try {
      psd_sqrt(Mat4::diagonal({0.5, 0.6, -0.05, -0.05}));
      FAIL("expected NotPSD");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotPSD);
    }
  }

  TEST_CASE("psd_sqrt of rotated rank-one projectors") {
    // Rounding leaves O(1e-17) eigenvalues whose roots would be O(1e-9).
    std::mt19937_64 gen(31);
    for (int i = 0; i < 100; ++i) {
      Vec<4> v;
      for (auto& c : v) c = testing::random_complex(gen);
      double n = 0.0;
      for (const auto& c : v) n += std::norm(c);
      Mat4 p;
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) p(r, c) = v[r] * std::conj(v[c]) / n;
      const Mat4 s = psd_sqrt(p);
      CHECK_CLOSE(s.trace().real(), 1.0, 1e-14);
      CHECK(max_abs_diff(s, p) <= 1e-14);
    }
    const Mat2 tiny = psd_sqrt(Mat2::diagonal({1.0, 1e-12}));
    CHECK_CLOSE(tiny(1, 1).real(), 1e-6, 1e-18);
  }

  TEST_CASE("kron textbook identities") {
    const auto& p = paulis();
    CHECK(kron(p[P0], p[P0]) == Mat4::identity());
    CHECK(kron(p[PZ], p[PZ]) == Mat4::diagonal({1.0, -1.0, -1.0, 1.0}));
    const Mat4 xx = kron(p[PX], p[PX]);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) CHECK(xx(r, c) == cplx(r + c == 3 ? 1.0 : 0.0));
  }

  TEST_CASE("partial trace") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 100; ++trial) {
      const Mat2 a = random_hermitian<2>(gen);
      const Mat2 b = random_hermitian<2>(gen);
      const Mat4 ab = kron(a, b);
      CHECK(max_abs_diff(partial_trace(ab, Subsystem::A), a * b.trace()) <= 1e-12);
      CHECK(max_abs_diff(partial_trace(ab, Subsystem::B), b * a.trace()) <= 1e-12);
    }
    CHECK(max_abs_diff(partial_trace(bell_phi_plus().matrix(), Subsystem::A), 0.5 * Mat2::identity()) == 0.0);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DensityMatrix rho = gen_random(RandomKind::General, seed);
      CHECK_CLOSE(partial_trace(rho.matrix(), Subsystem::A).trace().real(), 1.0, 1e-12);
      CHECK_CLOSE(partial_trace(rho.matrix(), Subsystem::B).trace().real(), 1.0, 1e-12);
    }
  }

  TEST_CASE("pauli coefficients") {
    const auto half = pauli_coeffs(0.5 * Mat4::identity());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(half.a[i][j] == ((i == 0 && j == 0) ? 2.0 : 0.0));

    // Bell state: reference values from full-product traces.
    const Mat4 bell = bell_phi_plus().matrix();
    const auto a = pauli_coeffs(bell);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK_CLOSE(a.a[i][j], testing::pauli_trace(bell, i, j), 1e-15);
    CHECK(a(PX, PX) == 1.0);
    CHECK(a(PY, PY) == -1.0);
    CHECK(a(PZ, PZ) == 1.0);
    CHECK(a(P0, PZ) == 0.0);
    CHECK(a(PZ, P0) == 0.0);

    const auto z0 = pauli_coeffs(kron(paulis()[PZ], paulis()[P0]));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(z0.a[i][j] == ((i == PZ && j == P0) ? 4.0 : 0.0));
  }

  TEST_CASE("pauli coefficients are linear and real") {
    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 50; ++trial) {
      const Mat4 m1 = random_hermitian<4>(gen);
      const Mat4 m2 = random_hermitian<4>(gen);
      const double alpha = 0.7, beta = -1.3;
      const auto c1 = pauli_coeffs(m1);
      const auto c2 = pauli_coeffs(m2);
      const auto c = pauli_coeffs(alpha * m1 + beta * m2);
      CHECK_CLOSE(c1.a[0][0], m1.trace().real(), 1e-12);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          CHECK_CLOSE(c.a[i][j], alpha * c1.a[i][j] + beta * c2.a[i][j], 1e-12);
          CHECK_CLOSE(c1.a[i][j], testing::pauli_trace(m1, i, j), 1e-12);
        }
    }
    Mat4 bad;
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(pauli_coeffs(bad), Error);
  }
}
