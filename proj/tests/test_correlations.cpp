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

#include "skewcorr/correlations.hpp"
#include "skewcorr/error.hpp"
#include "test_support.hpp"

using namespace skewcorr;
using namespace skewcorr::testing;

namespace {

const double kPi = std::numbers::pi;

DensityMatrix pure_state(const Vec<4>& v) {
  double norm = 0.0;
  for (const auto& c : v) norm += std::norm(c);
  Mat4 m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = v[r] * std::conj(v[c]) / norm;
  return validate(0.5 * (m + m.adjoint()));
}

double trace_sqrt(const DensityMatrix& rho) {
  double s = 0.0;
  for (const double l : hermitian_eig(rho.matrix()).values) s += std::sqrt(std::max(l, 0.0));
  return s;
}

Mat4 diag_phases(double a, double b) {
  return kron(Mat2{1.0, 0.0, 0.0, std::polar(1.0, a)}, Mat2{1.0, 0.0, 0.0, std::polar(1.0, b)});
}

double balance_residual(const Mat2& u, const Mat2& m) {
  const Mat2 t = u * m * u.adjoint();
  return std::abs(t(0, 0) - t(1, 1));
}

}  // namespace

TEST_SUITE("correlations") {
  TEST_CASE("measurement bases") {
    std::mt19937_64 gen(7);
    for (int i = 0; i < 50; ++i) {
      const MeasurementBases b = random_bases(gen);
      for (const auto side : {Subsystem::A, Subsystem::B}) {
        const Mat2 u = b.local_unitary(side);
        CHECK(max_abs_diff(u.adjoint() * u, Mat2::identity()) <= 1e-12);
        const Vec<2> v0 = b.basis_vector(side, 0), v1 = b.basis_vector(side, 1);
        CHECK_CLOSE(std::abs(std::conj(v0[0]) * v0[0] + std::conj(v0[1]) * v0[1]), 1.0, 1e-12);
        CHECK(std::abs(std::conj(v0[0]) * v1[0] + std::conj(v0[1]) * v1[1]) <= 1e-12);
      }
      Mat4 sum;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t c = 0; c < 2; ++c) sum = sum + b.projector(a, c);
      CHECK(max_abs_diff(sum, Mat4::identity()) <= 1e-12);
    }
  }

  TEST_CASE("angles_from_vector recovers the basis") {
    std::mt19937_64 gen(8);
    for (int i = 0; i < 50; ++i) {
      const MeasurementBases b = random_bases(gen);
      const Vec<2> v = b.basis_vector(Subsystem::A, 0);
      const auto [theta, phi] = angles_from_vector(v);
      const MeasurementBases r{theta, phi, 0.0, 0.0};
      const Vec<2> w = r.basis_vector(Subsystem::A, 0);
      CHECK_CLOSE(std::abs(std::conj(v[0]) * w[0] + std::conj(v[1]) * w[1]), 1.0, 1e-12);
    }
  }

  TEST_CASE("skew information examples") {
    std::mt19937_64 gen(9);
    const SkewInformation mixed = skew_information(maximally_mixed(), random_bases(gen));
    for (const double t : mixed.terms) CHECK(std::abs(t) <= 1e-15);
    CHECK(std::abs(mixed.total) <= 1e-15);

    const DensityMatrix zero = validate(Mat4::diagonal({1.0, 0.0, 0.0, 0.0}));
    const SkewInformation z = skew_information(zero, MeasurementBases{});
    for (const double t : z.terms) CHECK(t == 0.0);

    const SkewInformation bell = skew_information(bell_phi_plus(), MeasurementBases{});
    CHECK_CLOSE(bell.terms[0], 0.25, 1e-14);
    CHECK_CLOSE(bell.terms[1], 0.0, 1e-14);
    CHECK_CLOSE(bell.terms[2], 0.0, 1e-14);
    CHECK_CLOSE(bell.terms[3], 0.25, 1e-14);
    CHECK_CLOSE(bell.total, 0.5, 1e-14);
  }

  TEST_CASE("skew terms match the commutator form") {
    std::mt19937_64 gen(10);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DensityMatrix rho = gen_random(RandomKind::General, seed);
      const Mat4 s = psd_sqrt(rho.matrix());
      const MeasurementBases b = random_bases(gen);
      const SkewInformation si = skew_information(rho, b);
      double total = 0.0;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t c = 0; c < 2; ++c) {
          const double ref = skew_commutator(s, b.projector(a, c));
          CHECK_CLOSE(si.terms[2 * a + c], ref, 1e-12);
          CHECK(si.terms[2 * a + c] >= 0.0);
          total += ref;
        }
      CHECK_CLOSE(si.total, total, 1e-12);
    }
  }

  TEST_CASE("smin examples") {
    const auto mixed = smin_analytic(maximally_mixed());
    CHECK(mixed.value == 0.0);
    CHECK(mixed.branch == branch::kSminBothDegenerate);

    const auto bell = smin_analytic(bell_phi_plus());
    CHECK_CLOSE(bell.value, 0.75, 1e-12);
    CHECK(bell.branch == branch::kSminBothDegenerate);

    const auto diag = smin_analytic(validate(Mat4::diagonal({0.4, 0.3, 0.2, 0.1})));
    CHECK_CLOSE(diag.value, 0.0, 1e-15);
    CHECK(diag.branch == branch::kSminNondegenerate);

    const auto w = smin_analytic(werner(1.0));
    CHECK_CLOSE(w.value, 0.25, 1e-12);
    CHECK(w.method == Method::Analytic);
    CHECK(w.measure == Measure::SMIN);
  }

  TEST_CASE("smin both-degenerate branch uses the trace of the root") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const DensityMatrix rho =
          with_maximally_mixed_marginals(gen_random(RandomKind::General, seed), DegenerateSides::Both);
      const auto r = smin_analytic(rho);
      REQUIRE(r.branch == branch::kSminBothDegenerate);
      const double t = trace_sqrt(rho);
      CHECK_CLOSE(r.value, 1.0 - 0.25 * t * t, 1e-12);
    }
  }

  TEST_CASE("smin one-degenerate branch labels") {
    const DensityMatrix g = gen_random(RandomKind::General, 3);
    CHECK(smin_analytic(with_maximally_mixed_marginals(g, DegenerateSides::A)).branch == branch::kSminOneDegenerate);
    CHECK(smin_analytic(with_maximally_mixed_marginals(g, DegenerateSides::B)).branch == branch::kSminOneDegenerate);
  }

  TEST_CASE("smin nondegenerate branch matches the marginal eigenbases") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const DensityMatrix rho = gen_random(RandomKind::General, seed);
      const auto r = smin_analytic(rho);
      REQUIRE(r.branch == branch::kSminNondegenerate);
      // Sum the commutator form over projectors built from the marginal eigenvectors.
      const auto ea = hermitian_eig(rho.marginal(Subsystem::A));
      const auto eb = hermitian_eig(rho.marginal(Subsystem::B));
      const Mat4 s = psd_sqrt(rho.matrix());
      double ref = 0.0;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          const Vec<2> va = ea.vector(a), vb = eb.vector(b);
          Mat2 pa, pb;
          for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
              pa(i, j) = va[i] * std::conj(va[j]);
              pb(i, j) = vb[i] * std::conj(vb[j]);
            }
          ref += skew_commutator(s, kron(pa, pb));
        }
      CHECK_CLOSE(r.value, ref, 1e-12);
    }
  }

  TEST_CASE("smin hysteresis flags near-degenerate marginals") {
    const DensityMatrix a = validate(Mat4::diagonal({0.25 + 5e-9, 0.25 + 5e-9, 0.25 - 5e-9, 0.25 - 5e-9}));
    const auto r = smin_analytic(a, 1e-9);
    CHECK(r.near_degenerate);
    CHECK_FALSE(smin_analytic(bell_phi_plus()).near_degenerate);
  }

  TEST_CASE("sqd x-state examples") {
    CHECK_CLOSE(sqd_x_analytic(werner(0.5)).value, 0.0, 1e-15);
    CHECK_CLOSE(sqd_x_analytic(werner(1.0)).value, 1.0 / 6.0, 1e-12);
    const auto bell = sqd_x_analytic(bell_phi_plus());
    CHECK_CLOSE(bell.value, 0.5, 1e-12);
    CHECK(bell.branch == branch::kSqdX);
    CHECK_THROWS_AS(sqd_x_analytic(example1_g()), Error);
    try {
      sqd_x_analytic(example4_m());
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotXType);
    }
  }

  TEST_CASE("sqd x-state on the werner family matches the closed form") {
    for (int i = 0; i <= 100; ++i) {
      const double x = std::clamp(-1.0 + 0.02 * i, -1.0, 1.0);
      CHECK_CLOSE(sqd_x_analytic(werner(x)).value, sqd_werner_closed_form(x), 1e-10);
    }
  }

  TEST_CASE("werner closed form") {
    CHECK_CLOSE(sqd_werner_closed_form(0.5), 0.0, 1e-16);
    CHECK_CLOSE(sqd_werner_closed_form(1.0), 1.0 / 6.0, 1e-16);
    CHECK_CLOSE(sqd_werner_closed_form(-1.0), 0.5, 1e-16);
    CHECK_THROWS_AS(sqd_werner_closed_form(1.01), Error);
  }

  TEST_CASE("sqd x-state is invariant under diagonal phases") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DensityMatrix rho = gen_random(RandomKind::XType, seed);
      const Mat4 u = diag_phases(ang(gen), ang(gen));
      const Mat4 m = u * rho.matrix() * u.adjoint();
      const DensityMatrix rotated = validate(0.5 * (m + m.adjoint()));
      CHECK_CLOSE(sqd_x_analytic(rotated).value, sqd_x_analytic(rho).value, 1e-10);
    }
  }

  TEST_CASE("sqd block examples") {
    const DensityMatrix prod = product_state(Mat2::diagonal({0.7, 0.3}), Mat2::diagonal({0.8, 0.2}));
    CHECK_CLOSE(sqd_block_analytic(prod).value, 0.0, 1e-12);

    const auto m = sqd_block_analytic(example4_m());
    CHECK(m.branch == branch::kSqdBlock);
    const auto s = sqd_block_analytic(swap_subsystems(example4_m()));
    CHECK(s.branch == branch::kSqdBlockSwapped);
    CHECK_CLOSE(s.value, m.value, 1e-12);

    try {
      sqd_block_analytic(example1_g());
      FAIL("expected NotBlockDiagonal");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotBlockDiagonal);
    }
  }

  TEST_CASE("sqd_analytic dispatch") {
    CHECK(sqd_analytic(werner(0.2))->branch == branch::kSqdX);
    CHECK(sqd_analytic(example4_m())->branch == branch::kSqdBlock);
    CHECK(sqd_analytic(swap_subsystems(example4_m()))->branch == branch::kSqdBlockSwapped);
    CHECK_FALSE(sqd_analytic(example1_g()).has_value());
  }

  TEST_CASE("diagonal states agree across the x and block forms") {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int i = 0; i < 100; ++i) {
      std::array<double, 4> p{u(gen), u(gen), u(gen), u(gen)};
      const double s = p[0] + p[1] + p[2] + p[3];
      const DensityMatrix d = validate(Mat4::diagonal({p[0] / s, p[1] / s, p[2] / s, p[3] / s}));
      CHECK_CLOSE(sqd_x_analytic(d).value, sqd_block_analytic(d).value, 1e-10);
    }
  }

  TEST_CASE("range and nonnegativity") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      for (const auto kind : {RandomKind::General, RandomKind::XType, RandomKind::BlockDiagonal}) {
        const DensityMatrix rho = gen_random(kind, seed);
        const double smin = smin_analytic(rho).value;
        CHECK(smin >= 0.0);
        CHECK(smin < 1.0);
        if (const auto d = sqd_analytic(rho)) {
          CHECK(d->value >= 0.0);
          CHECK(d->value < 1.0);
          CHECK(d->value <= smin + 1e-10);
        }
      }
    }
  }

  TEST_CASE("swap symmetry of the analytic measures") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      for (const auto kind : {RandomKind::General, RandomKind::XType, RandomKind::BlockDiagonal}) {
        const DensityMatrix rho = gen_random(kind, seed);
        const DensityMatrix sw = swap_subsystems(rho);
        CHECK_CLOSE(smin_analytic(rho).value, smin_analytic(sw).value, 1e-9);
        if (kind != RandomKind::General) CHECK_CLOSE(sqd_analytic(rho)->value, sqd_analytic(sw)->value, 1e-9);
      }
      const double x = -1.0 + 0.02 * static_cast<double>(seed);
      CHECK_CLOSE(sqd_x_analytic(werner(x)).value, sqd_x_analytic(swap_subsystems(werner(x))).value, 1e-9);
    }
  }

  TEST_CASE("local unitary invariance of smin") {
    std::mt19937_64 gen(13);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const DensityMatrix rho = gen_random(RandomKind::General, seed);
      const DensityMatrix rot = rotate_locally(rho, random_unitary(gen), random_unitary(gen));
      CHECK_CLOSE(smin_analytic(rot).value, smin_analytic(rho).value, 1e-9);
    }
  }

  TEST_CASE("classical states have zero smin") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      CHECK(std::abs(smin_analytic(gen_classical(seed)).value) <= 1e-10);
    }
  }

  TEST_CASE("pure states with degenerate marginals give 3/4") {
    std::mt19937_64 gen(14);
    for (int i = 0; i < 50; ++i) {
      const DensityMatrix rho = rotate_locally(bell_phi_plus(), random_unitary(gen), random_unitary(gen));
      const auto r = smin_analytic(rho);
      CHECK(r.branch == branch::kSminBothDegenerate);
      CHECK_CLOSE(r.value, 0.75, 1e-12);
    }
    const double h = std::sqrt(0.5);
    const auto singlet = smin_analytic(pure_state({0.0, h, -h, 0.0}));
    CHECK_CLOSE(singlet.value, 0.75, 1e-12);
  }

  TEST_CASE("balance examples") {
    const auto r = balance_diagonals(Mat2::diagonal({1.0, 0.0}), Mat2::diagonal({2.0, 1.0}));
    CHECK_CLOSE(r.theta, kPi / 4.0, 1e-15);
    CHECK(r.phi == 0.0);
    const Mat2 a = r.u * Mat2::diagonal({1.0, 0.0}) * r.u.adjoint();
    const Mat2 b = r.u * Mat2::diagonal({2.0, 1.0}) * r.u.adjoint();
    CHECK_CLOSE(a(0, 0).real(), 0.5, 1e-15);
    CHECK_CLOSE(a(1, 1).real(), 0.5, 1e-15);
    CHECK_CLOSE(b(0, 0).real(), 1.5, 1e-15);
    CHECK_CLOSE(b(1, 1).real(), 1.5, 1e-15);

    const Mat2 balanced_a{0.5, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.5};
    const Mat2 balanced_b{1.0, cplx(-0.3, 0.0), cplx(-0.3, 0.0), 1.0};
    const auto id = balance_diagonals(balanced_a, balanced_b);
    CHECK(id.theta == 0.0);
    CHECK(max_abs_diff(id.u, Mat2::identity()) <= 1e-15);
  }

  TEST_CASE("balance random hermitian pairs") {
    std::mt19937_64 gen(15);
    for (int i = 0; i < 100; ++i) {
      const Mat2 a = random_hermitian<2>(gen);
      const Mat2 b = random_hermitian<2>(gen);
      const auto r = balance_diagonals(a, b);
      CHECK(max_abs_diff(r.u.adjoint() * r.u, Mat2::identity()) <= 1e-12);
      CHECK(balance_residual(r.u, a) <= 1e-10);
      CHECK(balance_residual(r.u, b) <= 1e-10);
    }
  }

  TEST_CASE("balance degenerate inputs") {
    std::mt19937_64 gen(16);
    for (int i = 0; i < 20; ++i) {
      const Mat2 a = random_hermitian<2>(gen);
      const auto same = balance_diagonals(a, 2.0 * a);
      CHECK(balance_residual(same.u, a) <= 1e-10);
      const auto scalar = balance_diagonals(a, 3.0 * Mat2::identity());
      CHECK(balance_residual(scalar.u, a) <= 1e-10);
    }
    const auto zero = balance_diagonals(Mat2{}, Mat2{});
    CHECK(zero.theta == 0.0);
  }

  TEST_CASE("saturation witnesses") {
    const auto bell = smin_saturation_check(bell_phi_plus());
    CHECK(bell.gap <= 1e-9);
    CHECK_CLOSE(bell.achieved, 0.75, 1e-9);
    const auto mixed = smin_saturation_check(maximally_mixed());
    CHECK(mixed.gap <= 1e-15);

    try {
      smin_saturation_check(gen_random(RandomKind::General, 1));
      FAIL("expected BranchMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BranchMismatch);
    }
  }

  TEST_CASE("saturation on constructed degenerate states") {
    const std::array<DegenerateSides, 3> sides = {DegenerateSides::A, DegenerateSides::B, DegenerateSides::Both};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const DensityMatrix rho =
          with_maximally_mixed_marginals(gen_random(RandomKind::General, seed), sides[seed % 3]);
      const auto rep = smin_saturation_check(rho);
      CHECK(rep.gap <= 1e-8);
      CHECK_CLOSE(rep.analytic, smin_analytic(rho).value, 1e-12);
      // The witness bases must be admissible and reproduce the value.
      CHECK_CLOSE(skew_information(rho, rep.bases).total, rep.achieved, 1e-12);
    }
  }
}
