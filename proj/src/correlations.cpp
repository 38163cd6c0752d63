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

#include "skewcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "skewcorr/error.hpp"

namespace skewcorr {

namespace {

constexpr double kSkewTermClamp = 1e-12;
constexpr double kHysteresisFactor = 100.0;

Subsystem other(Subsystem s) { return s == Subsystem::A ? Subsystem::B : Subsystem::A; }

double lambda_max_gram(const std::array<double, 3>& b, const std::array<double, 3>& c) {
  double bb = 0.0, bc = 0.0, cc = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    bb += b[i] * b[i];
    bc += b[i] * c[i];
    cc += c[i] * c[i];
  }
  const double mean = 0.5 * (bb + cc);
  const double half_diff = 0.5 * (bb - cc);
  return mean + std::sqrt(half_diff * half_diff + bc * bc);
}

}  // namespace

Mat2 measurement_unitary(double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cplx e = std::polar(1.0, phi);
  return Mat2{c, e * s, -std::conj(e) * s, c};
}

Mat2 MeasurementBases::local_unitary(Subsystem side) const {
  return side == Subsystem::A ? measurement_unitary(theta_A, phi_A) : measurement_unitary(theta_B, phi_B);
}

Vec<2> MeasurementBases::basis_vector(Subsystem side, std::size_t k) const {
  // Row k of U, conjugated.
  const Mat2 u = local_unitary(side);
  return {std::conj(u(k, 0)), std::conj(u(k, 1))};
}

Vec<4> MeasurementBases::product_vector(std::size_t kA, std::size_t kB) const {
  const Vec<2> a = basis_vector(Subsystem::A, kA);
  const Vec<2> b = basis_vector(Subsystem::B, kB);
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

Mat4 MeasurementBases::projector(std::size_t kA, std::size_t kB) const {
  const Vec<4> v = product_vector(kA, kB);
  Mat4 p;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) p(r, c) = v[r] * std::conj(v[c]);
  return p;
}

std::array<double, 2> angles_from_vector(const Vec<2>& v) {
  const double n0 = std::abs(v[0]);
  const double n1 = std::abs(v[1]);
  if (n0 == 0.0) return {std::numbers::pi / 2.0, 0.0};
  // Rotate the global phase so v[0] is real and positive; then
  // v = (cos t, e^{-i p} sin t).
  const cplx w1 = v[1] * std::conj(v[0]) / n0;
  return {std::atan2(n1, n0), n1 == 0.0 ? 0.0 : -std::arg(w1)};
}

SkewInformation skew_information(const DensityMatrix& rho, const Mat4& sqrt_rho, const MeasurementBases& bases) {
  SkewInformation out;
  for (std::size_t kA = 0; kA < 2; ++kA)
    for (std::size_t kB = 0; kB < 2; ++kB) {
      const Vec<4> v = bases.product_vector(kA, kB);
      const double p = expectation(rho.matrix(), v).real();
      const double g = expectation(sqrt_rho, v).real();
      double term = p - g * g;
      if (term < 0.0 && term > -kSkewTermClamp) term = 0.0;
      out.terms[2 * kA + kB] = term;
      out.total += term;
    }
  return out;
}

SkewInformation skew_information(const DensityMatrix& rho, const MeasurementBases& bases) {
  return skew_information(rho, psd_sqrt(rho.matrix()), bases);
}

Mat2 contract_side(const Mat4& m, Subsystem side, const Vec<2>& k) {
  Mat2 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t s = 0; s < 2; ++s)
        for (std::size_t t = 0; t < 2; ++t) {
          const cplx w = std::conj(k[s]) * k[t];
          out(i, j) += side == Subsystem::A ? w * m(2 * s + i, 2 * t + j) : w * m(2 * i + s, 2 * j + t);
        }
  return out;
}

std::string_view to_string(Measure m) { return m == Measure::SQD ? "SQD" : "SMIN"; }
std::string_view to_string(Method m) { return m == Method::Analytic ? "analytic" : "numeric"; }

double clamp_small_negative(double v) { return (v < 0.0 && v > -1e-10) ? 0.0 : v; }

MeasurementBases marginal_eigenbases(const DensityMatrix& rho) {
  const auto a = angles_from_vector(hermitian_eig(rho.marginal(Subsystem::A)).vector(0));
  const auto b = angles_from_vector(hermitian_eig(rho.marginal(Subsystem::B)).vector(0));
  return {a[0], a[1], b[0], b[1]};
}

double smin_both_degenerate(const Mat4& sqrt_rho) {
  const double t = sqrt_rho.trace().real();
  return 1.0 - 0.25 * t * t;
}

double smin_one_degenerate(const DensityMatrix& rho, const Mat4& sqrt_rho, Subsystem degenerate) {
  const Subsystem pinned = other(degenerate);
  const auto eig = hermitian_eig(rho.marginal(pinned));
  double sum = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const double t = contract_side(sqrt_rho, pinned, eig.vector(k)).trace().real();
    sum += t * t;
  }
  return 1.0 - 0.5 * sum;
}

CorrelationResult smin_analytic(const DensityMatrix& rho, double tol) {
  const StateClassification cls = classify(rho, tol);
  const Mat4 sqrt_rho = psd_sqrt(rho.matrix());

  // Per side: which degeneracy readings apply. Gaps in [tol, 100 tol] get both.
  auto readings = [&](double gap) -> std::vector<bool> {
    if (gap <= tol) return {true};
    if (gap <= kHysteresisFactor * tol) return {false, true};
    return {false};
  };
  const auto optsA = readings(cls.gap_A);
  const auto optsB = readings(cls.gap_B);

  CorrelationResult best;
  best.measure = Measure::SMIN;
  best.method = Method::Analytic;
  bool have = false;
  for (bool degA : optsA)
    for (bool degB : optsB) {
      CorrelationResult r;
      r.measure = Measure::SMIN;
      r.method = Method::Analytic;
      if (!degA && !degB) {
        const MeasurementBases bases = marginal_eigenbases(rho);
        r.value = skew_information(rho, sqrt_rho, bases).total;
        r.branch = branch::kSminNondegenerate;
        r.bases = bases;
      } else if (degA && degB) {
        r.value = smin_both_degenerate(sqrt_rho);
        r.branch = branch::kSminBothDegenerate;
      } else {
        r.value = smin_one_degenerate(rho, sqrt_rho, degA ? Subsystem::A : Subsystem::B);
        r.branch = branch::kSminOneDegenerate;
      }
      if (!have || r.value > best.value) {
        best = r;
        have = true;
      }
    }
  best.near_degenerate = optsA.size() > 1 || optsB.size() > 1;
  best.value = clamp_small_negative(best.value);
  return best;
}

CorrelationResult sqd_x_analytic(const DensityMatrix& rho, double tol) {
  if (!is_x_pattern(rho.matrix(), tol)) throw Error(ErrorCode::NotXType, "state is not X-shaped");
  const Mat4 s = psd_sqrt(entrywise_abs(rho).matrix());
  const PauliCoefficients a = pauli_coeffs(s);
  const double tr = s.trace().real();
  const double longitudinal = a(P0, PZ) * a(P0, PZ) + a(PZ, P0) * a(PZ, P0) + a(PZ, PZ) * a(PZ, PZ);
  const double best = std::max({longitudinal, a(PX, PX) * a(PX, PX), a(PY, PY) * a(PY, PY)});

  CorrelationResult r;
  r.measure = Measure::SQD;
  r.method = Method::Analytic;
  r.branch = branch::kSqdX;
  r.value = clamp_small_negative(1.0 - 0.25 * (tr * tr + best));
  return r;
}

std::string to_string(const BlockVariant& v) {
  std::string s = v.source == BlockVariant::Source::SqrtRho ? "sqrt(rho)" : "sqrt(|rho|)";
  s += v.y_sign == BlockVariant::YSign::Plus ? ",+a0y" : ",-a0y";
  return s;
}

CorrelationResult sqd_block_analytic(const DensityMatrix& rho, double tol, BlockVariant variant) {
  CorrelationResult r;
  r.measure = Measure::SQD;
  r.method = Method::Analytic;

  DensityMatrix block = rho;
  if (is_block_pattern(rho.matrix(), tol)) {
    r.branch = branch::kSqdBlock;
  } else if (is_block_pattern(swap_subsystems(rho.matrix()), tol)) {
    block = swap_subsystems(rho);
    r.branch = branch::kSqdBlockSwapped;
  } else {
    throw Error(ErrorCode::NotBlockDiagonal, "state is not block diagonal in either qubit ordering");
  }

  const Mat4 sqrt_rho = psd_sqrt(block.matrix());
  const Mat4 source =
      variant.source == BlockVariant::Source::SqrtRho ? sqrt_rho : psd_sqrt(entrywise_abs(block).matrix());
  const PauliCoefficients a = pauli_coeffs(source);
  const double ysign = variant.y_sign == BlockVariant::YSign::Plus ? 1.0 : -1.0;
  const std::array<double, 3> bvec = {a(P0, PX), ysign * a(P0, PY), a(P0, PZ)};
  const std::array<double, 3> cvec = {a(PZ, PX), a(PZ, PY), a(PZ, PZ)};
  const double tr = sqrt_rho.trace().real();

  r.value = clamp_small_negative(1.0 - 0.25 * (tr * tr + a(PZ, P0) * a(PZ, P0) + lambda_max_gram(bvec, cvec)));
  return r;
}

std::optional<CorrelationResult> sqd_analytic(const DensityMatrix& rho, double tol) {
  switch (classify(rho, tol).structure) {
    case Structure::XType: return sqd_x_analytic(rho, tol);
    case Structure::BlockDiagonal:
    case Structure::BlockDiagonalSwapped: return sqd_block_analytic(rho, tol);
    case Structure::General: return std::nullopt;
  }
  return std::nullopt;
}

double sqd_werner_closed_form(double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw Error(ErrorCode::OutOfRange, "Werner parameter must lie in [-1, 1]");
  return (2.0 - x - std::sqrt(3.0 * (1.0 - x * x))) / 6.0;
}

SaturationReport smin_saturation_check(const DensityMatrix& rho, double tol) {
  const StateClassification cls = classify(rho, tol);
  const Mat4 s = psd_sqrt(rho.matrix());
  const Vec<2> e0 = {1.0, 0.0};
  const Vec<2> e1 = {0.0, 1.0};

  SaturationReport rep;
  if (cls.degenerate_A && cls.degenerate_B) {
    // Equalize R11 = R33 and R22 = R44 with U_A, then each A-block's
    // diagonal with U_B; the four diagonal entries end up equal.
    const BalancingUnitary ua = balance_diagonals(contract_side(s, Subsystem::B, e0), contract_side(s, Subsystem::B, e1));
    const Mat4 ua_full = kron(ua.u, Mat2::identity());
    const Mat4 r = ua_full * s * ua_full.adjoint();
    const BalancingUnitary ub = balance_diagonals(contract_side(r, Subsystem::A, e0), contract_side(r, Subsystem::A, e1));
    rep.branch = branch::kSminBothDegenerate;
    rep.bases = {ua.theta, ua.phi, ub.theta, ub.phi};
    rep.analytic = smin_both_degenerate(s);
  } else if (cls.degenerate_A || cls.degenerate_B) {
    const Subsystem free_side = cls.degenerate_A ? Subsystem::A : Subsystem::B;
    const Subsystem pinned = other(free_side);
    const auto eig = hermitian_eig(rho.marginal(pinned));
    const BalancingUnitary u =
        balance_diagonals(contract_side(s, pinned, eig.vector(0)), contract_side(s, pinned, eig.vector(1)));
    const auto pinned_angles = angles_from_vector(eig.vector(0));
    rep.branch = branch::kSminOneDegenerate;
    if (free_side == Subsystem::A) {
      rep.bases = {u.theta, u.phi, pinned_angles[0], pinned_angles[1]};
    } else {
      rep.bases = {pinned_angles[0], pinned_angles[1], u.theta, u.phi};
    }
    rep.analytic = smin_one_degenerate(rho, s, free_side);
  } else {
    throw Error(ErrorCode::BranchMismatch, "saturation witness needs at least one degenerate marginal");
  }
  rep.achieved = skew_information(rho, s, rep.bases).total;
  rep.gap = std::abs(rep.achieved - rep.analytic);
  return rep;
}

}  // namespace skewcorr
