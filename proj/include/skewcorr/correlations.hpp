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
 * @file correlations.hpp
 * Skew-information correlation measures of two-qubit states.
 *
 * Both measures sum the skew information
 *
 *     I(rho, K) = <k_A k_B| rho |k_A k_B> - |<k_A k_B| sqrt(rho) |k_A k_B>|^2
 *
 * over a product measurement basis {|k_A>} x {|k_B>}. The symmetric discord
 * (SQD) minimizes that sum over all local bases; the symmetric
 * measurement-induced nonlocality (SMIN) maximizes it over local bases that
 * commute with rho_A (x) rho_B. This header exposes the closed-form
 * evaluations; see oracle.hpp for the numerical optimizer that checks them.
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "skewcorr/linalg.hpp"
#include "skewcorr/states.hpp"

namespace skewcorr {

/// Local qubit unitary U(theta, phi) = [[cos t, e^{i p} sin t], [-e^{-i p} sin t, cos t]].
Mat2 measurement_unitary(double theta, double phi);

/// Product measurement parameterized by one (theta, phi) pair per qubit.
/// Basis vector |k> of a side is U(theta, phi)^dagger |k>, so <k|M|k> is the
/// k-th diagonal entry of U M U^dagger.
struct MeasurementBases {
  double theta_A = 0.0;
  double phi_A = 0.0;
  double theta_B = 0.0;
  double phi_B = 0.0;

  std::array<double, 4> as_array() const { return {theta_A, phi_A, theta_B, phi_B}; }
  static MeasurementBases from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

  Mat2 local_unitary(Subsystem side) const;
  Vec<2> basis_vector(Subsystem side, std::size_t k) const;
  /// |k_A> (x) |k_B>
  Vec<4> product_vector(std::size_t kA, std::size_t kB) const;
  Mat4 projector(std::size_t kA, std::size_t kB) const;
};

/// (theta, phi) with theta in [0, pi/2] whose first basis vector is `v` up to phase.
std::array<double, 2> angles_from_vector(const Vec<2>& v);

struct SkewInformation {
  std::array<double, 4> terms{};  // index 2*kA + kB
  double total = 0.0;
};

SkewInformation skew_information(const DensityMatrix& rho, const MeasurementBases& bases);

/// Same, with a precomputed psd_sqrt(rho).
SkewInformation skew_information(const DensityMatrix& rho, const Mat4& sqrt_rho, const MeasurementBases& bases);

/// <k| M |k> taken on `side`, leaving a 2x2 operator on the other qubit.
Mat2 contract_side(const Mat4& m, Subsystem side, const Vec<2>& k);

enum class Measure { SQD, SMIN };
enum class Method { Analytic, Numeric };

std::string_view to_string(Measure m);
std::string_view to_string(Method m);

struct OptimizerDiagnostics {
  long evaluations = 0;
  double final_step = 0.0;
  bool converged = false;
};

struct CorrelationResult {
  Measure measure = Measure::SQD;
  double value = 0.0;
  Method method = Method::Analytic;
  std::string branch;
  /// Set when a marginal gap fell in the [tol, 100 tol] band and both
  /// applicable branches were evaluated.
  bool near_degenerate = false;
  std::optional<OptimizerDiagnostics> diagnostics;
  std::optional<MeasurementBases> bases;
};

/// Values in (-1e-10, 0) become 0.
double clamp_small_negative(double v);

namespace branch {
inline constexpr std::string_view kSminNondegenerate = "smin-nondegenerate";
inline constexpr std::string_view kSminBothDegenerate = "smin-both-degenerate";
inline constexpr std::string_view kSminOneDegenerate = "smin-one-degenerate";
inline constexpr std::string_view kSqdX = "sqd-x";
inline constexpr std::string_view kSqdBlock = "sqd-block";
inline constexpr std::string_view kSqdBlockSwapped = "sqd-block-swapped";
inline constexpr std::string_view kNumeric = "numeric";
}  // namespace branch

/// Closed-form SMIN, selected by which marginals are degenerate at `tol`.
CorrelationResult smin_analytic(const DensityMatrix& rho, double tol = kDefaultClassifyTol);

/// SMIN with both marginals treated as degenerate: 1 - (Tr sqrt(rho))^2 / 4.
double smin_both_degenerate(const Mat4& sqrt_rho);

/// SMIN with `degenerate` maximally mixed and the other side pinned to the
/// eigenbasis of its marginal: 1 - 1/2 sum_k (Tr <k| sqrt(rho) |k>)^2.
double smin_one_degenerate(const DensityMatrix& rho, const Mat4& sqrt_rho, Subsystem degenerate);

/// Measurement in the eigenbases of both marginals.
MeasurementBases marginal_eigenbases(const DensityMatrix& rho);

/// SQD of an X-shaped state from the Pauli expansion of sqrt(|rho|).
/// Throws NotXType.
CorrelationResult sqd_x_analytic(const DensityMatrix& rho, double tol = kDefaultClassifyTol);

/// Which matrix supplies the Pauli coefficients and the sign of the a_0y
/// component in the block-diagonal SQD formula.
struct BlockVariant {
  enum class Source { SqrtRho, SqrtAbsRho } source = Source::SqrtRho;
  enum class YSign { Plus, Minus } y_sign = YSign::Plus;

  friend bool operator==(const BlockVariant&, const BlockVariant&) = default;
};

std::string to_string(const BlockVariant& v);

/// The variant certified against the numerical optimizer; see the
/// block-sqd verification campaign.
inline constexpr BlockVariant kDefaultBlockVariant{BlockVariant::Source::SqrtRho, BlockVariant::YSign::Plus};

inline constexpr std::array<BlockVariant, 4> kAllBlockVariants = {{
    {BlockVariant::Source::SqrtRho, BlockVariant::YSign::Plus},
    {BlockVariant::Source::SqrtRho, BlockVariant::YSign::Minus},
    {BlockVariant::Source::SqrtAbsRho, BlockVariant::YSign::Plus},
    {BlockVariant::Source::SqrtAbsRho, BlockVariant::YSign::Minus},
}};

/// SQD of a block-diagonal state (directly or after exchanging the qubits):
/// 1 - 1/4 [(Tr sqrt(rho))^2 + a_z0^2 + lambda_max(B B^T + C C^T)] with
/// B = (a_0x, a_0y, a_0z), C = (a_zx, a_zy, a_zz). Throws NotBlockDiagonal.
CorrelationResult sqd_block_analytic(const DensityMatrix& rho, double tol = kDefaultClassifyTol,
                                     BlockVariant variant = kDefaultBlockVariant);

/// Dispatches on structure; empty for states with no closed form.
std::optional<CorrelationResult> sqd_analytic(const DensityMatrix& rho, double tol = kDefaultClassifyTol);

/// (2 - x - sqrt(3 (1 - x^2))) / 6 for Werner states, x in [-1, 1].
double sqd_werner_closed_form(double x);

struct BalancingUnitary {
  double theta = 0.0;
  double phi = 0.0;
  Mat2 u;
};

/// U with [U A U^dagger]_11 = [U A U^dagger]_22 and the same for B.
BalancingUnitary balance_diagonals(const Mat2& a, const Mat2& b);

struct SaturationReport {
  std::string branch;
  MeasurementBases bases;
  double achieved = 0.0;
  double analytic = 0.0;
  double gap = 0.0;
};

/// Builds the local measurement that attains the degenerate-marginal SMIN
/// bound and evaluates it through skew_information. Throws BranchMismatch
/// when neither marginal is degenerate.
SaturationReport smin_saturation_check(const DensityMatrix& rho, double tol = kDefaultClassifyTol);

}  // namespace skewcorr
