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
 * @file oracle.hpp
 * Brute-force evaluation of the SQD and SMIN definitions.
 *
 * The sum of skew information over a product basis is optimized directly over
 * the four local measurement angles (theta_A, phi_A, theta_B, phi_B) with a
 * coarse grid scan followed by a shrinking coordinate pattern search. None of
 * the closed forms in correlations.hpp are used, so the results serve as an
 * independent reference for them.
 */
#pragma once

#include <array>
#include <cstdint>

#include "skewcorr/correlations.hpp"
#include "skewcorr/states.hpp"

namespace skewcorr {

struct OptimizerConfig {
  int grid_theta = 48;         // points over [0, pi/2], endpoints included
  int grid_phi = 48;           // points over [0, 2 pi)
  int refine_iters = 60;       // step contractions allowed per start
  double refine_shrink = 0.6;  // contraction factor
  double target_step = 1e-10;  // converged once every step is this small
  std::uint64_t seed = 0;      // jitter of the restarts
  int restarts = 3;

  /// Throws OutOfRange on counts < 8, shrink outside (0, 1), or step <= 0.
  void check() const;
};

struct OracleOutcome {
  double value = 0.0;
  MeasurementBases argopt;
  long evaluations = 0;
  double final_step = 0.0;
  bool converged = false;
};

/// Sum of skew information at fixed angles with sqrt(rho) computed once.
class Objective {
 public:
  explicit Objective(const DensityMatrix& rho);

  double operator()(const MeasurementBases& bases) const;

  const DensityMatrix& state() const { return rho_; }
  const Mat4& sqrt_rho() const { return sqrt_rho_; }

 private:
  DensityMatrix rho_;
  Mat4 sqrt_rho_;
};

/// skew_information(rho, bases).total
double objective(const DensityMatrix& rho, const MeasurementBases& bases);

/// Minimum over all product bases.
OracleOutcome sqd_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

/// Maximum over product bases commuting with rho_A (x) rho_B. A side whose
/// marginal is not degenerate at `tol` is pinned to the marginal eigenbasis;
/// a degenerate side keeps both angles free.
OracleOutcome smin_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg = {},
                           double tol = kDefaultClassifyTol);

CorrelationResult to_result(const OracleOutcome& o, Measure measure);

}  // namespace skewcorr
