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

// Simultaneous diagonal balancing of two Hermitian qubit operators.
//
// With U = U(theta, phi), the diagonal difference of U A U^dagger is
//   d_A = alpha cos(2 theta) + 2 Re(A_01 e^{-i phi}) sin(2 theta),
// alpha = A_00 - A_11, and likewise for B. Both vanish for a common theta
// iff the 2x2 system is singular, which fixes phi through
//   p cos(phi) + q sin(phi) = 0.

#include <cmath>
#include <numbers>

#include "skewcorr/correlations.hpp"

namespace skewcorr {

namespace {

// Below this the equation carries no information about the angle.
constexpr double kNegligible = 1e-300;

// 2 Re(M_01 e^{-i phi})
double coupling(const Mat2& m, double phi) {
  return 2.0 * (m(0, 1).real() * std::cos(phi) + m(0, 1).imag() * std::sin(phi));
}

}  // namespace

BalancingUnitary balance_diagonals(const Mat2& a, const Mat2& b) {
  const double alpha = (a(0, 0) - a(1, 1)).real();
  const double beta = (b(0, 0) - b(1, 1)).real();

  const double p = 2.0 * (beta * a(0, 1).real() - alpha * b(0, 1).real());
  const double q = 2.0 * (beta * a(0, 1).imag() - alpha * b(0, 1).imag());
  const double phi = std::hypot(p, q) <= kNegligible ? 0.0 : std::atan2(-p, q);

  // Solve with whichever equation is better conditioned; once phi is set the
  // two are proportional.
  const double ca = coupling(a, phi);
  const double cb = coupling(b, phi);
  double diff = alpha;
  double coup = ca;
  if (std::hypot(beta, cb) > std::hypot(alpha, ca)) {
    diff = beta;
    coup = cb;
  }

  double theta = 0.0;
  if (std::hypot(diff, coup) > kNegligible) {
    if (coup == 0.0) {
      theta = std::numbers::pi / 4.0;
    } else {
      // diff cos(2t) + coup sin(2t) = 0, with 2t folded into [0, pi).
      double two_theta = std::atan2(-diff, coup);
      if (two_theta < 0.0) two_theta += std::numbers::pi;
      if (two_theta >= std::numbers::pi) two_theta -= std::numbers::pi;
      theta = 0.5 * two_theta;
    }
  }
  return {theta, phi, measurement_unitary(theta, phi)};
}

}  // namespace skewcorr
