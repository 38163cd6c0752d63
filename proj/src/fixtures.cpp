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

// Example matrices at the printed four-decimal precision.

#include "skewcorr/states.hpp"

namespace skewcorr {

namespace {

Mat4 from_parts(const std::array<std::array<double, 4>, 4>& re, const std::array<std::array<double, 4>, 4>& im) {
  Mat4 m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = cplx(re[r][c], im[r][c]);
  return m;
}

}  // namespace

DensityMatrix example1_g() {
  static const DensityMatrix g = validate(from_parts(
      {{{0.2409, 0.1612, -0.0787, 0.1945},
        {0.1612, 0.3006, -0.1008, 0.1707},
        {-0.0787, -0.1008, 0.1899, -0.0732},
        {0.1945, 0.1707, -0.0732, 0.2686}}},
      {{{0.0, -0.0551, -0.0779, 0.0362},
        {0.0551, 0.0, -0.1395, 0.0742},
        {0.0779, 0.1395, 0.0, 0.1295},
        {-0.0362, -0.0742, -0.1295, 0.0}}}));
  return g;
}

DensityMatrix example3_r() {
  static const DensityMatrix r = validate(from_parts(
      {{{0.2481, 0.0, 0.0, 0.0103},
        {0.0, 0.2083, 0.0285, 0.0},
        {0.0, 0.0285, 0.4657, 0.0},
        {0.0103, 0.0, 0.0, 0.0779}}},
      {{{0.0, 0.0, 0.0, -0.0141},
        {0.0, 0.0, 0.0877, 0.0},
        {0.0, -0.0877, 0.0, 0.0},
        {0.0141, 0.0, 0.0, 0.0}}}));
  return r;
}

// M1 (+) M2.
DensityMatrix example4_m() {
  static const DensityMatrix m = validate(from_parts(
      {{{0.3093, 0.2321, 0.0, 0.0},
        {0.2321, 0.1885, 0.0, 0.0},
        {0.0, 0.0, 0.1972, 0.2075},
        {0.0, 0.0, 0.2075, 0.3050}}},
      {{{0.0, 0.0039, 0.0, 0.0},
        {-0.0039, 0.0, 0.0, 0.0},
        {0.0, 0.0, 0.0, 0.1204},
        {0.0, 0.0, -0.1204, 0.0}}}));
  return m;
}

}  // namespace skewcorr
