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
 * @file states.hpp
 * Two-qubit density matrices: validation, structure detection, the
 * standard families and seeded random generators, and the text file format.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "skewcorr/linalg.hpp"

namespace skewcorr {

inline constexpr double kStateTol = 1e-10;
inline constexpr double kDefaultClassifyTol = 1e-9;

/// A 4x4 Hermitian, unit-trace, PSD matrix. Only `validate` creates one.
class DensityMatrix {
 public:
  const Mat4& matrix() const { return m_; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  Mat2 marginal(Subsystem keep) const { return partial_trace(m_, keep); }

  friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) { return a.m_ == b.m_; }

 private:
  explicit DensityMatrix(const Mat4& m) : m_(m) {}
  friend DensityMatrix validate(const Mat4& m);

  Mat4 m_;
};

/// Throws NonHermitian, TraceNotOne or NotPSD naming the residual.
DensityMatrix validate(const Mat4& m);

enum class Structure { XType, BlockDiagonal, BlockDiagonalSwapped, General };

std::string_view to_string(Structure s);

struct StateClassification {
  Structure structure = Structure::General;
  bool degenerate_A = false;
  bool degenerate_B = false;
  double tol = kDefaultClassifyTol;
  // Eigenvalue gaps of the two marginals, kept for branch diagnostics.
  double gap_A = 0.0;
  double gap_B = 0.0;
};

bool is_x_pattern(const Mat4& m, double tol);
bool is_block_pattern(const Mat4& m, double tol);

/// XType takes precedence over BlockDiagonal, which takes precedence over
/// BlockDiagonalSwapped.
StateClassification classify(const DensityMatrix& rho, double tol = kDefaultClassifyTol);

/// Eigenvalue gap of a qubit marginal.
double marginal_gap(const Mat2& marginal);

/// Exchanges |01> and |10>. Involutive.
Mat4 swap_subsystems(const Mat4& m);
DensityMatrix swap_subsystems(const DensityMatrix& rho);

/// Entrywise modulus; throws NotPSD when the result is not a state.
DensityMatrix entrywise_abs(const DensityMatrix& rho);

/// (2-x)/6 I + (2x-1)/6 V with V the swap operator, x in [-1, 1].
DensityMatrix werner(double x);

/// (1-x)/4 I + x G, x in [0, 1].
DensityMatrix mix_with_identity(const DensityMatrix& g, double x);

DensityMatrix bell_phi_plus();
DensityMatrix maximally_mixed();
DensityMatrix product_state(const Mat2& a, const Mat2& b);

enum class RandomKind { General, XType, BlockDiagonal };

std::string_view to_string(RandomKind k);
RandomKind parse_random_kind(std::string_view name);

/// Ginibre-type construction driven by std::mt19937_64; deterministic per seed.
DensityMatrix gen_random(RandomKind kind, std::uint64_t seed);

/// Random classical-classical state sum p_ij |i><i| (x) |j><j| in random
/// local bases.
DensityMatrix gen_classical(std::uint64_t seed);

enum class DegenerateSides { A, B, Both };

/// Shifts `rho` so the chosen marginals become I/2, then mixes in just
/// enough of I/4 to stay positive (plus a fixed margin).
DensityMatrix with_maximally_mixed_marginals(const DensityMatrix& rho, DegenerateSides sides);

/// Text state format: {"dims":[2,2],"re":[[..]x4],"im":[[..]x4]}, 17
/// significant digits, row-major.
std::string to_state_text(const DensityMatrix& rho);
DensityMatrix parse_state_text(std::string_view text);

DensityMatrix load_state(const std::filesystem::path& path);
void save_state(const DensityMatrix& rho, const std::filesystem::path& path);

/// Built-in example matrices at printed precision.
DensityMatrix example1_g();
DensityMatrix example3_r();
DensityMatrix example4_m();

}  // namespace skewcorr
