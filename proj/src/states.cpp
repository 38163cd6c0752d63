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

#include "skewcorr/states.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "skewcorr/error.hpp"

namespace skewcorr {

namespace {

std::string residual_message(std::string_view what, double residual) {
  std::ostringstream os;
  os << what << " (residual " << residual << ")";
  return os.str();
}

// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Box-Muller; written out so the stream is identical across standard
// libraries, which std::normal_distribution does not guarantee.
double standard_normal(std::mt19937_64& gen) {
  const double u1 = uniform01(gen);
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx complex_normal(std::mt19937_64& gen) {
  const double re = standard_normal(gen);
  const double im = standard_normal(gen);
  return {re, im};
}

Mat2 ginibre_block(std::mt19937_64& gen) {
  Mat2 g;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) g(r, c) = complex_normal(gen);
  return g * g.adjoint();
}

// Haar-ish random qubit unitary built from a normalized complex Gaussian column.
Mat2 random_unitary2(std::mt19937_64& gen) {
  cplx a = complex_normal(gen);
  cplx b = complex_normal(gen);
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  return Mat2{a, -std::conj(b), b, std::conj(a)};
}

Mat4 normalized(const Mat4& m) { return m * (1.0 / m.trace().real()); }

// Entry pairs (0-based) that must vanish for each structure.
constexpr std::array<std::array<std::size_t, 2>, 4> kXZeros = {{{0, 1}, {0, 2}, {1, 3}, {2, 3}}};
constexpr std::array<std::array<std::size_t, 2>, 4> kBlockZeros = {{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};

bool zeros_hold(const Mat4& m, const std::array<std::array<std::size_t, 2>, 4>& where, double tol) {
  for (const auto& [r, c] : where) {
    if (std::abs(m(r, c)) > tol || std::abs(m(c, r)) > tol) return false;
  }
  return true;
}

}  // namespace

DensityMatrix validate(const Mat4& m) {
  for (const auto& v : m.data()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::NonHermitian, "matrix has a non-finite entry");
    }
  }
  const double herm = hermiticity_residual(m);
  if (herm > kStateTol) throw Error(ErrorCode::NonHermitian, residual_message("not Hermitian", herm));

  const double trace_dev = std::abs(m.trace() - 1.0);
  if (trace_dev > kStateTol) throw Error(ErrorCode::TraceNotOne, residual_message("trace differs from 1", trace_dev));

  const auto spec = hermitian_eig(m);
  if (spec.values[0] < -kStateTol) {
    throw Error(ErrorCode::NotPSD, residual_message("negative eigenvalue", spec.values[0]));
  }
  return DensityMatrix(m);
}

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::XType: return "XType";
    case Structure::BlockDiagonal: return "BlockDiagonal";
    case Structure::BlockDiagonalSwapped: return "BlockDiagonalSwapped";
    case Structure::General: return "General";
  }
  return "General";
}

bool is_x_pattern(const Mat4& m, double tol) { return zeros_hold(m, kXZeros, tol); }
bool is_block_pattern(const Mat4& m, double tol) { return zeros_hold(m, kBlockZeros, tol); }

double marginal_gap(const Mat2& marginal) {
  const auto spec = hermitian_eig(marginal);
  return spec.values[1] - spec.values[0];
}

StateClassification classify(const DensityMatrix& rho, double tol) {
  StateClassification out;
  out.tol = tol;
  const Mat4& m = rho.matrix();
  if (is_x_pattern(m, tol)) {
    out.structure = Structure::XType;
  } else if (is_block_pattern(m, tol)) {
    out.structure = Structure::BlockDiagonal;
  } else if (is_block_pattern(swap_subsystems(m), tol)) {
    out.structure = Structure::BlockDiagonalSwapped;
  }
  out.gap_A = marginal_gap(rho.marginal(Subsystem::A));
  out.gap_B = marginal_gap(rho.marginal(Subsystem::B));
  out.degenerate_A = out.gap_A <= tol;
  out.degenerate_B = out.gap_B <= tol;
  return out;
}

Mat4 swap_subsystems(const Mat4& m) {
  constexpr std::array<std::size_t, 4> perm = {0, 2, 1, 3};
  Mat4 out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = m(perm[r], perm[c]);
  return out;
}

DensityMatrix swap_subsystems(const DensityMatrix& rho) { return validate(swap_subsystems(rho.matrix())); }

DensityMatrix entrywise_abs(const DensityMatrix& rho) {
  Mat4 out;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) out(r, c) = std::abs(rho(r, c));
  return validate(out);
}

DensityMatrix werner(double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw Error(ErrorCode::OutOfRange, "Werner parameter must lie in [-1, 1]");
  const double id = (2.0 - x) / 6.0;
  const double sw = (2.0 * x - 1.0) / 6.0;
  Mat4 m;
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l = 0; l < 2; ++l) m(2 * k + l, 2 * l + k) += sw;
  for (std::size_t i = 0; i < 4; ++i) m(i, i) += id;
  return validate(m);
}

DensityMatrix mix_with_identity(const DensityMatrix& g, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::OutOfRange, "mixing weight must lie in [0, 1]");
  return validate(((1.0 - x) / 4.0) * Mat4::identity() + x * g.matrix());
}

DensityMatrix bell_phi_plus() {
  Mat4 m;
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return validate(m);
}

DensityMatrix maximally_mixed() { return validate(0.25 * Mat4::identity()); }

DensityMatrix product_state(const Mat2& a, const Mat2& b) { return validate(kron(a, b)); }

std::string_view to_string(RandomKind k) {
  switch (k) {
    case RandomKind::General: return "general";
    case RandomKind::XType: return "x_type";
    case RandomKind::BlockDiagonal: return "block_diagonal";
  }
  return "general";
}

RandomKind parse_random_kind(std::string_view name) {
  if (name == "general") return RandomKind::General;
  if (name == "x_type") return RandomKind::XType;
  if (name == "block_diagonal") return RandomKind::BlockDiagonal;
  throw Error(ErrorCode::ParseError, "unknown state kind '" + std::string(name) + "'");
}

DensityMatrix gen_random(RandomKind kind, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  Mat4 m;
  switch (kind) {
    case RandomKind::General: {
      Mat4 g;
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) g(r, c) = complex_normal(gen);
      m = g * g.adjoint();
      break;
    }
    case RandomKind::XType: {
      // Outer block on {|00>,|11>}, inner block on {|01>,|10>}.
      const Mat2 outer = ginibre_block(gen);
      const Mat2 inner = ginibre_block(gen);
      m(0, 0) = outer(0, 0);
      m(0, 3) = outer(0, 1);
      m(3, 0) = outer(1, 0);
      m(3, 3) = outer(1, 1);
      m(1, 1) = inner(0, 0);
      m(1, 2) = inner(0, 1);
      m(2, 1) = inner(1, 0);
      m(2, 2) = inner(1, 1);
      break;
    }
    case RandomKind::BlockDiagonal: {
      const Mat2 upper = ginibre_block(gen);
      const Mat2 lower = ginibre_block(gen);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
          m(r, c) = upper(r, c);
          m(2 + r, 2 + c) = lower(r, c);
        }
      break;
    }
  }
  return validate(normalized(m));
}

DensityMatrix gen_classical(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::array<double, 4> p{};
  for (auto& v : p) v = 0.05 + uniform01(gen);
  const Mat2 ua = random_unitary2(gen);
  const Mat2 ub = random_unitary2(gen);
  const Mat4 u = kron(ua, ub);
  const Mat4 diag = normalized(Mat4::diagonal(p));
  const Mat4 m = u * diag * u.adjoint();
  return validate(0.5 * (m + m.adjoint()));
}

DensityMatrix with_maximally_mixed_marginals(const DensityMatrix& rho, DegenerateSides sides) {
  const Mat2 half = 0.5 * Mat2::identity();
  const Mat2 ra = rho.marginal(Subsystem::A);
  const Mat2 rb = rho.marginal(Subsystem::B);
  Mat4 m = rho.matrix();
  switch (sides) {
    case DegenerateSides::A:
      m -= kron(ra - half, rb);
      break;
    case DegenerateSides::B:
      m -= kron(ra, rb - half);
      break;
    case DegenerateSides::Both:
      m -= kron(ra - half, half) + kron(half, rb - half);
      break;
  }
  m = 0.5 * (m + m.adjoint());
  const double lowest = hermitian_eig(m).values[0];
  double w = lowest < 0.0 ? -lowest / (0.25 - lowest) : 0.0;
  w = std::min(1.0, w + 0.05);
  return validate((1.0 - w) * m + (w / 4.0) * Mat4::identity());
}

std::string to_state_text(const DensityMatrix& rho) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  auto write_part = [&](bool imag) {
    os << "[";
    for (std::size_t r = 0; r < 4; ++r) {
      os << (r ? ",\n    [" : "\n    [");
      for (std::size_t c = 0; c < 4; ++c) {
        const double v = imag ? rho(r, c).imag() : rho(r, c).real();
        os << (c ? ", " : "") << (v == 0.0 ? 0.0 : v);
      }
      os << "]";
    }
    os << "\n  ]";
  };
  os << "{\n  \"dims\": [2, 2],\n  \"re\": ";
  write_part(false);
  os << ",\n  \"im\": ";
  write_part(true);
  os << "\n}\n";
  return os.str();
}

DensityMatrix parse_state_text(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed state file: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "state file must be a JSON object");
  for (const char* key : {"dims", "re", "im"}) {
    if (!doc.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  }
  const auto& dims = doc["dims"];
  if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() || !dims[1].is_number_integer() ||
      dims[0].get<int>() != 2 || dims[1].get<int>() != 2) {
    throw Error(ErrorCode::ParseError, "field 'dims': only [2, 2] is supported, got " + dims.dump());
  }

  auto read_part = [](const nlohmann::json& part, const char* name) {
    std::array<std::array<double, 4>, 4> out{};
    if (!part.is_array() || part.size() != 4) {
      throw Error(ErrorCode::ParseError, std::string("field '") + name + "' must have 4 rows");
    }
    for (std::size_t r = 0; r < 4; ++r) {
      const auto& row = part[r];
      if (!row.is_array() || row.size() != 4) {
        throw Error(ErrorCode::ParseError,
                    std::string("field '") + name + "' row " + std::to_string(r) + " must have 4 entries");
      }
      for (std::size_t c = 0; c < 4; ++c) {
        if (!row[c].is_number()) {
          throw Error(ErrorCode::ParseError, std::string("field '") + name + "' entry [" + std::to_string(r) +
                                                 "][" + std::to_string(c) + "] is not a number");
        }
        out[r][c] = row[c].get<double>();
      }
    }
    return out;
  };
  const auto re = read_part(doc["re"], "re");
  const auto im = read_part(doc["im"], "im");

  double asym = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      asym = std::max(asym, std::abs(re[r][c] - re[c][r]));
      asym = std::max(asym, std::abs(im[r][c] + im[c][r]));
    }
  if (asym > 1e-9) throw Error(ErrorCode::NonHermitian, residual_message("state file payload is not Hermitian", asym));

  Mat4 m;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m(r, c) = cplx(re[r][c], im[r][c]);
  return validate(m);
}

DensityMatrix load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_text(buf.str());
}

void save_state(const DensityMatrix& rho, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << to_state_text(rho);
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace skewcorr
