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

#include "skewcorr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "skewcorr/error.hpp"

namespace skewcorr {

namespace {

// One candidate measurement on a single qubit, with the Bloch vector of its
// first basis vector cached for the grid scan.
struct SidePoint {
  double theta;
  double phi;
  Vec<2> k0;
  Vec<2> k1;
  std::array<double, 3> bloch;
};

SidePoint make_point(double theta, double phi) {
  const MeasurementBases mb{theta, phi, 0.0, 0.0};
  SidePoint p{theta, phi, mb.basis_vector(Subsystem::A, 0), mb.basis_vector(Subsystem::A, 1), {}};
  const cplx overlap = std::conj(p.k0[0]) * p.k0[1];
  p.bloch = {2.0 * overlap.real(), 2.0 * overlap.imag(), std::norm(p.k0[0]) - std::norm(p.k0[1])};
  return p;
}

double theta_spacing(const OptimizerConfig& cfg) { return (std::numbers::pi / 2.0) / (cfg.grid_theta - 1); }
double phi_spacing(const OptimizerConfig& cfg) { return 2.0 * std::numbers::pi / cfg.grid_phi; }

std::vector<SidePoint> side_grid(const OptimizerConfig& cfg) {
  std::vector<SidePoint> pts;
  pts.reserve(static_cast<std::size_t>(cfg.grid_theta) * cfg.grid_phi);
  for (int i = 0; i < cfg.grid_theta; ++i)
    for (int j = 0; j < cfg.grid_phi; ++j) pts.push_back(make_point(i * theta_spacing(cfg), j * phi_spacing(cfg)));
  return pts;
}

// Minimizes sense * objective. sense = +1 for SQD, -1 for SMIN.
class Search {
 public:
  Search(const DensityMatrix& rho, const OptimizerConfig& cfg, double sense, std::array<bool, 4> free)
      : objective_(rho), cfg_(cfg), sense_(sense), free_(free) {}

  double eval(const std::array<double, 4>& x) {
    ++evaluations_;
    return sense_ * objective_(MeasurementBases::from_array(x));
  }

  // Exhaustive scan over the product of the two side lists. A pinned side
  // contributes a single point. The per-pair cost is one 3x3 quadratic form:
  // with M_k = <a_k| sqrt(rho) |a_k> on qubit B written as (t_k + r_k.sigma)/2,
  //   sum_{k,l} <a_k b_l| sqrt(rho) |a_k b_l>^2 = sum_k (t_k^2 + (r_k.n_b)^2) / 2.
  // The first strict improvement in lexicographic order wins ties.
  std::array<double, 4> scan(const std::vector<SidePoint>& a_pts, const std::vector<SidePoint>& b_pts) {
    const Mat4& s = objective_.sqrt_rho();
    const double tr = objective_.state().matrix().trace().real();
    double best = 0.0;
    std::array<double, 4> arg{};
    bool have = false;
    for (const auto& a : a_pts) {
      double c = 0.0;
      std::array<double, 6> q{};  // xx, yy, zz, xy, xz, yz
      for (const auto& k : {a.k0, a.k1}) {
        const Mat2 m = contract_side(s, Subsystem::A, k);
        const double t = m.trace().real();
        const double rx = 2.0 * m(0, 1).real();
        const double ry = -2.0 * m(0, 1).imag();
        const double rz = (m(0, 0) - m(1, 1)).real();
        c += 0.5 * t * t;
        q[0] += 0.5 * rx * rx;
        q[1] += 0.5 * ry * ry;
        q[2] += 0.5 * rz * rz;
        q[3] += rx * ry;
        q[4] += rx * rz;
        q[5] += ry * rz;
      }
      for (const auto& b : b_pts) {
        const auto& n = b.bloch;
        const double g2 = c + q[0] * n[0] * n[0] + q[1] * n[1] * n[1] + q[2] * n[2] * n[2] + q[3] * n[0] * n[1] +
                          q[4] * n[0] * n[2] + q[5] * n[1] * n[2];
        const double f = sense_ * (tr - g2);
        ++evaluations_;
        if (!have || f < best) {
          best = f;
          arg = {a.theta, a.phi, b.theta, b.phi};
          have = true;
        }
      }
    }
    return arg;
  }

  struct Local {
    std::array<double, 4> x;
    double f;
    double step;
    bool converged;
  };

  // Hooke-Jeeves: cumulative +/- step exploration on each free angle, a
  // pattern move along the last successful displacement, and contraction by
  // refine_shrink when exploration around the base point fails.
  Local refine(std::array<double, 4> x) {
    std::array<double, 4> step = {theta_spacing(cfg_), phi_spacing(cfg_), theta_spacing(cfg_), phi_spacing(cfg_)};
    auto max_step = [&] {
      double m = 0.0;
      for (std::size_t i = 0; i < 4; ++i)
        if (free_[i]) m = std::max(m, step[i]);
      return m;
    };
    auto explore = [&](std::array<double, 4> y, double fy) {
      for (std::size_t i = 0; i < 4; ++i) {
        if (!free_[i]) continue;
        for (double dir : {1.0, -1.0}) {
          std::array<double, 4> z = y;
          z[i] += dir * step[i];
          const double fz = eval(z);
          if (fz < fy) {
            y = z;
            fy = fz;
            break;
          }
        }
      }
      return std::pair{y, fy};
    };

    double fx = eval(x);
    int shrinks = 0;
    long polls = 0;
    const long max_polls = 200L * cfg_.refine_iters;
    while (max_step() > cfg_.target_step && shrinks < cfg_.refine_iters && polls < max_polls) {
      ++polls;
      auto [y, fy] = explore(x, fx);
      if (!(fy < fx)) {
        for (auto& s : step) s *= cfg_.refine_shrink;
        ++shrinks;
        continue;
      }
      while (polls < max_polls) {
        ++polls;
        std::array<double, 4> pattern = y;
        for (std::size_t i = 0; i < 4; ++i) pattern[i] += y[i] - x[i];
        x = y;
        fx = fy;
        auto [z, fz] = explore(pattern, eval(pattern));
        if (!(fz < fx)) break;
        y = z;
        fy = fz;
      }
    }
    const double final_step = max_step();
    return {x, fx, final_step, final_step <= cfg_.target_step};
  }

  OracleOutcome run(const std::vector<SidePoint>& a_pts, const std::vector<SidePoint>& b_pts) {
    OracleOutcome out;
    const bool any_free = std::any_of(free_.begin(), free_.end(), [](bool b) { return b; });
    const std::array<double, 4> start = scan(a_pts, b_pts);
    if (!any_free) {
      out.value = sense_ * eval(start);
      out.argopt = MeasurementBases::from_array(start);
      out.evaluations = evaluations_;
      out.converged = true;
      return out;
    }

    std::mt19937_64 gen(cfg_.seed);
    const std::array<double, 4> spacing = {theta_spacing(cfg_), phi_spacing(cfg_), theta_spacing(cfg_),
                                           phi_spacing(cfg_)};
    Local best = refine(start);
    for (int r = 0; r < cfg_.restarts; ++r) {
      std::array<double, 4> x = start;
      for (std::size_t i = 0; i < 4; ++i) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        if (free_[i]) x[i] += (2.0 * u - 1.0) * spacing[i];
      }
      const Local l = refine(x);
      if (l.f < best.f) best = l;
    }
    out.value = sense_ * best.f;
    out.argopt = MeasurementBases::from_array(best.x);
    out.evaluations = evaluations_;
    out.final_step = best.step;
    out.converged = best.converged;
    return out;
  }

 private:
  Objective objective_;
  OptimizerConfig cfg_;
  double sense_;
  std::array<bool, 4> free_;
  long evaluations_ = 0;
};

}  // namespace

void OptimizerConfig::check() const {
  if (grid_theta < 8 || grid_phi < 8) throw Error(ErrorCode::OutOfRange, "grid counts must be at least 8");
  if (!(refine_shrink > 0.0 && refine_shrink < 1.0)) throw Error(ErrorCode::OutOfRange, "refine_shrink must lie in (0, 1)");
  if (!(target_step > 0.0)) throw Error(ErrorCode::OutOfRange, "target_step must be positive");
  if (refine_iters < 0 || restarts < 0) throw Error(ErrorCode::OutOfRange, "iteration counts must be nonnegative");
}

Objective::Objective(const DensityMatrix& rho) : rho_(rho), sqrt_rho_(psd_sqrt(rho.matrix())) {}

double Objective::operator()(const MeasurementBases& bases) const {
  return skew_information(rho_, sqrt_rho_, bases).total;
}

double objective(const DensityMatrix& rho, const MeasurementBases& bases) { return Objective(rho)(bases); }

OracleOutcome sqd_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  cfg.check();
  const auto grid = side_grid(cfg);
  Search search(rho, cfg, 1.0, {true, true, true, true});
  OracleOutcome out = search.run(grid, grid);
  out.value = clamp_small_negative(out.value);
  return out;
}

OracleOutcome smin_numeric(const DensityMatrix& rho, const OptimizerConfig& cfg, double tol) {
  cfg.check();
  const bool free_a = marginal_gap(rho.marginal(Subsystem::A)) <= tol;
  const bool free_b = marginal_gap(rho.marginal(Subsystem::B)) <= tol;

  auto pinned = [&](Subsystem side) {
    const auto angles = angles_from_vector(hermitian_eig(rho.marginal(side)).vector(0));
    return std::vector<SidePoint>{make_point(angles[0], angles[1])};
  };
  const auto grid = side_grid(cfg);
  Search search(rho, cfg, -1.0, {free_a, free_a, free_b, free_b});
  OracleOutcome out = search.run(free_a ? grid : pinned(Subsystem::A), free_b ? grid : pinned(Subsystem::B));
  out.value = clamp_small_negative(out.value);
  return out;
}

CorrelationResult to_result(const OracleOutcome& o, Measure measure) {
  CorrelationResult r;
  r.measure = measure;
  r.method = Method::Numeric;
  r.value = o.value;
  r.branch = branch::kNumeric;
  r.diagnostics = OptimizerDiagnostics{o.evaluations, o.final_step, o.converged};
  r.bases = o.argopt;
  return r;
}

}  // namespace skewcorr
