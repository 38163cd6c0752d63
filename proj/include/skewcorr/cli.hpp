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
 * @file cli.hpp
 * Command implementations behind the `skewcorr` executable.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "skewcorr/correlations.hpp"
#include "skewcorr/oracle.hpp"
#include "skewcorr/states.hpp"

namespace skewcorr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitInvalidInput = 2,
  kExitNotApplicable = 3,
};

enum class MeasureSel { SQD, SMIN, Both };
enum class MethodSel { Analytic, Numeric, Both };

MeasureSel parse_measure(const std::string& s);
MethodSel parse_method(const std::string& s);

struct ComputeOptions {
  std::filesystem::path input;
  MeasureSel measure = MeasureSel::Both;
  MethodSel method = MethodSel::Both;
  double tol = kDefaultClassifyTol;
  OptimizerConfig optimizer;
};

int cmd_compute(const ComputeOptions& opts, std::ostream& out, std::ostream& err);

struct SweepRecord {
  double x = 0.0;
  std::optional<double> sqd_analytic, sqd_numeric, smin_analytic, smin_numeric;
  std::string sqd_branch, smin_branch;
  std::optional<double> sqd_dev, smin_dev;
};

/// "werner", "example1", "example3", "example4" or "mix:PATH".
struct Family {
  std::string name;
  std::optional<DensityMatrix> base;  // mixed with I/4 unless werner
  double lo = 0.0;
  double hi = 1.0;

  DensityMatrix at(double x) const;
};

Family parse_family(const std::string& spec);

/// Grid point i of n over [lo, hi], endpoints exact.
double grid_point(double lo, double hi, int i, int n);

std::vector<SweepRecord> sweep(const Family& family, int points, MeasureSel measure, double tol = kDefaultClassifyTol,
                               const OptimizerConfig& cfg = {});

inline constexpr const char* kSweepHeader =
    "x,sqd_analytic,sqd_numeric,smin_analytic,smin_numeric,sqd_branch,smin_branch,sqd_dev,smin_dev";

/// Header plus one line per record; numbers at 17 significant digits.
std::string sweep_csv(const std::vector<SweepRecord>& records);

struct SweepOptions {
  std::string family;
  int points = 21;
  MeasureSel measure = MeasureSel::Both;
  std::filesystem::path output;
  double tol = kDefaultClassifyTol;
};

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);

int cmd_gen(RandomKind kind, std::uint64_t seed, const std::filesystem::path& output, std::ostream& out,
            std::ostream& err);

enum class VerifyClass { GeneralSmin, XSqd, BlockSqd };

VerifyClass parse_verify_class(const std::string& s);
std::string_view to_string(VerifyClass c);

/// The state used for trial `index` of a campaign; seed is base + index.
DensityMatrix verify_state(VerifyClass cls, std::uint64_t base_seed, int index);

struct TrialRow {
  int index = 0;
  std::uint64_t seed = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double deviation = 0.0;
  std::string branch;
};

struct VariantCheck {
  BlockVariant variant;
  double max_dev = 0.0;
  bool passed = false;
};

struct VerifyReport {
  int trials = 0;
  VerifyClass cls = VerifyClass::GeneralSmin;
  double max_dev = 0.0;
  double mean_dev = 0.0;
  std::vector<std::pair<std::uint64_t, double>> failures;  // (seed, deviation)
  double tolerance = 0.0;
  std::vector<TrialRow> rows;
  std::vector<VariantCheck> variants;  // block-sqd only

  /// For block-sqd: exactly one variant passed and it is the default.
  bool variant_certified() const;
  bool ok() const;
};

VerifyReport run_verify(VerifyClass cls, int trials, std::uint64_t seed, double tolerance,
                        double tol = kDefaultClassifyTol, const OptimizerConfig& cfg = {});

std::string verify_csv(const VerifyReport& report);

struct VerifyOptions {
  std::string cls;
  int trials = 200;
  std::uint64_t seed = 1;
  double tolerance = 1e-5;
  std::optional<std::filesystem::path> output;
  double tol = kDefaultClassifyTol;
};

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to the commands above.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skewcorr::cli
