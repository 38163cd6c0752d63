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

#include "skewcorr/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "skewcorr/error.hpp"

namespace skewcorr::cli {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << (v == 0.0 ? 0.0 : v);
  return os.str();
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

bool wants_sqd(MeasureSel m) { return m != MeasureSel::SMIN; }
bool wants_smin(MeasureSel m) { return m != MeasureSel::SQD; }
bool wants_analytic(MethodSel m) { return m != MethodSel::Numeric; }
bool wants_numeric(MethodSel m) { return m != MethodSel::Analytic; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void print_numeric(std::ostream& out, Measure measure, const OracleOutcome& o) {
  out << to_string(measure) << " numeric:  " << num(o.value) << "  [evaluations=" << o.evaluations
      << " final_step=" << num(o.final_step) << " converged=" << yes_no(o.converged) << "]\n";
}

}  // namespace

MeasureSel parse_measure(const std::string& s) {
  if (s == "sqd") return MeasureSel::SQD;
  if (s == "smin") return MeasureSel::SMIN;
  if (s == "both") return MeasureSel::Both;
  throw Error(ErrorCode::ParseError, "unknown measure '" + s + "'");
}

MethodSel parse_method(const std::string& s) {
  if (s == "analytic") return MethodSel::Analytic;
  if (s == "numeric") return MethodSel::Numeric;
  if (s == "both") return MethodSel::Both;
  throw Error(ErrorCode::ParseError, "unknown method '" + s + "'");
}

int cmd_compute(const ComputeOptions& opts, std::ostream& out, std::ostream& err) {
  DensityMatrix rho = maximally_mixed();
  StateClassification cls;
  try {
    rho = load_state(opts.input);
    cls = classify(rho, opts.tol);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  out << "structure: " << to_string(cls.structure) << "  degenerate_A=" << yes_no(cls.degenerate_A)
      << " degenerate_B=" << yes_no(cls.degenerate_B) << "  tol=" << cls.tol << "\n";

  int code = kExitOk;
  if (wants_sqd(opts.measure)) {
    std::optional<CorrelationResult> analytic;
    if (wants_analytic(opts.method)) {
      analytic = sqd_analytic(rho, opts.tol);
      if (analytic) {
        out << "SQD analytic: " << num(analytic->value) << "  [" << analytic->branch << "]\n";
      } else {
        err << "SQD: no analytic theorem applies to a " << to_string(cls.structure) << " state\n";
        code = kExitNotApplicable;
      }
    }
    if (wants_numeric(opts.method)) {
      const OracleOutcome o = sqd_numeric(rho, opts.optimizer);
      print_numeric(out, Measure::SQD, o);
      if (analytic) out << "SQD deviation: " << num(std::abs(analytic->value - o.value)) << "\n";
    }
  }
  if (wants_smin(opts.measure)) {
    std::optional<CorrelationResult> analytic;
    if (wants_analytic(opts.method)) {
      analytic = smin_analytic(rho, opts.tol);
      out << "SMIN analytic: " << num(analytic->value) << "  [" << analytic->branch << "]"
          << (analytic->near_degenerate ? "  warning: near-degenerate marginal, larger branch reported" : "")
          << "\n";
    }
    if (wants_numeric(opts.method)) {
      const OracleOutcome o = smin_numeric(rho, opts.optimizer, opts.tol);
      print_numeric(out, Measure::SMIN, o);
      if (analytic) out << "SMIN deviation: " << num(std::abs(analytic->value - o.value)) << "\n";
    }
  }
  return code;
}

DensityMatrix Family::at(double x) const {
  if (name == "werner") return werner(x);
  return mix_with_identity(*base, x);
}

Family parse_family(const std::string& spec) {
  if (spec == "werner") return {"werner", std::nullopt, -1.0, 1.0};
  if (spec == "example1") return {"example1", example1_g(), 0.0, 1.0};
  if (spec == "example3") return {"example3", example3_r(), 0.0, 1.0};
  if (spec == "example4") return {"example4", example4_m(), 0.0, 1.0};
  if (spec.rfind("mix:", 0) == 0) return {spec, load_state(spec.substr(4)), 0.0, 1.0};
  throw Error(ErrorCode::ParseError, "unknown family '" + spec + "'");
}

double grid_point(double lo, double hi, int i, int n) {
  if (n <= 1) return lo;
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::vector<SweepRecord> sweep(const Family& family, int points, MeasureSel measure, double tol,
                               const OptimizerConfig& cfg) {
  if (points < 1) throw Error(ErrorCode::OutOfRange, "sweep needs at least one point");
  std::vector<SweepRecord> rows;
  rows.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    SweepRecord rec;
    rec.x = grid_point(family.lo, family.hi, i, points);
    const DensityMatrix rho = family.at(rec.x);
    if (wants_sqd(measure)) {
      if (const auto a = sqd_analytic(rho, tol)) {
        rec.sqd_analytic = a->value;
        rec.sqd_branch = a->branch;
      }
      rec.sqd_numeric = sqd_numeric(rho, cfg).value;
      if (rec.sqd_analytic) rec.sqd_dev = std::abs(*rec.sqd_analytic - *rec.sqd_numeric);
    }
    if (wants_smin(measure)) {
      const CorrelationResult a = smin_analytic(rho, tol);
      rec.smin_analytic = a.value;
      rec.smin_branch = a.branch;
      rec.smin_numeric = smin_numeric(rho, cfg, tol).value;
      rec.smin_dev = std::abs(*rec.smin_analytic - *rec.smin_numeric);
    }
    rows.push_back(std::move(rec));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << kSweepHeader << "\n";
  for (const auto& r : records) {
    os << num(r.x) << ',' << opt_num(r.sqd_analytic) << ',' << opt_num(r.sqd_numeric) << ','
       << opt_num(r.smin_analytic) << ',' << opt_num(r.smin_numeric) << ',' << r.sqd_branch << ',' << r.smin_branch
       << ',' << opt_num(r.sqd_dev) << ',' << opt_num(r.smin_dev) << "\n";
  }
  return os.str();
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<SweepRecord> rows;
  try {
    const Family fam = parse_family(opts.family);
    rows = sweep(fam, opts.points, opts.measure, opts.tol);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  std::ofstream f(opts.output);
  if (!f) {
    err << "error: cannot write " << opts.output.string() << "\n";
    return kExitInvalidInput;
  }
  f << sweep_csv(rows);
  double max_sqd = 0.0, max_smin = 0.0;
  for (const auto& r : rows) {
    max_sqd = std::max(max_sqd, r.sqd_dev.value_or(0.0));
    max_smin = std::max(max_smin, r.smin_dev.value_or(0.0));
  }
  out << "wrote " << rows.size() << " rows to " << opts.output.string() << "\n";
  if (wants_sqd(opts.measure)) out << "max SQD deviation: " << num(max_sqd) << "\n";
  if (wants_smin(opts.measure)) out << "max SMIN deviation: " << num(max_smin) << "\n";
  return kExitOk;
}

int cmd_gen(RandomKind kind, std::uint64_t seed, const std::filesystem::path& output, std::ostream& out,
            std::ostream& err) {
  try {
    const DensityMatrix rho = gen_random(kind, seed);
    save_state(rho, output);
    const StateClassification cls = classify(rho, 1e-12);
    out << "wrote " << output.string() << "  structure: " << to_string(cls.structure) << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

VerifyClass parse_verify_class(const std::string& s) {
  if (s == "general-smin") return VerifyClass::GeneralSmin;
  if (s == "x-sqd") return VerifyClass::XSqd;
  if (s == "block-sqd") return VerifyClass::BlockSqd;
  throw Error(ErrorCode::ParseError, "unknown verification class '" + s + "'");
}

std::string_view to_string(VerifyClass c) {
  switch (c) {
    case VerifyClass::GeneralSmin: return "general-smin";
    case VerifyClass::XSqd: return "x-sqd";
    case VerifyClass::BlockSqd: return "block-sqd";
  }
  return "general-smin";
}

DensityMatrix verify_state(VerifyClass cls, std::uint64_t base_seed, int index) {
  const std::uint64_t seed = base_seed + static_cast<std::uint64_t>(index);
  switch (cls) {
    case VerifyClass::GeneralSmin: {
      // Cycle through every degeneracy pattern so all three SMIN branches get exercised.
      const DensityMatrix g = gen_random(RandomKind::General, seed);
      switch (index % 4) {
        case 1: return with_maximally_mixed_marginals(g, DegenerateSides::A);
        case 2: return with_maximally_mixed_marginals(g, DegenerateSides::B);
        case 3: return with_maximally_mixed_marginals(g, DegenerateSides::Both);
        default: return g;
      }
    }
    case VerifyClass::XSqd: return gen_random(RandomKind::XType, seed);
    case VerifyClass::BlockSqd: {
      const DensityMatrix b = gen_random(RandomKind::BlockDiagonal, seed);
      return index % 2 == 1 ? swap_subsystems(b) : b;
    }
  }
  return gen_random(RandomKind::General, seed);
}

bool VerifyReport::variant_certified() const {
  if (cls != VerifyClass::BlockSqd) return true;
  int passing = 0;
  bool default_passes = false;
  for (const auto& v : variants) {
    if (!v.passed) continue;
    ++passing;
    if (v.variant == kDefaultBlockVariant) default_passes = true;
  }
  return passing == 1 && default_passes;
}

bool VerifyReport::ok() const { return failures.empty() && variant_certified(); }

VerifyReport run_verify(VerifyClass cls, int trials, std::uint64_t seed, double tolerance, double tol,
                        const OptimizerConfig& cfg) {
  if (trials < 1) throw Error(ErrorCode::OutOfRange, "trials must be at least 1");
  VerifyReport rep;
  rep.trials = trials;
  rep.cls = cls;
  rep.tolerance = tolerance;
  if (cls == VerifyClass::BlockSqd) {
    for (const auto& v : kAllBlockVariants) rep.variants.push_back({v, 0.0, true});
  }

  double sum = 0.0;
  for (int i = 0; i < trials; ++i) {
    const DensityMatrix rho = verify_state(cls, seed, i);
    TrialRow row;
    row.index = i;
    row.seed = seed + static_cast<std::uint64_t>(i);
    if (cls == VerifyClass::GeneralSmin) {
      const CorrelationResult a = smin_analytic(rho, tol);
      row.analytic = a.value;
      row.branch = a.branch;
      row.numeric = smin_numeric(rho, cfg, tol).value;
    } else {
      const CorrelationResult a =
          cls == VerifyClass::XSqd ? sqd_x_analytic(rho, tol) : sqd_block_analytic(rho, tol);
      row.analytic = a.value;
      row.branch = a.branch;
      row.numeric = sqd_numeric(rho, cfg).value;
      for (auto& vc : rep.variants) {
        const double dev = std::abs(sqd_block_analytic(rho, tol, vc.variant).value - row.numeric);
        vc.max_dev = std::max(vc.max_dev, dev);
        if (dev > tolerance) vc.passed = false;
      }
    }
    row.deviation = std::abs(row.analytic - row.numeric);
    sum += row.deviation;
    rep.max_dev = std::max(rep.max_dev, row.deviation);
    if (!(row.deviation <= tolerance)) rep.failures.emplace_back(row.seed, row.deviation);
    rep.rows.push_back(std::move(row));
  }
  rep.mean_dev = sum / trials;
  return rep;
}

std::string verify_csv(const VerifyReport& report) {
  std::ostringstream os;
  os << "trial,seed,analytic,numeric,deviation,branch\n";
  for (const auto& r : report.rows) {
    os << r.index << ',' << r.seed << ',' << num(r.analytic) << ',' << num(r.numeric) << ',' << num(r.deviation)
       << ',' << r.branch << "\n";
  }
  return os.str();
}

int cmd_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  VerifyReport rep;
  try {
    rep = run_verify(parse_verify_class(opts.cls), opts.trials, opts.seed, opts.tolerance, opts.tol);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  out << "class: " << to_string(rep.cls) << "  trials: " << rep.trials << "  tolerance: " << num(rep.tolerance)
      << "\n";
  out << "max deviation: " << num(rep.max_dev) << "  mean deviation: " << num(rep.mean_dev) << "\n";
  out << "failures: " << rep.failures.size() << "\n";
  for (const auto& [s, d] : rep.failures) out << "  seed " << s << "  deviation " << num(d) << "\n";
  if (rep.cls == VerifyClass::BlockSqd) {
    for (const auto& v : rep.variants) {
      out << "variant " << to_string(v.variant) << ": max deviation " << num(v.max_dev) << "  "
          << (v.passed ? "PASS" : "fail") << (v.variant == kDefaultBlockVariant ? "  (default)" : "") << "\n";
    }
    out << "variant certified: " << yes_no(rep.variant_certified()) << "\n";
  }
  if (opts.output) {
    std::ofstream f(*opts.output);
    if (!f) {
      err << "error: cannot write " << opts.output->string() << "\n";
      return kExitInvalidInput;
    }
    f << verify_csv(rep);
  }
  return rep.ok() ? kExitOk : kExitVerifyFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skew-information quantum correlations (SQD, SMIN) of two-qubit states"};
  app.require_subcommand(1);

  ComputeOptions compute;
  std::string compute_measure = "both", compute_method = "both";
  auto* c = app.add_subcommand("compute", "Evaluate SQD and/or SMIN of a state file");
  c->add_option("--input", compute.input, "State file")->required();
  c->add_option("--measure", compute_measure, "sqd|smin|both")->check(CLI::IsMember({"sqd", "smin", "both"}));
  c->add_option("--method", compute_method, "analytic|numeric|both")
      ->check(CLI::IsMember({"analytic", "numeric", "both"}));
  c->add_option("--tol", compute.tol, "Structure and degeneracy tolerance")->check(CLI::PositiveNumber);

  SweepOptions sw;
  std::string sweep_measure = "both";
  auto* s = app.add_subcommand("sweep", "Sweep a one-parameter family and write CSV");
  s->add_option("--family", sw.family, "werner|example1|example3|example4|mix:PATH")->required();
  s->add_option("--points", sw.points, "Number of grid points")->required()->check(CLI::PositiveNumber);
  s->add_option("--measure", sweep_measure, "sqd|smin|both")->required()->check(CLI::IsMember({"sqd", "smin", "both"}));
  s->add_option("--output", sw.output, "CSV path")->required();
  s->add_option("--tol", sw.tol, "Structure and degeneracy tolerance")->check(CLI::PositiveNumber);

  std::string gen_kind;
  std::uint64_t gen_seed = 0;
  std::filesystem::path gen_out;
  auto* g = app.add_subcommand("gen", "Write a seeded random state");
  g->add_option("--kind", gen_kind, "general|x_type|block_diagonal")
      ->required()
      ->check(CLI::IsMember({"general", "x_type", "block_diagonal"}));
  g->add_option("--seed", gen_seed, "Generator seed")->required();
  g->add_option("--output", gen_out, "State file path")->required();

  VerifyOptions ver;
  std::string ver_out;
  auto* v = app.add_subcommand("verify", "Compare closed forms with the numerical optimizer on random states");
  v->add_option("--class", ver.cls, "general-smin|x-sqd|block-sqd")
      ->required()
      ->check(CLI::IsMember({"general-smin", "x-sqd", "block-sqd"}));
  v->add_option("--trials", ver.trials, "Number of states")->required()->check(CLI::PositiveNumber);
  v->add_option("--seed", ver.seed, "Base seed")->required();
  v->add_option("--tolerance", ver.tolerance, "Allowed |analytic - numeric|")->required();
  v->add_option("--output", ver_out, "Optional per-trial CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  if (c->parsed()) {
    compute.measure = parse_measure(compute_measure);
    compute.method = parse_method(compute_method);
    return cmd_compute(compute, out, err);
  }
  if (s->parsed()) {
    sw.measure = parse_measure(sweep_measure);
    return cmd_sweep(sw, out, err);
  }
  if (g->parsed()) return cmd_gen(parse_random_kind(gen_kind), gen_seed, gen_out, out, err);
  if (!ver_out.empty()) ver.output = ver_out;
  return cmd_verify(ver, out, err);
}

}  // namespace skewcorr::cli
