#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cellscale/params.hpp"

namespace cellscale {

// A Monte Carlo scaling experiment: simulate one protocol over a geometric
// ladder of network sizes and several seeded trials per size.
struct SweepPlan {
  std::vector<std::uint64_t> n_values;  // >= 3 distinct, geometric spacing
  std::uint32_t trials_per_n = 1;
  std::uint64_t master_seed = 1;
  Protocol proto = Protocol::ISH;
  Direction direction = Direction::DL;
  LoadMode mode = LoadMode::paper_faithful;
  ScalingExponents exponents;
  ModelConstants constants;
  bool wrap = false;
};

struct SweepRow {
  std::uint64_t n = 0;
  std::uint32_t trial = 0;
  std::uint64_t seed = 0;  // derived from (master_seed, n, trial)
  double min_rate = 0.0;
  std::uint64_t failures = 0;  // nodes without a usable route
};

struct SweepResult {
  std::vector<SweepRow> rows;         // ordered by (n, trial)
  std::vector<std::string> warnings;  // e.g. n values dropped as infeasible
};

// Runs the plan; trials execute in parallel but the table is a pure
// function of the plan.  Sizes that fail to instantiate are dropped with a
// warning; fewer than 3 surviving sizes is an error.
SweepResult run_sweep(const SweepPlan& plan);

// Log-log least squares over per-n medians.
struct ExponentEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r2 = 0.0;
  std::vector<std::pair<double, double>> points;  // (ln n, ln median rate)
};

// Aggregates min_rate by median across a size's positive-rate trials, then
// fits ln(median) against ln(n).  Throws when fewer than 3 sizes survive or
// some size has no positive trials.
ExponentEstimate fit_exponent(const std::vector<SweepRow>& rows);

struct TheoryComparison {
  double theory = 0.0;
  double estimate = 0.0;
  double abs_delta = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string active_branch;  // which arm of the closed form is active
  bool rn_used = false;
};

TheoryComparison compare_to_theory(const ExponentEstimate& est,
                                   Protocol proto, Direction dir,
                                   const ScalingExponents& e,
                                   double tolerance = 0.15);

}  // namespace cellscale
