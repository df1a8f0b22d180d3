#include "cellscale/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cellscale/bounds.hpp"
#include "cellscale/geometry.hpp"
#include "cellscale/protocols.hpp"
#include "cellscale/rng.hpp"
#include "cellscale/theory.hpp"

namespace cellscale {

namespace {

// One (n, trial) cell of the sweep table.
void run_one(const SweepPlan& plan, SweepRow& row) {
  const NetworkRealization real = build_realization(
      row.n, plan.exponents, plan.constants, row.seed, plan.wrap);
  switch (plan.proto) {
    case Protocol::UB: {
      const CutsetReport rep = plan.direction == Direction::DL
                                   ? cutset_dl(real)
                                   : cutset_ul(real);
      row.min_rate = plan.direction == Direction::DL ? rep.ub_per_node_dl
                                                     : rep.ub_per_node_ul;
      row.failures = 0;
      break;
    }
    case Protocol::ISH: {
      const RateReport rep = ish_rates(real, plan.direction);
      row.min_rate = rep.min_rate;
      row.failures = rep.failures;
      break;
    }
    case Protocol::IMH: {
      const RateReport rep = imh_rates(real, plan.direction, plan.mode);
      row.min_rate = rep.min_rate;
      row.failures = rep.failures;
      break;
    }
    case Protocol::IRH: {
      const RateReport rep = irh_rates(real, plan.direction);
      row.min_rate = rep.min_rate;
      row.failures = rep.failures;
      break;
    }
    case Protocol::CAPACITY:
      throw std::invalid_argument(
          "capacity has no simulation; sweep ub, ish, imh, or irh");
  }
}

}  // namespace

SweepResult run_sweep(const SweepPlan& plan) {
  validate(plan.exponents);
  validate(plan.constants);
  if (plan.trials_per_n < 1)
    throw std::invalid_argument("trials_per_n must be >= 1");
  {
    std::vector<std::uint64_t> distinct(plan.n_values);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    if (distinct.size() < 3)
      throw std::invalid_argument("need at least 3 distinct n values");
  }

  SweepResult result;
  std::vector<std::uint64_t> usable;
  for (const std::uint64_t n : plan.n_values) {
    try {
      (void)instantiate(n, plan.exponents, plan.constants);
      usable.push_back(n);
    } catch (const std::exception& ex) {
      result.warnings.push_back("dropped n=" + std::to_string(n) + ": " +
                                ex.what());
    }
  }
  {
    std::vector<std::uint64_t> distinct(usable);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    if (distinct.size() < 3)
      throw std::runtime_error(
          "fewer than 3 feasible n values survive instantiation");
  }

  result.rows.reserve(usable.size() * plan.trials_per_n);
  for (const std::uint64_t n : usable) {
    for (std::uint32_t trial = 0; trial < plan.trials_per_n; ++trial) {
      SweepRow row;
      row.n = n;
      row.trial = trial;
      row.seed = derive_seed(plan.master_seed, n, trial);
      result.rows.push_back(row);
    }
  }

  // Trials are independent; workers pull row indices and write disjoint
  // slots, so the table layout never depends on scheduling.
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::string error;
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= result.rows.size()) break;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error.empty()) break;
      }
      try {
        run_one(plan, result.rows[i]);
      } catch (const std::exception& ex) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (error.empty()) error = ex.what();
        break;
      }
    }
  };

  const unsigned workers = std::min<std::size_t>(
      std::max(1u, std::thread::hardware_concurrency()), result.rows.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (!error.empty()) throw std::runtime_error(error);
  return result;
}

ExponentEstimate fit_exponent(const std::vector<SweepRow>& rows) {
  std::map<std::uint64_t, std::vector<double>> by_n;
  for (const SweepRow& row : rows)
    if (row.min_rate > 0.0) by_n[row.n].push_back(row.min_rate);

  // Every size present in the table must contribute a positive median.
  for (const SweepRow& row : rows)
    if (by_n.find(row.n) == by_n.end())
      throw std::runtime_error("n=" + std::to_string(row.n) +
                               " has no positive-rate trials");
  if (by_n.size() < 3)
    throw std::runtime_error("need at least 3 distinct n values to fit");

  ExponentEstimate est;
  est.points.reserve(by_n.size());
  for (auto& [n, rates] : by_n) {
    std::sort(rates.begin(), rates.end());
    const std::size_t h = rates.size() / 2;
    const double median = rates.size() % 2 == 1
                              ? rates[h]
                              : 0.5 * (rates[h - 1] + rates[h]);
    est.points.emplace_back(std::log(static_cast<double>(n)),
                            std::log(median));
  }

  const double count = static_cast<double>(est.points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [x, y] : est.points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / count;
  const double my = sy / count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : est.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx <= 0.0) throw std::runtime_error("degenerate n grid");
  est.slope = sxy / sxx;
  est.intercept = my - est.slope * mx;

  double ss_res = 0.0;
  for (const auto& [x, y] : est.points) {
    const double resid = y - (est.intercept + est.slope * x);
    ss_res += resid * resid;
  }
  est.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  est.slope_stderr =
      count > 2.0 ? std::sqrt(ss_res / (count - 2.0) / sxx) : 0.0;
  return est;
}

TheoryComparison compare_to_theory(const ExponentEstimate& est,
                                   Protocol proto, Direction dir,
                                   const ScalingExponents& e,
                                   double tolerance) {
  const ExponentResult theory = theoretical_exponent(proto, dir, e);
  TheoryComparison cmp;
  cmp.theory = theory.exponent;
  cmp.estimate = est.slope;
  cmp.abs_delta = std::abs(est.slope - theory.exponent);
  cmp.tolerance = tolerance;
  cmp.pass = cmp.abs_delta <= tolerance;
  cmp.active_branch = theory.active_branch;
  cmp.rn_used = theory.rn_used;
  return cmp;
}

}  // namespace cellscale
