#include "cellscale/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "cellscale/channel.hpp"

namespace cellscale {

namespace {

// Clamped gain d^{-alpha} with a tally of floored links.
inline double guarded_gain(const NetworkRealization& real, const Point2D& p,
                           const Point2D& q, std::uint64_t& clamped) {
  double d = real.layout.distance(p, q);
  if (d < real.min_link_distance) {
    d = real.min_link_distance;
    ++clamped;
  }
  return path_gain(d, real.exponents.alpha);
}

}  // namespace

CutsetReport cutset_dl(const NetworkRealization& real) {
  const auto& p = real.params;
  CutsetReport rep;
  rep.per_cell_dl.resize(p.m);

  const double snr_scale = real.constants.P_BS / (p.W * real.constants.N0);
  const double ln2 = std::log(2.0);

  std::uint64_t clamped = 0;
  for (std::uint64_t t = 0; t < p.m; ++t) {
    const Point2D& bs = real.layout.centers[t];
    double gain_sum = 0.0;
    for (const Point2D& node : real.nodes)
      gain_sum += guarded_gain(real, bs, node, clamped);
    rep.per_cell_dl[t] =
        p.W * static_cast<double>(p.ell) * std::log1p(snr_scale * gain_sum) / ln2;
  }
  rep.clamped_pairs = clamped;

  double worst = std::numeric_limits<double>::infinity();
  for (const double t : rep.per_cell_dl) worst = std::min(worst, t);
  rep.ub_per_node_dl =
      (static_cast<double>(p.m) / static_cast<double>(p.n)) * worst;
  return rep;
}

CutsetReport cutset_ul(const NetworkRealization& real) {
  const auto& p = real.params;
  CutsetReport rep;
  rep.per_node_ul.resize(p.n);

  const double snr_scale = real.constants.P / (p.W * real.constants.N0);
  const double ell = static_cast<double>(p.ell);
  const double ln2 = std::log(2.0);

  // O(n^2) pair scan; chunked across threads for the large instances.
  const std::uint64_t n = p.n;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (n < 4096) workers = 1;

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> clamped_total{0};
  auto work = [&]() {
    std::uint64_t clamped = 0;
    constexpr std::uint64_t kChunk = 64;
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= n) break;
      const std::uint64_t end = std::min(begin + kChunk, n);
      for (std::uint64_t u = begin; u < end; ++u) {
        const Point2D& self = real.nodes[u];
        double node_sum = 0.0;
        for (std::uint64_t r = 0; r < n; ++r) {
          if (r == u) continue;
          node_sum += guarded_gain(real, self, real.nodes[r], clamped);
        }
        double bs_sum = 0.0;
        for (const Point2D& bs : real.layout.centers)
          bs_sum += guarded_gain(real, self, bs, clamped);
        rep.per_node_ul[u] =
            p.W * std::log1p(snr_scale * (node_sum + ell * bs_sum)) / ln2;
      }
    }
    clamped_total.fetch_add(clamped);
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  rep.clamped_pairs = clamped_total.load();

  double worst = std::numeric_limits<double>::infinity();
  for (const double t : rep.per_node_ul) worst = std::min(worst, t);
  rep.ub_per_node_ul = worst;
  return rep;
}

}  // namespace cellscale
