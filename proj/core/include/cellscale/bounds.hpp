#pragma once

#include <cstdint>
#include <vector>

#include "cellscale/geometry.hpp"

namespace cellscale {

// Information-theoretic rate ceilings from cuts that isolate each base
// station (downlink) or each node (uplink) from the rest of the network.
struct CutsetReport {
  std::vector<double> per_cell_dl;  // aggregate rate T^t across BS t's cut
  std::vector<double> per_node_ul;  // rate T_u across node u's cut
  double ub_per_node_dl = 0.0;      // (m/n) * min_t per_cell_dl[t]
  double ub_per_node_ul = 0.0;      // min_u per_node_ul[u]
  std::uint64_t clamped_pairs = 0;  // links lengthened to the far-field floor
};

// Downlink: each BS t radiates total power P_BS split equally over its ell
// streams; the cut collects every node's gain, so
//   T^t = W * ell * log2(1 + (P_BS / (W N0)) * sum_r d_{t,r}^{-alpha}).
CutsetReport cutset_dl(const NetworkRealization& real);

// Uplink: node u's cut sees every other node once and every BS ell times
// (one antenna per stream), each transmitting at P:
//   T_u = W * log2(1 + (P / (W N0)) * (sum_{r != u} d^{-a} + ell * sum_b d^{-a})).
CutsetReport cutset_ul(const NetworkRealization& real);

}  // namespace cellscale
