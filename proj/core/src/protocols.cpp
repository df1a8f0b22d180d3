#include "cellscale/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "cellscale/channel.hpp"
#include "cellscale/theory.hpp"

namespace cellscale {

namespace {

constexpr double kInvLn2 = 1.4426950408889634;
constexpr double kSlot = 1.0 / 7.0;  // collision-free schedule share

inline double log_term(double sinr) { return std::log1p(sinr) * kInvLn2; }

inline double link_gain(const NetworkRealization& real, const Point2D& p,
                        const Point2D& q) {
  return path_gain(real.link_distance(p, q), real.exponents.alpha);
}

double min_rate_of(const std::vector<double>& rates) {
  double worst = std::numeric_limits<double>::infinity();
  for (const double r : rates) worst = std::min(worst, r);
  return rates.empty() ? 0.0 : worst;
}

// Cell member lists sorted by distance to the BS (ties by node id), the
// grouping used by the single-hop subchannel assignment.
std::vector<std::vector<std::uint32_t>> sorted_cell_members(
    const NetworkRealization& real) {
  std::vector<std::vector<std::uint32_t>> members(real.params.m);
  for (std::uint32_t u = 0; u < real.nodes.size(); ++u)
    members[real.cell_of_node[u]].push_back(u);
  for (std::uint64_t t = 0; t < real.params.m; ++t) {
    const Point2D bs = real.layout.centers[t];
    std::sort(members[t].begin(), members[t].end(),
              [&](std::uint32_t a, std::uint32_t b) {
                const double da = real.layout.distance(real.nodes[a], bs);
                const double db = real.layout.distance(real.nodes[b], bs);
                if (da != db) return da < db;
                return a < b;
              });
  }
  return members;
}

}  // namespace

std::pair<double, double> tau_star(double a, double b) {
  if (a <= 0.0 && b <= 0.0) return {0.5, 0.0};
  const double tau = b / (a + b);
  return {tau, a * b / (a + b)};
}

RateReport ish_rates(const NetworkRealization& real, Direction dir) {
  const InstanceParams& p = real.params;
  const ModelConstants& c = real.constants;
  const double m_over_n =
      static_cast<double>(p.m) / static_cast<double>(p.n);
  const double ell = static_cast<double>(p.ell);
  const double w_sub = m_over_n * ell * p.W;  // per-group subchannel width

  RateReport rep;
  rep.protocol = Protocol::ISH;
  rep.direction = dir;
  rep.per_node_rate.assign(p.n, 0.0);
  rep.diag.assign(p.n, {});
  rep.worst_case_interferer_power =
      dir == Direction::DL ? std::max(c.P_BS, c.P) : c.P;

  const auto members = sorted_cell_members(real);
  std::vector<std::uint32_t> group_count(p.m, 0);
  std::vector<std::uint32_t> group_of(p.n, 0);
  std::uint32_t max_groups = 0;
  for (std::uint64_t t = 0; t < p.m; ++t) {
    group_count[t] = static_cast<std::uint32_t>(
        (members[t].size() + p.ell - 1) / p.ell);
    max_groups = std::max(max_groups, group_count[t]);
    for (std::size_t i = 0; i < members[t].size(); ++i)
      group_of[members[t][i]] = static_cast<std::uint32_t>(i / p.ell);
  }

  if (dir == Direction::DL) {
    // Each BS spends (m/n) P_BS per stream; a group's ell streams add
    // coherently at the served node and as ell-power interference at
    // out-of-cell nodes reusing the subchannel.
    const double stream_power = m_over_n * c.P_BS;
    for (std::uint32_t u = 0; u < p.n; ++u) {
      const std::uint32_t t = real.cell_of_node[u];
      const std::uint32_t g = group_of[u];
      const double own = link_gain(real, real.nodes[u], real.layout.centers[t]);
      const double signal = ell * stream_power * own;
      const double self_int = (ell - 1.0) * stream_power * own;
      double out = 0.0;
      for (std::uint64_t o = 0; o < p.m; ++o) {
        if (o == t || group_count[o] <= g) continue;
        out += ell * stream_power *
               link_gain(real, real.nodes[u], real.layout.centers[o]);
      }
      const double denom = self_int + w_sub * c.N0 + out;
      const double sinr = signal / denom;
      rep.per_node_rate[u] = w_sub * log_term(sinr);
      rep.diag[u].duty = 1.0;
      rep.diag[u].bandwidth = w_sub;
      rep.diag[u].head_sinr = sinr;
    }
  } else {
    // Receiving BS t on subchannel g hears its own group (array gain ell,
    // cross streams as self-interference) plus every other cell's group g.
    for (std::uint32_t g = 0; g < max_groups; ++g) {
      std::vector<double> total(p.m, 0.0);  // all group-g power at each BS
      for (std::uint64_t o = 0; o < p.m; ++o) {
        if (group_count[o] <= g) continue;
        const std::size_t lo = static_cast<std::size_t>(g) * p.ell;
        const std::size_t hi =
            std::min(members[o].size(), lo + static_cast<std::size_t>(p.ell));
        for (std::size_t i = lo; i < hi; ++i) {
          const Point2D& pos = real.nodes[members[o][i]];
          for (std::uint64_t t = 0; t < p.m; ++t)
            total[t] += c.P * link_gain(real, pos, real.layout.centers[t]);
        }
      }
      for (std::uint64_t t = 0; t < p.m; ++t) {
        if (group_count[t] <= g) continue;
        const std::size_t lo = static_cast<std::size_t>(g) * p.ell;
        const std::size_t hi =
            std::min(members[t].size(), lo + static_cast<std::size_t>(p.ell));
        double own_cell = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
          own_cell += c.P * link_gain(real, real.nodes[members[t][i]],
                                      real.layout.centers[t]);
        for (std::size_t i = lo; i < hi; ++i) {
          const std::uint32_t u = members[t][i];
          const double own =
              link_gain(real, real.nodes[u], real.layout.centers[t]);
          const double signal = ell * c.P * own;
          const double self_int = (ell - 1.0) * c.P * own;
          const double out = total[t] - own_cell;
          const double denom = self_int + w_sub * c.N0 + out;
          const double sinr = signal / denom;
          rep.per_node_rate[u] = w_sub * log_term(sinr);
          rep.diag[u].duty = 1.0;
          rep.diag[u].bandwidth = w_sub;
          rep.diag[u].head_sinr = sinr;
        }
      }
    }
  }

  rep.min_rate = min_rate_of(rep.per_node_rate);
  return rep;
}

RoutePlan imh_build_routes(const NetworkRealization& real,
                           const SubcellGrid& grid) {
  RoutePlan plan;
  plan.cell = grid.cell;
  plan.relay_load.assign(grid.subcells.size(), 0);
  for (std::uint32_t u = 0; u < real.nodes.size(); ++u)
    if (real.cell_of_node[u] == grid.cell) plan.nodes.push_back(u);
  plan.routes.resize(plan.nodes.size());

  static constexpr int kDelta[6][2] = {{1, 0}, {-1, 0}, {0, 1},
                                       {0, -1}, {1, -1}, {-1, 1}};
  const Point2D bs = real.layout.centers[grid.cell];
  const Subcell& bsc = grid.subcells[grid.bs_subcell];

  for (std::size_t r = 0; r < plan.nodes.size(); ++r) {
    RoutePlan::Route& route = plan.routes[r];
    int cur = grid.subcell_of_point(real.nodes[plan.nodes[r]]);
    route.subcells.push_back(cur);
    while (cur != grid.bs_subcell &&
           !axial_adjacent(grid.subcells[cur].i, grid.subcells[cur].j, bsc.i,
                           bsc.j)) {
      int best = -1;
      double best_d = 0.0;
      for (const auto& d : kDelta) {
        const int cand =
            grid.find(grid.subcells[cur].i + d[0], grid.subcells[cur].j + d[1]);
        if (cand < 0 || grid.subcells[cand].occupant < 0) continue;
        if (std::find(route.subcells.begin(), route.subcells.end(), cand) !=
            route.subcells.end())
          continue;
        const double dist =
            real.layout.distance(grid.subcells[cand].center, bs);
        if (best < 0 || dist < best_d) {
          best = cand;
          best_d = dist;
        }
      }
      if (best < 0) {
        route.failed = true;  // stranded: no occupied subcell to step to
        break;
      }
      cur = best;
      route.subcells.push_back(cur);
    }
    if (!route.failed)
      for (std::size_t i = 0; i + 1 < route.subcells.size(); ++i)
        ++plan.relay_load[route.subcells[i]];
  }
  return plan;
}

namespace {

// One steady-state relay transmitter: the occupant of an occupied non-BS
// subcell, active in its color's slot.
struct RelayEntry {
  Point2D pos;
  std::uint32_t cell;
  int subcell;
};

inline std::uint64_t edge_key(std::uint32_t cell, int a, int b) {
  return (static_cast<std::uint64_t>(cell) << 42) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 21) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

RateReport imh_rates(const NetworkRealization& real, Direction dir,
                     LoadMode mode) {
  const InstanceParams& p = real.params;
  const ModelConstants& c = real.constants;
  const double ell = static_cast<double>(p.ell);
  const double head_share =
      static_cast<double>(p.m) * ell / static_cast<double>(p.n);
  const double noise = p.W * c.N0;

  RateReport rep;
  rep.protocol = Protocol::IMH;
  rep.direction = dir;
  rep.mode = mode;
  rep.per_node_rate.assign(p.n, 0.0);
  rep.diag.assign(p.n, {});
  rep.worst_case_interferer_power =
      dir == Direction::DL ? std::max(c.P_BS, c.P) : c.P;

  std::vector<SubcellGrid> grids;
  grids.reserve(p.m);
  std::vector<RoutePlan> plans;
  plans.reserve(p.m);
  for (std::uint64_t t = 0; t < p.m; ++t) {
    grids.push_back(build_subcells(real, static_cast<std::uint32_t>(t)));
    plans.push_back(imh_build_routes(real, grids.back()));
  }

  // Downlink forwarding loads mirror the stored uplink ones: a route's
  // transmitters are every subcell past the first.
  std::vector<std::vector<std::uint32_t>> load_dl;
  if (mode == LoadMode::exact_load && dir == Direction::DL) {
    load_dl.resize(p.m);
    for (std::uint64_t t = 0; t < p.m; ++t) {
      load_dl[t].assign(grids[t].subcells.size(), 0);
      for (const auto& route : plans[t].routes) {
        if (route.failed) continue;
        for (std::size_t i = 1; i < route.subcells.size(); ++i)
          ++load_dl[t][route.subcells[i]];
      }
    }
  }

  // Global relay layer, split by schedule color.
  std::array<std::vector<RelayEntry>, 7> pool;
  for (std::uint64_t t = 0; t < p.m; ++t) {
    for (std::size_t s = 0; s < grids[t].subcells.size(); ++s) {
      const Subcell& sc = grids[t].subcells[s];
      if (static_cast<int>(s) == grids[t].bs_subcell || sc.occupant < 0)
        continue;
      pool[sc.color].push_back(
          RelayEntry{real.nodes[static_cast<std::uint32_t>(sc.occupant)],
                     static_cast<std::uint32_t>(t), static_cast<int>(s)});
    }
  }

  // Every link — relay hop or head — runs in its subcell's color slot, so
  // the interference it hears is the same-color transmitter layer minus the
  // link's own subcell; the reuse distance keeps every such interferer at
  // least a spacing away from the victim.
  auto slot_interference = [&](const Point2D& rx, std::uint32_t cell,
                               int tx_subcell) {
    double sum = 0.0;
    for (const RelayEntry& e :
         pool[grids[cell].subcells[tx_subcell].color]) {
      if (e.cell == cell && e.subcell == tx_subcell) continue;
      sum += c.P * link_gain(real, rx, e.pos);
    }
    return sum;
  };

  // Uplink head links all terminate at a BS: precompute the color layers
  // heard there once per cell.
  std::vector<std::array<double, 7>> colors_at_bs;
  if (dir == Direction::UL) {
    colors_at_bs.assign(p.m, {});
    for (std::uint64_t t = 0; t < p.m; ++t) {
      const Point2D bs = real.layout.centers[t];
      for (int col = 0; col < 7; ++col)
        for (const RelayEntry& e : pool[col])
          colors_at_bs[t][col] += c.P * link_gain(real, bs, e.pos);
    }
  }

  const double head_tx_power = dir == Direction::DL ? c.P_BS / ell : c.P;

  // Head-link rate for cell t with endpoint at pos (the head relay, or the
  // node itself on one-subcell routes); head_subcell indexes the endpoint's
  // subcell so its own relay entry is not double counted.
  auto head_rate_at = [&](std::uint32_t t, const Point2D& pos,
                          int head_subcell, double& sinr_out) {
    const Point2D bs = real.layout.centers[t];
    const double own = link_gain(real, bs, pos);
    const double signal = ell * head_tx_power * own;
    const double self_int = (ell - 1.0) * head_tx_power * own;
    double inter = 0.0;
    if (dir == Direction::DL) {
      for (std::uint64_t o = 0; o < p.m; ++o)
        if (o != t)
          inter += c.P_BS * link_gain(real, pos, real.layout.centers[o]);
      inter += slot_interference(pos, t, head_subcell);
    } else {
      const Subcell& sc = grids[t].subcells[head_subcell];
      inter += colors_at_bs[t][sc.color];
      // The head subcell's own pool entry is the link, not interference.
      if (head_subcell != grids[t].bs_subcell && sc.occupant >= 0)
        inter -= c.P * link_gain(real, bs,
                                 real.nodes[static_cast<std::uint32_t>(
                                     sc.occupant)]);
    }
    sinr_out = signal / (self_int + noise + inter);
    return head_share * p.W * log_term(sinr_out);
  };

  std::unordered_map<std::uint64_t, double> hop_sinr_cache;
  std::unordered_map<std::uint64_t, double> head_rate_cache;
  std::unordered_map<std::uint64_t, double> head_sinr_cache;

  auto hop_sinr = [&](const Point2D& tx, const Point2D& rx, std::uint32_t cell,
                      int tx_subcell) {
    const double signal = c.P * link_gain(real, tx, rx);
    return signal / (noise + slot_interference(rx, cell, tx_subcell));
  };

  auto hop_factor = [&](std::uint32_t t, int tx_subcell) {
    if (mode == LoadMode::paper_faithful) return head_share;
    const std::uint32_t load = dir == Direction::UL
                                   ? plans[t].relay_load[tx_subcell]
                                   : load_dl[t][tx_subcell];
    return 1.0 / static_cast<double>(load);
  };

  for (std::uint64_t t = 0; t < p.m; ++t) {
    const SubcellGrid& grid = grids[t];
    const RoutePlan& plan = plans[t];
    auto occupant_pos = [&](int s) {
      return real.nodes[static_cast<std::uint32_t>(grid.subcells[s].occupant)];
    };

    for (std::size_t r = 0; r < plan.nodes.size(); ++r) {
      const std::uint32_t u = plan.nodes[r];
      const RoutePlan::Route& route = plan.routes[r];
      NodeDiag& diag = rep.diag[u];
      if (route.failed) {
        diag.failed = true;
        ++rep.failures;
        continue;
      }
      const std::size_t len = route.subcells.size();
      const int head_sc = route.subcells.back();
      diag.hops = static_cast<std::uint32_t>(len - 1);
      diag.bandwidth = p.W;

      double head_rate;
      double head_sinr;
      if (len == 1) {
        head_rate = head_rate_at(static_cast<std::uint32_t>(t),
                                 real.nodes[u], head_sc, head_sinr);
      } else {
        const std::uint64_t key = edge_key(static_cast<std::uint32_t>(t),
                                           head_sc, head_sc);
        const auto it = head_rate_cache.find(key);
        if (it != head_rate_cache.end()) {
          head_rate = it->second;
          head_sinr = head_sinr_cache[key];
        } else {
          head_rate = head_rate_at(static_cast<std::uint32_t>(t),
                                   occupant_pos(head_sc), head_sc, head_sinr);
          head_rate_cache.emplace(key, head_rate);
          head_sinr_cache.emplace(key, head_sinr);
        }
      }
      diag.head_sinr = head_sinr;

      double node_rate = head_rate;
      double bottleneck_duty = head_share;
      double worst_hop_sinr = 0.0;
      // Walk the relay hops: tx index i toward rx index i +/- 1 depending
      // on direction; node-endpoint hops are unique, relay-relay hops are
      // shared across routes and cached.
      for (std::size_t i = 0; i + 1 < len; ++i) {
        int tx_sc, rx_sc;
        if (dir == Direction::UL) {
          tx_sc = route.subcells[i];
          rx_sc = route.subcells[i + 1];
        } else {
          tx_sc = route.subcells[i + 1];
          rx_sc = route.subcells[i];
        }
        // The hop adjacent to the node (first uplink, last downlink) has
        // the node itself as an endpoint; all others join two occupants.
        const bool node_endpoint = i == 0;
        double sinr;
        if (node_endpoint) {
          const Point2D tx_pos = dir == Direction::UL
                                     ? real.nodes[u]
                                     : occupant_pos(tx_sc);
          const Point2D rx_pos = dir == Direction::UL
                                     ? occupant_pos(rx_sc)
                                     : real.nodes[u];
          sinr = hop_sinr(tx_pos, rx_pos, static_cast<std::uint32_t>(t),
                          tx_sc);
        } else {
          const std::uint64_t key =
              edge_key(static_cast<std::uint32_t>(t), tx_sc, rx_sc);
          const auto it = hop_sinr_cache.find(key);
          if (it != hop_sinr_cache.end()) {
            sinr = it->second;
          } else {
            sinr = hop_sinr(occupant_pos(tx_sc), occupant_pos(rx_sc),
                            static_cast<std::uint32_t>(t), tx_sc);
            hop_sinr_cache.emplace(key, sinr);
          }
        }
        const double factor =
            hop_factor(static_cast<std::uint32_t>(t), tx_sc);
        const double rate = factor * kSlot * p.W * log_term(sinr);
        worst_hop_sinr =
            worst_hop_sinr == 0.0 ? sinr : std::min(worst_hop_sinr, sinr);
        if (rate < node_rate) {
          node_rate = rate;
          bottleneck_duty = factor * kSlot;
        }
      }
      diag.worst_hop_sinr = worst_hop_sinr;
      diag.duty = bottleneck_duty;
      rep.per_node_rate[u] = node_rate;
    }
  }

  rep.min_rate = min_rate_of(rep.per_node_rate);
  return rep;
}

namespace {

inline std::uint64_t rn_pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

RateReport irh_rates(const NetworkRealization& real, Direction dir) {
  if (!rn_switch_decision(dir, real.exponents)) {
    RateReport rep = ish_rates(real, dir);
    rep.protocol = Protocol::IRH;
    rep.rn_used = false;
    return rep;
  }

  const InstanceParams& p = real.params;
  const ModelConstants& c = real.constants;
  const std::uint64_t m = p.m;
  const std::uint64_t k = p.k;
  const std::size_t n_ap = m + k;
  const double split = static_cast<double>(n_ap) / static_cast<double>(p.n);
  const double w_acc = p.W * split;
  const double noise = p.W * c.N0;

  RateReport rep;
  rep.protocol = Protocol::IRH;
  rep.direction = dir;
  rep.rn_used = true;
  rep.per_node_rate.assign(p.n, 0.0);
  rep.diag.assign(p.n, {});
  rep.worst_case_interferer_power =
      dir == Direction::DL ? std::max(c.P_BS, c.P) : c.P;

  auto ap_pos = [&](std::size_t a) -> const Point2D& {
    return a < m ? real.layout.centers[a] : real.rns.positions[a - m];
  };
  auto ap_power = [&](std::size_t a) { return a < m ? c.P_BS : c.P_RN; };

  // Access phase: every node talks to its nearest access point over an FDMA
  // subchannel of width W (m+k)/n; the subchannel index within the AP is its
  // rank in node-id order, so interference pairs up across APs.
  std::vector<std::uint32_t> assoc(p.n);
  for (std::uint32_t u = 0; u < p.n; ++u) {
    std::size_t best = 0;
    double best_d = real.layout.distance(real.nodes[u], ap_pos(0));
    for (std::size_t a = 1; a < n_ap; ++a) {
      const double d = real.layout.distance(real.nodes[u], ap_pos(a));
      if (d < best_d) {
        best_d = d;
        best = a;
      }
    }
    assoc[u] = static_cast<std::uint32_t>(best);
  }
  std::vector<std::vector<std::uint32_t>> ap_members(n_ap);
  for (std::uint32_t u = 0; u < p.n; ++u) ap_members[assoc[u]].push_back(u);
  std::vector<std::uint32_t> rank(p.n, 0);
  for (const auto& list : ap_members)
    for (std::size_t i = 0; i < list.size(); ++i)
      rank[list[i]] = static_cast<std::uint32_t>(i);

  std::vector<double> access(p.n, 0.0);
  std::vector<double> access_sinr(p.n, 0.0);
  for (std::uint32_t u = 0; u < p.n; ++u) {
    const std::size_t a = assoc[u];
    const std::uint32_t g = rank[u];
    double signal, inter = 0.0;
    if (dir == Direction::DL) {
      signal = split * ap_power(a) *
               link_gain(real, real.nodes[u], ap_pos(a));
      for (std::size_t o = 0; o < n_ap; ++o) {
        if (o == a || ap_members[o].size() <= g) continue;
        inter += split * ap_power(o) *
                 link_gain(real, real.nodes[u], ap_pos(o));
      }
    } else {
      signal = c.P * link_gain(real, real.nodes[u], ap_pos(a));
      for (std::size_t o = 0; o < n_ap; ++o) {
        if (o == a || ap_members[o].size() <= g) continue;
        inter += c.P *
                 link_gain(real, ap_pos(a), real.nodes[ap_members[o][g]]);
      }
    }
    access_sinr[u] = signal / (w_acc * c.N0 + inter);
    access[u] = w_acc * log_term(access_sinr[u]);
  }

  // Backhaul phase: each cell's relay stations form a lattice; traffic
  // descends it toward the BS along strictly-BS-ward adjacent steps.
  std::vector<std::vector<std::uint32_t>> cell_rns(m);
  for (std::uint32_t r = 0; r < k; ++r)
    cell_rns[real.rns.cell_of_rn[r]].push_back(r);
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> axial_index(m);
  auto axial_key = [](int i, int j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
  };
  for (std::uint32_t r = 0; r < k; ++r)
    axial_index[real.rns.cell_of_rn[r]].emplace(
        axial_key(real.rns.axial[r].first, real.rns.axial[r].second), r);

  static constexpr int kDelta[6][2] = {{1, 0}, {-1, 0}, {0, 1},
                                       {0, -1}, {1, -1}, {-1, 1}};
  std::vector<std::vector<std::uint32_t>> route_of(k);  // r .. head
  for (std::uint32_t r = 0; r < k; ++r) {
    const std::uint32_t t = real.rns.cell_of_rn[r];
    const Point2D bs = real.layout.centers[t];
    std::uint32_t cur = r;
    route_of[r].push_back(cur);
    for (;;) {
      const auto [ci, cj] = real.rns.axial[cur];
      const double cur_d =
          real.layout.distance(real.rns.positions[cur], bs);
      std::uint32_t best = cur;
      double best_d = cur_d;
      for (const auto& d : kDelta) {
        const auto it = axial_index[t].find(axial_key(ci + d[0], cj + d[1]));
        if (it == axial_index[t].end()) continue;
        const double cd =
            real.layout.distance(real.rns.positions[it->second], bs);
        if (cd < best_d) {
          best_d = cd;
          best = it->second;
        }
      }
      if (best == cur) break;  // no adjacent RN strictly nearer: head
      cur = best;
      route_of[r].push_back(cur);
    }
  }
  std::vector<double> ell_eff(m, 1.0);
  for (std::uint64_t t = 0; t < m; ++t)
    ell_eff[t] = static_cast<double>(
        std::min<std::uint64_t>(p.ell, cell_rns[t].size()));

  // Same-color relay pools over the RN lattice.
  std::array<std::vector<std::uint32_t>, 7> rn_pool;
  for (std::uint32_t r = 0; r < k; ++r)
    rn_pool[seven_color(real.rns.axial[r].first, real.rns.axial[r].second)]
        .push_back(r);

  auto rn_hop_sinr = [&](std::uint32_t tx, const Point2D& rx) {
    const double signal =
        c.P_RN * link_gain(real, real.rns.positions[tx], rx);
    double inter = 0.0;
    for (const std::uint32_t o :
         rn_pool[seven_color(real.rns.axial[tx].first,
                             real.rns.axial[tx].second)]) {
      if (o == tx) continue;
      inter += c.P_RN * link_gain(real, rx, real.rns.positions[o]);
    }
    return signal / (noise + inter);
  };

  // A head link runs in its RN's color slot and hears the same-color RN
  // layer, exactly like a relay hop.
  auto rn_slot_interference = [&](const Point2D& rx, std::uint32_t link_rn) {
    double sum = 0.0;
    for (const std::uint32_t o :
         rn_pool[seven_color(real.rns.axial[link_rn].first,
                             real.rns.axial[link_rn].second)]) {
      if (o == link_rn) continue;
      sum += c.P_RN * link_gain(real, rx, real.rns.positions[o]);
    }
    return sum;
  };

  std::unordered_map<std::uint64_t, double> hop_cache;   // (tx, rx) -> sinr
  std::unordered_map<std::uint32_t, double> head_cache;  // head rn -> rate
  std::unordered_map<std::uint32_t, double> head_sinr_cache;

  auto head_rate_of = [&](std::uint32_t head) {
    const auto it = head_cache.find(head);
    if (it != head_cache.end()) return it->second;
    const std::uint32_t t = real.rns.cell_of_rn[head];
    const Point2D bs = real.layout.centers[t];
    const double le = ell_eff[t];
    const double own =
        link_gain(real, bs, real.rns.positions[head]);
    double signal, self_int, inter;
    if (dir == Direction::DL) {
      signal = c.P_BS * own;
      self_int = (le - 1.0) * (c.P_BS / le) * own;
      inter = 0.0;
      const Point2D& rx = real.rns.positions[head];
      for (std::uint64_t o = 0; o < m; ++o)
        if (o != t)
          inter += c.P_BS * link_gain(real, rx, real.layout.centers[o]);
      inter += rn_slot_interference(rx, head);
    } else {
      signal = le * c.P_RN * own;
      self_int = (le - 1.0) * c.P_RN * own;
      inter = rn_slot_interference(bs, head);
    }
    const double sinr = signal / (self_int + noise + inter);
    const double share =
        static_cast<double>(m) * le / static_cast<double>(k);
    const double rate = share * p.W * log_term(sinr);
    head_cache.emplace(head, rate);
    head_sinr_cache.emplace(head, sinr);
    return rate;
  };

  // Per-RN backhaul rate: bottleneck of its route's hops and its head link.
  std::vector<double> backhaul(k, 0.0);
  std::vector<double> backhaul_sinr(k, 0.0);  // worst hop on the route
  for (std::uint32_t r = 0; r < k; ++r) {
    const std::uint32_t t = real.rns.cell_of_rn[r];
    const double share =
        static_cast<double>(m) * ell_eff[t] / static_cast<double>(k);
    const std::vector<std::uint32_t>& route = route_of[r];
    double rate = head_rate_of(route.back());
    double worst_sinr = 0.0;
    for (std::size_t i = 0; i + 1 < route.size(); ++i) {
      // Uplink climbs toward the head; downlink mirrors it.
      const std::uint32_t tx =
          dir == Direction::UL ? route[i] : route[i + 1];
      const std::uint32_t rx =
          dir == Direction::UL ? route[i + 1] : route[i];
      const std::uint64_t key = rn_pair_key(tx, rx);
      double sinr;
      const auto it = hop_cache.find(key);
      if (it != hop_cache.end()) {
        sinr = it->second;
      } else {
        sinr = rn_hop_sinr(tx, real.rns.positions[rx]);
        hop_cache.emplace(key, sinr);
      }
      worst_sinr = worst_sinr == 0.0 ? sinr : std::min(worst_sinr, sinr);
      rate = std::min(rate, share * kSlot * p.W * log_term(sinr));
    }
    backhaul[r] = rate;
    backhaul_sinr[r] = worst_sinr;
  }

  // Combine: BS-associated nodes are done after the access phase; RN
  // associated nodes split time between access and their RN's backhaul
  // share, (k/n) of the per-RN rate.
  const double per_node_share =
      static_cast<double>(k) / static_cast<double>(p.n);
  for (std::uint32_t u = 0; u < p.n; ++u) {
    NodeDiag& diag = rep.diag[u];
    diag.bandwidth = w_acc;
    diag.head_sinr = access_sinr[u];
    if (assoc[u] < m) {
      rep.per_node_rate[u] = access[u];
      diag.duty = 1.0;
      continue;
    }
    const std::uint32_t r = assoc[u] - static_cast<std::uint32_t>(m);
    const double b = per_node_share * backhaul[r];
    const auto [tau, effective] = tau_star(access[u], b);
    rep.per_node_rate[u] = effective;
    diag.duty = tau;
    diag.worst_hop_sinr = backhaul_sinr[r];
    diag.hops = static_cast<std::uint32_t>(route_of[r].size() - 1);
  }

  rep.min_rate = min_rate_of(rep.per_node_rate);
  return rep;
}

}  // namespace cellscale
