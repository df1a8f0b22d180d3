#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cellscale/geometry.hpp"
#include "cellscale/params.hpp"

namespace cellscale {

// Multihop routes over one cell's subcell grid.  A route lists grid indices
// from the node's own subcell to the head subcell (the one adjacent to, or
// equal to, the BS subcell).  relay_load counts, per subcell, the routes
// that transmit from it in the uplink direction (node subcell through the
// last relay before the head); downlink loads are the mirror image and are
// derived from the routes where needed.
struct RoutePlan {
  struct Route {
    std::vector<int> subcells;  // grid indices; partial when failed
    bool failed = false;
  };
  std::uint32_t cell = 0;
  std::vector<std::uint32_t> nodes;       // node ids routed here
  std::vector<Route> routes;              // parallel to nodes
  std::vector<std::uint32_t> relay_load;  // per subcell index, uplink sense
};

// Greedy descent toward the BS: from the node's subcell, step to the
// occupied adjacent subcell whose center is nearest the BS until adjacent
// to the BS subcell.  Nodes whose descent strands (no occupied unvisited
// neighbor) get failed routes and a zero rate.
RoutePlan imh_build_routes(const NetworkRealization& real,
                           const SubcellGrid& grid);

// Per-node outcome of one protocol run.
struct NodeDiag {
  double duty = 0.0;           // time share of the bottleneck link
  double bandwidth = 0.0;      // Hz seen by the node's stream
  double head_sinr = 0.0;      // BS link (IMH) or access link (ISH/IRH)
  double worst_hop_sinr = 0.0; // 0 when the node has no relay hops
  std::uint32_t hops = 0;
  bool failed = false;
};

struct RateReport {
  Protocol protocol = Protocol::ISH;
  Direction direction = Direction::DL;
  LoadMode mode = LoadMode::paper_faithful;
  std::vector<double> per_node_rate;
  double min_rate = 0.0;
  bool rn_used = false;          // meaningful for IRH only
  std::uint64_t failures = 0;    // nodes with no usable route
  std::vector<NodeDiag> diag;    // parallel to per_node_rate
  // Reference power for the worst-case interferer model used in analysis
  // (max(P_BS, P) toward nodes, P toward base stations); diagnostic only.
  double worst_case_interferer_power = 0.0;
};

// Single-hop MU-MIMO: each cell splits its nodes (sorted by BS distance)
// into groups of ell sharing one FDMA subchannel of width (m ell / n) W.
RateReport ish_rates(const NetworkRealization& real, Direction dir);

// Multihop over routing subcells: a spatially multiplexed BS head link plus
// 7-colored subcell-to-subcell relay hops.  paper_faithful applies the
// nominal m ell / n time share to every hop; exact_load divides each hop
// slot by the transmitting subcell's actual route count.
RateReport imh_rates(const NetworkRealization& real, Direction dir,
                     LoadMode mode);

// Relay-station hierarchy: FDMA access to the nearest of m + k access
// points, relay-lattice backhaul to the BS, optimal time split between the
// phases.  Falls back to ish_rates when the exponents say RNs do not pay.
RateReport irh_rates(const NetworkRealization& real, Direction dir);

// Optimal decode-and-forward time split between an access link of
// full-time rate a and a backhaul share of full-time rate b:
// tau = b/(a+b) of the time on access, effective rate a b/(a+b).
std::pair<double, double> tau_star(double a, double b);

}  // namespace cellscale
