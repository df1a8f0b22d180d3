#include "cellscale/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "cellscale/rng.hpp"

namespace cellscale {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

inline std::uint64_t axial_key(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

inline double sq(double v) { return v * v; }

}  // namespace

double HexLayout::distance(const Point2D& p, const Point2D& q) const {
  double dx = std::abs(p.x - q.x);
  double dy = std::abs(p.y - q.y);
  if (wrap) {
    dx = std::min(dx, width - dx);
    dy = std::min(dy, height - dy);
  }
  return std::hypot(dx, dy);
}

std::size_t HexLayout::nearest_center(const Point2D& p) const {
  std::size_t best = 0;
  double best_d = distance(p, centers[0]);
  for (std::size_t t = 1; t < centers.size(); ++t) {
    const double d = distance(p, centers[t]);
    if (d < best_d) {
      best_d = d;
      best = t;
    }
  }
  return best;
}

HexLayout hex_layout(std::uint64_t m, double area, bool wrap) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (!(area > 0.0)) throw std::invalid_argument("area must be > 0");

  HexLayout layout;
  layout.wrap = wrap;
  layout.cell_area = area / static_cast<double>(m);
  layout.r_cell = std::sqrt(2.0 * layout.cell_area / (3.0 * kSqrt3));
  const double side = std::sqrt(area);
  layout.width = side;
  layout.height = side;

  // Near-square arrangement; alternate rows are offset by half a pitch so
  // the nearest-center cells are (approximately) hexagons.
  const auto cols = static_cast<std::uint64_t>(
      std::ceil(std::sqrt(static_cast<double>(m))));
  const std::uint64_t rows = (m + cols - 1) / cols;
  layout.centers.reserve(m);
  for (std::uint64_t j = 0; j < rows && layout.centers.size() < m; ++j) {
    const double off = (rows == 1) ? 0.0 : ((j % 2 == 0) ? -0.25 : 0.25);
    for (std::uint64_t i = 0; i < cols && layout.centers.size() < m; ++i) {
      layout.centers.push_back(
          {side * (static_cast<double>(i) + 0.5 + off) /
               static_cast<double>(cols),
           side * (static_cast<double>(j) + 0.5) / static_cast<double>(rows)});
    }
  }
  return layout;
}

std::vector<Point2D> place_nodes(std::uint64_t n, const HexLayout& layout,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point2D> nodes;
  nodes.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = uniform01(rng) * layout.width;
    const double y = uniform01(rng) * layout.height;
    nodes.push_back({x, y});
  }
  return nodes;
}

RnPlacement place_rns(std::uint64_t k, const HexLayout& layout) {
  const std::uint64_t m = layout.centers.size();
  if (k < m) throw std::invalid_argument("k must be >= m");

  // Shrink the nominal density-matched spacing so that a hexagon-shaped
  // cell keeps every selected subgrid point strictly inside.
  constexpr double kFit = 0.75;
  // Offset direction avoids the cell-edge normals (multiples of 60 deg),
  // keeping the half-spacing offset point clear of cell boundaries.
  constexpr double kOffX = 0.766044443118978;   // cos 40 deg
  constexpr double kOffY = 0.6427876096865393;  // sin 40 deg

  RnPlacement rn;
  rn.positions.reserve(k);
  rn.cell_of_rn.reserve(k);
  rn.axial.reserve(k);

  const std::uint64_t base = k / m;
  const std::uint64_t rem = k % m;
  for (std::uint64_t t = 0; t < m; ++t) {
    const std::uint64_t c = base + (t < rem ? 1 : 0);

    // Candidate lattice points in unit spacing, sorted by lattice norm
    // (then distance to the BS, then coordinates): the c nearest points
    // form a compact patch around the cell center.  The selection order is
    // scale-free, so the spacing can be fixed afterwards.
    const int q = static_cast<int>(
                      std::ceil(0.525 * std::sqrt(static_cast<double>(c)))) +
                  3;
    struct Cand {
      long long norm2;
      double bs_d2;
      int i, j;
    };
    std::vector<Cand> cands;
    cands.reserve(static_cast<std::size_t>(2 * q + 1) * (2 * q + 1));
    for (int i = -q; i <= q; ++i) {
      for (int j = -q; j <= q; ++j) {
        const long long nrm = static_cast<long long>(i) * i +
                              static_cast<long long>(i) * j +
                              static_cast<long long>(j) * j;
        const Point2D rel = axial_to_xy(i, j, 1.0);
        const double d2 = sq(0.5 * kOffX + rel.x) + sq(0.5 * kOffY + rel.y);
        cands.push_back({nrm, d2, i, j});
      }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      if (a.norm2 != b.norm2) return a.norm2 < b.norm2;
      if (a.bs_d2 != b.bs_d2) return a.bs_d2 < b.bs_d2;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    });

    // Patch radius of the selection, in spacing units.
    double patch_radius = 0.0;
    for (std::uint64_t r = 0; r < c; ++r)
      patch_radius = std::max(patch_radius, std::sqrt(cands[r].bs_d2));

    // Nominal spacing matches a nested hexagonal subgrid of c subcells;
    // the clearance cap keeps the whole patch nearer its own BS than any
    // neighbor even when cells are narrower than area-equivalent hexagons.
    const double r_sub =
        std::sqrt(2.0 * layout.cell_area / (3.0 * kSqrt3 * c));
    double spacing = kSqrt3 * r_sub * kFit;
    double clearance = std::numeric_limits<double>::infinity();
    for (std::uint64_t o = 0; o < m; ++o)
      if (o != t)
        clearance = std::min(
            clearance,
            0.5 * layout.distance(layout.centers[t], layout.centers[o]));
    if (!layout.wrap) {
      // Planar regions have walls; keep the patch inside the rectangle
      // (row-offset edge cells put the BS as little as 0.25 pitch from it).
      const Point2D& bs = layout.centers[t];
      clearance = std::min({clearance, bs.x, layout.width - bs.x, bs.y,
                            layout.height - bs.y});
    }
    if (std::isfinite(clearance))
      spacing = std::min(spacing, 0.95 * clearance / patch_radius);

    const Point2D origin = {layout.centers[t].x + 0.5 * spacing * kOffX,
                            layout.centers[t].y + 0.5 * spacing * kOffY};
    for (std::uint64_t r = 0; r < c; ++r) {
      const Cand& cd = cands[r];
      const Point2D rel = axial_to_xy(cd.i, cd.j, spacing);
      rn.positions.push_back({origin.x + rel.x, origin.y + rel.y});
      rn.cell_of_rn.push_back(static_cast<std::uint32_t>(t));
      rn.axial.emplace_back(cd.i, cd.j);
    }
  }
  return rn;
}

std::vector<std::uint32_t> assign_cells(const std::vector<Point2D>& nodes,
                                        const HexLayout& layout) {
  std::vector<std::uint32_t> cell(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    cell[i] = static_cast<std::uint32_t>(layout.nearest_center(nodes[i]));
  return cell;
}

double NetworkRealization::link_distance(const Point2D& p,
                                         const Point2D& q) const {
  return std::max(layout.distance(p, q), min_link_distance);
}

NetworkRealization build_realization(std::uint64_t n,
                                     const ScalingExponents& e,
                                     const ModelConstants& c,
                                     std::uint64_t seed, bool wrap) {
  NetworkRealization real;
  real.exponents = e;
  real.constants = c;
  real.params = instantiate(n, e, c);
  real.layout = hex_layout(real.params.m, real.params.A, wrap);
  real.nodes = place_nodes(n, real.layout, seed);
  real.rns = place_rns(real.params.k, real.layout);
  real.cell_of_node = assign_cells(real.nodes, real.layout);
  real.seed = seed;
  real.min_link_distance =
      std::max(1e-3 * std::sqrt(c.A0),
               std::sqrt(real.params.A / static_cast<double>(n)));
  return real;
}

Point2D axial_to_xy(int i, int j, double spacing) {
  return {spacing * (i + 0.5 * j), spacing * (0.5 * kSqrt3 * j)};
}

std::pair<int, int> axial_round(double x, double y, double spacing) {
  const double rf = 2.0 * y / (kSqrt3 * spacing);
  const double qf = x / spacing - 0.5 * rf;
  // Cube rounding: fix whichever coordinate moved furthest so q + r + s = 0.
  double q = std::round(qf);
  double r = std::round(rf);
  const double sf = -qf - rf;
  const double s = std::round(sf);
  const double dq = std::abs(q - qf);
  const double dr = std::abs(r - rf);
  const double ds = std::abs(s - sf);
  if (dq > dr && dq > ds)
    q = -r - s;
  else if (dr > ds)
    r = -q - s;
  return {static_cast<int>(q), static_cast<int>(r)};
}

int seven_color(int i, int j) { return ((i + 3 * j) % 7 + 7) % 7; }

void seven_coloring(SubcellGrid& grid) {
  for (Subcell& sc : grid.subcells) sc.color = seven_color(sc.i, sc.j);
}

int SubcellGrid::find(int i, int j) const {
  const auto it = index_.find(axial_key(i, j));
  return it == index_.end() ? -1 : it->second;
}

int SubcellGrid::subcell_of_point(const Point2D& p) const {
  const auto [i, j] = axial_round(p.x, p.y, spacing);
  const int idx = find(i, j);
  if (idx >= 0) return idx;
  int best = -1;
  double best_d2 = 0.0;
  for (std::size_t s = 0; s < subcells.size(); ++s) {
    const double d2 =
        sq(p.x - subcells[s].center.x) + sq(p.y - subcells[s].center.y);
    if (best < 0 || d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(s);
    }
  }
  return best;
}

SubcellGrid build_subcells(const NetworkRealization& real,
                           std::uint32_t cell) {
  const InstanceParams& p = real.params;
  const double load = static_cast<double>(p.n) / static_cast<double>(p.m);
  if (load < 2.0)
    throw std::invalid_argument("n/m must be >= 2 to build routing subcells");

  // Subcell area: twice the minimal occupancy area, so empties stay rare.
  constexpr double c_occ = 2.0;
  const double cell_area = real.layout.cell_area;
  const double area = c_occ * cell_area * 2.0 * std::log(load) / load;

  SubcellGrid grid;
  grid.cell = cell;
  grid.r_subcell = std::sqrt(2.0 * area / (3.0 * kSqrt3));
  grid.spacing = kSqrt3 * grid.r_subcell;

  const Point2D bs = real.layout.centers[cell];
  const HexLayout& layout = real.layout;

  // One region-wide lattice (anchored at the region origin) is shared by all
  // cells: spacing depends only on the uniform per-cell load, so the seven
  // coloring lines up across cell boundaries and same-color transmitters keep
  // their full reuse distance network-wide.  This grid instantiates the
  // hexagons owned by `cell`, found by flood fill from the one holding the
  // BS.  Cells are convex, so the owned set is lattice-connected.
  //
  // Hexagons whose center spills past the region wall are kept when a node
  // lives in their in-region sliver: otherwise nodes hugging the wall would
  // have no subcell of their own and their routes would start a full hexagon
  // or more away.
  std::unordered_set<std::uint64_t> node_keys;
  node_keys.reserve(real.nodes.size());
  for (const Point2D& nd : real.nodes) {
    const auto [ni, nj] = axial_round(nd.x, nd.y, grid.spacing);
    node_keys.insert(axial_key(ni, nj));
  }

  static constexpr int kDelta[6][2] = {{1, 0}, {-1, 0}, {0, 1},
                                       {0, -1}, {1, -1}, {-1, 1}};
  const auto [root_i, root_j] = axial_round(bs.x, bs.y, grid.spacing);
  std::unordered_map<std::uint64_t, int> seen;  // axial -> -1 tested/rejected
  std::queue<std::pair<int, int>> frontier;
  frontier.push({root_i, root_j});
  seen[axial_key(root_i, root_j)] = -2;
  while (!frontier.empty()) {
    const auto [i, j] = frontier.front();
    frontier.pop();
    const Point2D center = axial_to_xy(i, j, grid.spacing);
    const bool in_region = center.x >= 0.0 && center.x <= layout.width &&
                           center.y >= 0.0 && center.y <= layout.height;
    const bool is_root = i == root_i && j == root_j;
    const bool populated = in_region || node_keys.count(axial_key(i, j)) > 0;
    // The BS hexagon always belongs here, even when its center falls a hair
    // across the cell border.
    if (!is_root &&
        (!populated || layout.nearest_center(center) != cell)) {
      seen[axial_key(i, j)] = -1;
      continue;
    }
    const int idx = static_cast<int>(grid.subcells.size());
    seen[axial_key(i, j)] = idx;
    Subcell sc;
    sc.i = i;
    sc.j = j;
    sc.center = center;
    grid.subcells.push_back(std::move(sc));
    for (const auto& d : kDelta) {
      const std::uint64_t key = axial_key(i + d[0], j + d[1]);
      if (seen.emplace(key, -2).second) frontier.push({i + d[0], j + d[1]});
    }
  }

  grid.index_.reserve(grid.subcells.size());
  for (std::size_t s = 0; s < grid.subcells.size(); ++s)
    grid.index_[axial_key(grid.subcells[s].i, grid.subcells[s].j)] =
        static_cast<int>(s);
  grid.bs_subcell = grid.find(root_i, root_j);

  // Members: every node whose containing lattice hexagon is instantiated
  // here.  A relay may come from a neighboring cell's population when the
  // subcell hexagon straddles the boundary.
  for (std::uint32_t u = 0; u < real.nodes.size(); ++u) {
    const auto [i, j] =
        axial_round(real.nodes[u].x, real.nodes[u].y, grid.spacing);
    const int idx = grid.find(i, j);
    if (idx >= 0) grid.subcells[idx].members.push_back(u);
  }
  for (Subcell& sc : grid.subcells) {
    for (const std::uint32_t u : sc.members) {
      const double d2 = sq(real.nodes[u].x - sc.center.x) +
                        sq(real.nodes[u].y - sc.center.y);
      if (sc.occupant < 0 ||
          d2 < sq(real.nodes[static_cast<std::uint32_t>(sc.occupant)].x -
                  sc.center.x) +
                   sq(real.nodes[static_cast<std::uint32_t>(sc.occupant)].y -
                      sc.center.y)) {
        sc.occupant = static_cast<int>(u);
      }
    }
  }
  seven_coloring(grid);
  return grid;
}

}  // namespace cellscale
