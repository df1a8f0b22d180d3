#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cellscale/params.hpp"

namespace cellscale {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

// Hexagonal base-station layout over a square region of area A.
// r_cell is the nominal circumradius of a hexagon of area A/m; actual
// cells are the nearest-center regions clipped to the square.
struct HexLayout {
  std::vector<Point2D> centers;
  double r_cell = 0.0;
  double cell_area = 0.0;  // nominal A/m
  double width = 0.0;      // region is width x height, area A
  double height = 0.0;
  bool wrap = false;

  // Euclidean, or minimum-image distance on the torus when wrap is set.
  double distance(const Point2D& p, const Point2D& q) const;
  // Nearest center index; ties resolve to the lowest index.
  std::size_t nearest_center(const Point2D& p) const;
};

HexLayout hex_layout(std::uint64_t m, double area, bool wrap);

// n i.i.d. uniform points over the layout's region, deterministic per seed.
std::vector<Point2D> place_nodes(std::uint64_t n, const HexLayout& layout,
                                 std::uint64_t seed);

// Relay stations: floor(k/m) per cell (the k mod m leftovers go one each
// to the lowest-index cells), laid out on a hexagonal subgrid around each
// BS.  Axial coordinates are kept for backhaul routing adjacency.
struct RnPlacement {
  std::vector<Point2D> positions;
  std::vector<std::uint32_t> cell_of_rn;
  std::vector<std::pair<int, int>> axial;
};

RnPlacement place_rns(std::uint64_t k, const HexLayout& layout);

std::vector<std::uint32_t> assign_cells(const std::vector<Point2D>& nodes,
                                        const HexLayout& layout);

struct NetworkRealization {
  ScalingExponents exponents;
  ModelConstants constants;
  InstanceParams params;
  HexLayout layout;
  std::vector<Point2D> nodes;
  RnPlacement rns;
  std::vector<std::uint32_t> cell_of_node;
  std::uint64_t seed = 0;
  // Far-field floor applied to every link length: the larger of an absolute
  // guard (1e-3 * sqrt(A0)) and the mean inter-node spacing sqrt(A/n).
  double min_link_distance = 0.0;

  double link_distance(const Point2D& p, const Point2D& q) const;
};

NetworkRealization build_realization(std::uint64_t n,
                                     const ScalingExponents& e,
                                     const ModelConstants& c,
                                     std::uint64_t seed, bool wrap = false);

// One routing subcell of a cell's grid.  Axial coordinates (i, j) index the
// subcell lattice with the BS at (0, 0); occupant is the relay node chosen
// for the subcell (-1 when the subcell holds no node).
struct Subcell {
  int i = 0;
  int j = 0;
  Point2D center;
  int color = 0;
  int occupant = -1;
  std::vector<std::uint32_t> members;  // nodes inside the subcell hexagon
};

struct SubcellGrid {
  std::uint32_t cell = 0;
  double spacing = 0.0;    // center-to-center distance
  double r_subcell = 0.0;  // subcell circumradius
  std::vector<Subcell> subcells;
  int bs_subcell = -1;  // index of the lattice hexagon containing the BS

  int find(int i, int j) const;  // -1 when (i, j) is not instantiated
  // Containing subcell if instantiated, else nearest instantiated center.
  int subcell_of_point(const Point2D& p) const;

 private:
  std::unordered_map<std::uint64_t, int> index_;
  friend SubcellGrid build_subcells(const NetworkRealization&, std::uint32_t);
};

// Routing-subcell construction for one cell: area sized so each subcell
// holds a node with high probability, subcells instantiated where their
// center falls in the cell, occupant = member node nearest the center.
SubcellGrid build_subcells(const NetworkRealization& real, std::uint32_t cell);

// The collision-free schedule color of axial position (i, j).
int seven_color(int i, int j);
// (Re)assign colors on a grid; build_subcells already applies it.
void seven_coloring(SubcellGrid& grid);

// Axial lattice helpers shared with the backhaul grids.
Point2D axial_to_xy(int i, int j, double spacing);
std::pair<int, int> axial_round(double x, double y, double spacing);
inline bool axial_adjacent(int i1, int j1, int i2, int j2) {
  const int di = i1 - i2, dj = j1 - j2;
  return (di * di + di * dj + dj * dj) == 1;
}

}  // namespace cellscale
