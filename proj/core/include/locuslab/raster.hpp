#pragma once

// Uniform-grid rasters of planar sets: painting the attractor from cylinder
// boxes, hole filling, Euclidean distance transforms and boundary tracing.

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "locuslab/core_ifs.hpp"

namespace locuslab {

struct Cell {
  int i = 0;  // column, along x
  int j = 0;  // row, along y
  friend bool operator==(Cell, Cell) = default;
};

struct RasterGrid {
  double x0 = 0.0;  // lower-left corner
  double y0 = 0.0;
  double h = 1.0;   // cell edge
  int nx = 0;
  int ny = 0;

  // Grid covering [lo, hi] with `pad` extra cells on every side.
  static RasterGrid covering(PlanePoint lo, PlanePoint hi, double h, int pad);

  bool contains(Cell c) const noexcept { return c.i >= 0 && c.j >= 0 && c.i < nx && c.j < ny; }
  std::size_t index(Cell c) const noexcept {
    return static_cast<std::size_t>(c.j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(c.i);
  }
  Cell cell_of(PlanePoint p) const noexcept;
  PlanePoint center(Cell c) const noexcept;
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

class Mask {
 public:
  Mask() = default;
  explicit Mask(RasterGrid grid) : grid_(grid), bits_(grid.size(), 0) {}

  const RasterGrid& grid() const noexcept { return grid_; }
  bool at(Cell c) const noexcept { return grid_.contains(c) && bits_[grid_.index(c)] != 0; }
  void set(Cell c, bool v = true) {
    if (grid_.contains(c)) bits_[grid_.index(c)] = v ? 1 : 0;
  }
  bool at_index(std::size_t k) const noexcept { return bits_[k] != 0; }
  void set_index(std::size_t k, bool v = true) { bits_[k] = v ? 1 : 0; }
  std::size_t count() const noexcept;

 private:
  RasterGrid grid_;
  std::vector<std::uint8_t> bits_;
};

// Finite word u (letter i in bit i, set = p) followed by p^inf.
inline constexpr int kMaxAddressLength = 127;

struct CellAddress {
  using Bits = std::bitset<kMaxAddressLength + 1>;
  Bits bits;
  std::uint8_t length = 0;
  SignedWord word() const;
};

struct AttractorRaster {
  Mask mask;
  // Per marked cell, an attractor point inside it and its address; cells
  // without a representative (filled holes) have has_rep = 0.
  std::vector<PlanePoint> rep;
  std::vector<CellAddress> rep_address;
  std::vector<std::uint8_t> has_rep;
  // Every attractor point lies within this distance of a marked cell center.
  double cover_radius = 0.0;
  std::size_t nodes = 0;
};

// Paints offset + A onto `grid` by descending cylinder boxes until they are
// smaller than a cell; subtrees whose box only touches marked cells are pruned.
// Boxes that get thin in one axis first are finished by one targeted descent
// per column (row). Addresses longer than kMaxAddressLength are cut off, and
// cover_radius grows accordingly.
AttractorRaster paint_attractor(const Params& params, const RasterGrid& grid, PlanePoint offset = {},
                                int max_depth = kMaxAddressLength);

// Marks the cell of every point.
Mask paint_points(std::span<const PlanePoint> points, const RasterGrid& grid);

// Fills every unmarked region not 4-connected to the grid border.
void fill_holes(Mask& mask);

// Euclidean distance from each cell center to the nearest marked cell center,
// in world units (infinity when nothing is marked).
std::vector<double> distance_transform(const Mask& mask);

// Cells of the 8-connected component containing the first marked cell in scan
// order, traced along the outer boundary (Moore neighbour tracing). Cells can
// repeat where the boundary is one cell thick.
std::vector<Cell> trace_outer_boundary(const Mask& mask);

// Number of 8-connected components of marked cells.
int count_components(const Mask& mask);

// Number of maximal runs of equal nonzero labels in a cyclic sequence (zeros
// ignored, first and last run merged when equal).
int cyclic_runs(std::span<const int> labels);

}  // namespace locuslab
