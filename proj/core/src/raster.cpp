#include "locuslab/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "locuslab/error.hpp"

namespace locuslab {

RasterGrid RasterGrid::covering(PlanePoint lo, PlanePoint hi, double h, int pad) {
  if (!(h > 0)) throw Error(ErrorCode::kPrecondition, "grid step must be positive");
  RasterGrid g;
  g.h = h;
  g.x0 = lo.x - pad * h;
  g.y0 = lo.y - pad * h;
  g.nx = static_cast<int>(std::ceil((hi.x - lo.x) / h)) + 2 * pad + 1;
  g.ny = static_cast<int>(std::ceil((hi.y - lo.y) / h)) + 2 * pad + 1;
  if (static_cast<double>(g.nx) * g.ny > 2.5e8) {
    throw Error(ErrorCode::kResourceLimit, "raster too large; increase the grid step");
  }
  return g;
}

Cell RasterGrid::cell_of(PlanePoint p) const noexcept {
  return {static_cast<int>(std::floor((p.x - x0) / h)), static_cast<int>(std::floor((p.y - y0) / h))};
}

PlanePoint RasterGrid::center(Cell c) const noexcept {
  return {x0 + (c.i + 0.5) * h, y0 + (c.j + 0.5) * h};
}

std::size_t Mask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

SignedWord CellAddress::word() const {
  std::vector<Letter> pre(length);
  for (std::size_t i = 0; i < length; ++i) pre[i] = bits[i] ? Letter::kPlus : Letter::kMinus;
  return SignedWord(pre, {Letter::kPlus});
}

namespace {

CellAddress::Bits with_bit(CellAddress::Bits b, int i) {
  b.set(static_cast<std::size_t>(i));
  return b;
}

}  // namespace

AttractorRaster paint_attractor(const Params& params, const RasterGrid& grid, PlanePoint offset, int max_depth) {
  if (max_depth > kMaxAddressLength) max_depth = kMaxAddressLength;
  const double ag = std::abs(params.gamma());
  const double al = std::abs(params.lambda());
  AttractorRaster out;
  out.mask = Mask(grid);
  out.rep.assign(grid.size(), PlanePoint{});
  out.rep_address.assign(grid.size(), CellAddress{});
  out.has_rep.assign(grid.size(), 0);

  // Fixed point of p, scaled by T^d, completes s_u to the attractor point pi(u p^inf).
  const PlanePoint fix_p{1.0 / (1.0 - params.gamma()), 1.0 / (1.0 - params.lambda())};
  struct Node {
    PlanePoint s;     // offset + s_u
    PlanePoint step;  // T^d (1,1)
    PlanePoint tpow;  // (gamma^d, lambda^d)
    double ex, ey;    // half extents of the cylinder box
    CellAddress::Bits bits;
    int depth;
  };
  auto all_marked = [&](const Node& n) {
    const Cell lo = grid.cell_of({n.s.x - n.ex, n.s.y - n.ey});
    const Cell hi = grid.cell_of({n.s.x + n.ex, n.s.y + n.ey});
    for (int j = lo.j; j <= hi.j; ++j) {
      for (int i = lo.i; i <= hi.i; ++i) {
        if (!out.mask.at({i, j})) return false;
      }
    }
    return true;
  };
  auto children = [&](const Node& n, std::vector<Node>& st) {
    const PlanePoint next_step = params.apply(n.step);
    const PlanePoint next_pow = params.apply(n.tpow);
    // m child pushed first so the p child is explored first.
    st.push_back({n.s - n.step, next_step, next_pow, n.ex * ag, n.ey * al, n.bits, n.depth + 1});
    st.push_back({n.s + n.step, next_step, next_pow, n.ex * ag, n.ey * al, with_bit(n.bits, n.depth),
                  n.depth + 1});
  };
  double worst = 0.0;
  auto leaf = [&](const Node& n) {
    const PlanePoint a{n.s.x + n.tpow.x * fix_p.x, n.s.y + n.tpow.y * fix_p.y};
    const Cell c = grid.cell_of(a);
    worst = std::max(worst, std::hypot(2.0 * n.ex, 2.0 * n.ey));
    if (!grid.contains(c)) throw Error(ErrorCode::kPrecondition, "attractor leaves the raster grid");
    const std::size_t k = grid.index(c);
    if (!out.has_rep[k]) {
      out.mask.set_index(k);
      out.rep[k] = a;
      out.rep_address[k] = {n.bits, static_cast<std::uint8_t>(n.depth)};
      out.has_rep[k] = 1;
    }
    return c;
  };

  // A box thinner than a cell in one axis is finished one column (row) at a
  // time: descend toward the column centre until the box is at most h/2 wide
  // along the sweep axis. A point of the box in that column is then within
  // h/2 + |r - centre| of the representative r along the axis and within the
  // box thickness across it. Thin boxes straddling a row boundary otherwise
  // keep whole subtrees alive for cells they never reach.
  auto sweep = [&](const Node& root, bool along_x) {
    const double thick = 2.0 * (along_x ? root.ey : root.ex);
    const Cell lo = grid.cell_of({root.s.x - root.ex, root.s.y - root.ey});
    const Cell hi = grid.cell_of({root.s.x + root.ex, root.s.y + root.ey});
    const double base = along_x ? grid.x0 : grid.y0;
    for (int t = along_x ? lo.i : lo.j; t <= (along_x ? hi.i : hi.j); ++t) {
      bool marked = true;
      for (int o = along_x ? lo.j : lo.i; o <= (along_x ? hi.j : hi.i) && marked; ++o) {
        marked = out.mask.at(along_x ? Cell{t, o} : Cell{o, t});
      }
      if (marked) continue;
      const double target = base + (t + 0.5) * grid.h;
      Node n = root;
      while ((along_x ? n.ex : n.ey) > grid.h / 4.0 && n.depth < max_depth) {
        const double stp = along_x ? n.step.x : n.step.y;
        const double centre = along_x ? n.s.x : n.s.y;
        // Children sit at centre +- stp; take the one nearer the target.
        const bool plus = std::abs(centre + stp - target) <= std::abs(centre - stp - target);
        const PlanePoint next_step = params.apply(n.step);
        const PlanePoint next_pow = params.apply(n.tpow);
        n = {plus ? n.s + n.step : n.s - n.step, next_step, next_pow, n.ex * ag, n.ey * al,
             plus ? with_bit(n.bits, n.depth) : n.bits, n.depth + 1};
        ++out.nodes;
      }
      leaf(n);
      const PlanePoint a{n.s.x + n.tpow.x * fix_p.x, n.s.y + n.tpow.y * fix_p.y};
      const double off = std::abs((along_x ? a.x : a.y) - target);
      worst = std::max(worst, std::hypot(grid.h / 2.0 + off, thick));
    }
  };

  std::vector<Node> stack;
  stack.push_back({offset, {1.0, 1.0}, {1.0, 1.0}, 1.0 / (1.0 - ag), 1.0 / (1.0 - al), {}, 0});
  while (!stack.empty()) {
    const Node n = stack.back();
    stack.pop_back();
    ++out.nodes;
    if (all_marked(n)) continue;
    const bool small = 2.0 * n.ex <= grid.h && 2.0 * n.ey <= grid.h;
    if (small || n.depth == max_depth) {
      leaf(n);
      continue;
    }
    if (2.0 * n.ey <= grid.h / 4.0 && ag >= 0.5) {
      sweep(n, true);
      continue;
    }
    if (2.0 * n.ex <= grid.h / 4.0 && al >= 0.5) {
      sweep(n, false);
      continue;
    }
    children(n, stack);
  }
  // A leaf box fits in a cell, so every attractor point is within one box
  // diagonal of its representative and within half a cell diagonal more of
  // the representative's cell center.
  out.cover_radius = worst + grid.h * std::sqrt(0.5);
  return out;
}

Mask paint_points(std::span<const PlanePoint> points, const RasterGrid& grid) {
  Mask m(grid);
  for (auto p : points) m.set(grid.cell_of(p));
  return m;
}

void fill_holes(Mask& mask) {
  const RasterGrid& g = mask.grid();
  std::vector<std::uint8_t> outside(g.size(), 0);
  std::deque<Cell> queue;
  auto seed = [&](Cell c) {
    const std::size_t k = g.index(c);
    if (!mask.at_index(k) && !outside[k]) {
      outside[k] = 1;
      queue.push_back(c);
    }
  };
  for (int i = 0; i < g.nx; ++i) {
    seed({i, 0});
    seed({i, g.ny - 1});
  }
  for (int j = 0; j < g.ny; ++j) {
    seed({0, j});
    seed({g.nx - 1, j});
  }
  const Cell dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (auto d : dirs) {
      const Cell n{c.i + d.i, c.j + d.j};
      if (g.contains(n)) seed(n);
    }
  }
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!outside[k]) mask.set_index(k);
  }
}

namespace {

// 1D squared distance transform of sampled function f (Felzenszwalb-Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto intersect = [&f](int q, int p) { return ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p)); };
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    while (k >= 0 && intersect(q, v[k]) <= z[k]) --k;
    ++k;
    v[k] = q;
    z[k] = k == 0 ? -kInf : intersect(q, v[k - 1]);
    z[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(d.begin(), d.end(), kInf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const int p = v[j];
    d[q] = double(q - p) * (q - p) + f[p];
  }
}

}  // namespace

std::vector<double> distance_transform(const Mask& mask) {
  const RasterGrid& g = mask.grid();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) dist[k] = mask.at_index(k) ? 0.0 : kInf;
  const int nmax = std::max(g.nx, g.ny);
  std::vector<double> f(static_cast<std::size_t>(nmax)), d(static_cast<std::size_t>(nmax)),
      z(static_cast<std::size_t>(nmax) + 1);
  std::vector<int> v(static_cast<std::size_t>(nmax));
  // Columns (along j), then rows (along i).
  f.resize(static_cast<std::size_t>(g.ny));
  d.resize(static_cast<std::size_t>(g.ny));
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) f[static_cast<std::size_t>(j)] = dist[g.index({i, j})];
    edt_1d(f, d, v, z);
    for (int j = 0; j < g.ny; ++j) dist[g.index({i, j})] = d[static_cast<std::size_t>(j)];
  }
  f.resize(static_cast<std::size_t>(g.nx));
  d.resize(static_cast<std::size_t>(g.nx));
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) f[static_cast<std::size_t>(i)] = dist[g.index({i, j})];
    edt_1d(f, d, v, z);
    for (int i = 0; i < g.nx; ++i) dist[g.index({i, j})] = std::sqrt(d[static_cast<std::size_t>(i)]) * g.h;
  }
  return dist;
}

std::vector<Cell> trace_outer_boundary(const Mask& mask) {
  const RasterGrid& g = mask.grid();
  Cell start{-1, -1};
  for (int j = 0; j < g.ny && start.i < 0; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (mask.at({i, j})) {
        start = {i, j};
        break;
      }
    }
  }
  if (start.i < 0) return {};
  // Clockwise neighbourhood starting west.
  static constexpr Cell kDirs[8] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}};
  auto dir_index = [](Cell from, Cell to) {
    for (int k = 0; k < 8; ++k) {
      if (from.i + kDirs[k].i == to.i && from.j + kDirs[k].j == to.j) return k;
    }
    return 0;
  };
  std::vector<Cell> out{start};
  // Scan order guarantees the west neighbour of start is empty.
  Cell back{start.i - 1, start.j};
  Cell cur = start;
  const Cell start_back = back;
  const std::size_t limit = 8 * g.size() + 8;
  for (std::size_t steps = 0; steps < limit; ++steps) {
    const int k0 = dir_index(cur, back);
    bool moved = false;
    for (int m = 1; m <= 8; ++m) {
      const Cell cand{cur.i + kDirs[(k0 + m) % 8].i, cur.j + kDirs[(k0 + m) % 8].j};
      if (mask.at(cand)) {
        back = {cur.i + kDirs[(k0 + m - 1) % 8].i, cur.j + kDirs[(k0 + m - 1) % 8].j};
        cur = cand;
        moved = true;
        break;
      }
    }
    if (!moved) return out;  // isolated cell
    if (cur == start && back == start_back) return out;
    out.push_back(cur);
  }
  return out;
}

int count_components(const Mask& mask) {
  const RasterGrid& g = mask.grid();
  std::vector<std::uint8_t> seen(g.size(), 0);
  int components = 0;
  std::vector<Cell> stack;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index({i, j});
      if (!mask.at_index(k) || seen[k]) continue;
      ++components;
      seen[k] = 1;
      stack.push_back({i, j});
      while (!stack.empty()) {
        const Cell c = stack.back();
        stack.pop_back();
        for (int dj = -1; dj <= 1; ++dj) {
          for (int di = -1; di <= 1; ++di) {
            const Cell n{c.i + di, c.j + dj};
            if (!g.contains(n)) continue;
            const std::size_t kn = g.index(n);
            if (mask.at_index(kn) && !seen[kn]) {
              seen[kn] = 1;
              stack.push_back(n);
            }
          }
        }
      }
    }
  }
  return components;
}

int cyclic_runs(std::span<const int> labels) {
  std::vector<int> runs;
  for (int l : labels) {
    if (l == 0) continue;
    if (runs.empty() || runs.back() != l) runs.push_back(l);
  }
  if (runs.size() > 1 && runs.front() == runs.back()) runs.pop_back();
  return static_cast<int>(runs.size());
}

}  // namespace locuslab
