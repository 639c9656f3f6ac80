#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "error_code.hpp"
#include "generators.hpp"
#include "locuslab/raster.hpp"
#include "oracles.hpp"

using namespace locuslab;
using doctest::Approx;

TEST_SUITE("raster") {

TEST_CASE("grid geometry") {
  const auto g = RasterGrid::covering({-1, -2}, {1, 2}, 0.1, 3);
  CHECK(g.h == 0.1);
  CHECK(g.x0 <= -1 - 0.3 + 1e-12);
  CHECK(g.x0 + g.nx * g.h >= 1 + 0.3 - 1e-12);
  const Cell c = g.cell_of({0.03, -0.41});
  const auto ctr = g.center(c);
  CHECK(std::abs(ctr.x - 0.03) <= 0.05 + 1e-12);
  CHECK(std::abs(ctr.y + 0.41) <= 0.05 + 1e-12);
  CHECK(g.contains(c));
  CHECK_FALSE(g.contains({-1, 0}));
  CHECK(error_code([] { RasterGrid::covering({0, 0}, {1, 1}, 1e-5, 0); }) == ErrorCode::kResourceLimit);
}

TEST_CASE("painted attractor covers the attractor") {
  gen::Rng rng(51);
  for (int t = 0; t < 8; ++t) {
    const auto [g, l] = rng.params(0.3, 0.85);
    const Params p(g, l);
    const auto ext = attractor_half_extent(p);
    const auto grid = RasterGrid::covering(-ext, ext, 0.02, 2);
    const auto r = paint_attractor(p, grid);
    CHECK(r.mask.count() > 0);
    std::vector<PlanePoint> marked;
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        if (r.mask.at({i, j})) marked.push_back(grid.center({i, j}));
      }
    }
    for (int k = 0; k < 30; ++k) {
      const auto a = oracle::address(oracle::letters(rng.word(20)), oracle::letters(rng.word(2)), g, l);
      double best = INFINITY;
      for (auto q : marked) best = std::min(best, std::hypot(q.x - a.x, q.y - a.y));
      CHECK(best <= r.cover_radius + 1e-12);
    }
    // Representatives are attractor points in their own cells.
    for (std::size_t k = 0; k < grid.size(); k += 7) {
      if (!r.has_rep[k]) continue;
      const auto w = r.rep_address[k].word();
      const auto a = eval_address(w, p, 1);
      CHECK(distance(a, r.rep[k]) <= 1e-12);
      CHECK(grid.index(grid.cell_of(r.rep[k])) == k);
    }
  }
}

// One ratio near 1, the other near 1/2: boxes go thin in one axis long before
// they fit a cell, so the column (row) sweep does most of the painting.
TEST_CASE("painted attractor covers thin regimes") {
  gen::Rng rng(52);
  for (const auto& [g, l] : {std::pair{-0.905, 0.524}, std::pair{0.93, 0.52}, std::pair{0.53, -0.91}}) {
    const Params p(g, l);
    const auto ext = attractor_half_extent(p);
    const auto grid = RasterGrid::covering(-ext, ext, 0.05, 2);
    const auto r = paint_attractor(p, grid);
    CHECK(r.cover_radius < 3 * grid.h);
    std::vector<PlanePoint> marked;
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        if (r.mask.at({i, j})) marked.push_back(grid.center({i, j}));
      }
    }
    for (int k = 0; k < 200; ++k) {
      const auto a = oracle::address(oracle::letters(rng.word(120)), oracle::letters(rng.word(3)), g, l);
      double best = INFINITY;
      for (auto q : marked) best = std::min(best, std::hypot(q.x - a.x, q.y - a.y));
      CHECK(best <= r.cover_radius + 1e-12);
    }
    for (std::size_t k = 0; k < grid.size(); k += 5) {
      if (!r.has_rep[k]) continue;
      CHECK(distance(eval_address(r.rep_address[k].word(), p, 1), r.rep[k]) <= 1e-9);
      CHECK(grid.index(grid.cell_of(r.rep[k])) == k);
    }
  }
}

TEST_CASE("fill holes and components") {
  const auto g = RasterGrid::covering({0, 0}, {1, 1}, 0.1, 1);
  Mask ring(g);
  for (int i = 2; i <= 8; ++i) {
    ring.set({i, 2});
    ring.set({i, 8});
    ring.set({2, i});
    ring.set({8, i});
  }
  const auto before = ring.count();
  CHECK(count_components(ring) == 1);
  fill_holes(ring);
  CHECK(ring.count() == before + 25);
  Mask two(g);
  two.set({1, 1});
  two.set({2, 2});  // diagonal neighbours are 8-connected
  two.set({6, 6});
  CHECK(count_components(two) == 2);
  Mask empty(g);
  CHECK(count_components(empty) == 0);
}

TEST_CASE("distance transform matches brute force") {
  gen::Rng rng(52);
  const auto g = RasterGrid::covering({0, 0}, {1, 0.7}, 0.05, 0);
  Mask m(g);
  for (int k = 0; k < 12; ++k) m.set({rng.integer(0, g.nx - 1), rng.integer(0, g.ny - 1)});
  const auto d = distance_transform(m);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double best = INFINITY;
      for (int jj = 0; jj < g.ny; ++jj) {
        for (int ii = 0; ii < g.nx; ++ii) {
          if (m.at({ii, jj})) best = std::min(best, std::hypot((ii - i) * g.h, (jj - j) * g.h));
        }
      }
      CHECK(d[g.index({i, j})] == Approx(best).epsilon(1e-12));
    }
  }
  CHECK(std::isinf(distance_transform(Mask(g))[0]));
}

TEST_CASE("outer boundary trace") {
  const auto g = RasterGrid::covering({0, 0}, {1, 1}, 0.1, 1);
  Mask sq(g);
  for (int j = 3; j <= 6; ++j) {
    for (int i = 3; i <= 6; ++i) sq.set({i, j});
  }
  const auto b = trace_outer_boundary(sq);
  // A 4x4 block has 12 boundary cells.
  std::vector<std::size_t> idx;
  for (auto c : b) idx.push_back(g.index(c));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  CHECK(idx.size() == 12);
  for (auto c : b) CHECK(sq.at(c));
  Mask one(g);
  one.set({4, 4});
  CHECK(trace_outer_boundary(one).size() == 1);
  CHECK(trace_outer_boundary(Mask(g)).empty());
}

TEST_CASE("cyclic runs") {
  const std::vector<int> a{1, 1, 2, 2, 1, 2};
  CHECK(cyclic_runs(a) == 4);
  const std::vector<int> b{1, 0, 2, 0, 1};
  CHECK(cyclic_runs(b) == 2);
  const std::vector<int> c{0, 0};
  CHECK(cyclic_runs(c) == 0);
  const std::vector<int> d{2, 1, 0, 2, 1, 0};
  CHECK(cyclic_runs(d) == 4);
}

}  // TEST_SUITE
