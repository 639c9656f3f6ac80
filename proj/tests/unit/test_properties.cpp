#include <doctest.h>

#include <cmath>
#include <complex>

#include "generators.hpp"
#include "locuslab/bseries.hpp"
#include "locuslab/polynomial.hpp"
#include "locuslab/render.hpp"
#include "oracles.hpp"

using namespace locuslab;

TEST_SUITE("properties") {

TEST_CASE("series stay below the geometric bound") {
  gen::Rng rng(101);
  for (int t = 0; t < 500; ++t) {
    const BSeries f(rng.series_coeffs(rng.integer(0, 25)), static_cast<Tail>(rng.integer(0, 4)));
    const double x = rng.uniform(-0.99, 0.99);
    CHECK(std::abs(f.eval(x)) <= 1.0 / (1.0 - std::abs(x)) * (1 + 1e-12));
  }
}

TEST_CASE("truncation error bound") {
  gen::Rng rng(102);
  for (int t = 0; t < 500; ++t) {
    const BSeries f(rng.series_coeffs(rng.integer(0, 25)), static_cast<Tail>(rng.integer(0, 4)));
    const double x = rng.uniform(-0.95, 0.95);
    const std::size_t n = static_cast<std::size_t>(rng.integer(0, 40));
    const double bound = std::pow(std::abs(x), static_cast<double>(n + 1)) / (1.0 - std::abs(x));
    CHECK(std::abs(f.eval(x, n) - f.eval(x)) <= bound + 1e-13);
  }
}

TEST_CASE("root products of degree-20 polynomials") {
  gen::Rng rng(103);
  for (int t = 0; t < 200; ++t) {
    const auto c = rng.series_coeffs(20);
    std::vector<double> d(c.begin(), c.end());
    while (d.size() > 1 && d.back() == 0.0) d.pop_back();
    const auto roots = complex_roots(d);
    const auto check = oracle::roots_durand_kerner(d);
    REQUIRE(roots.size() == check.size());
    int k = 0;
    double product = 1.0;
    for (auto z : roots) {
      if (std::abs(z) <= 0.95) {
        ++k;
        product *= std::abs(z);
      }
    }
    if (k > 0) CHECK(product >= root_product_bound(k) * (1 - 1e-9));
    // Same count from the independent root finder, away from the circle.
    int k2 = 0;
    bool near_circle = false;
    for (auto z : check) {
      k2 += std::abs(z) <= 0.95 ? 1 : 0;
      near_circle = near_circle || std::abs(std::abs(z) - 0.95) < 1e-6;
    }
    if (!near_circle) CHECK(k == k2);
  }
}

TEST_CASE("escape is sound against prefix enumeration") {
  gen::Rng rng(104);
  int escapes = 0;
  for (int t = 0; t < 200; ++t) {
    const auto [g, l] = rng.params(0.5, 0.8);
    const auto r = membership(Params(g, l), 14, 0.0);
    CAPTURE(g);
    CAPTURE(l);
    if (!r.survived()) {
      ++escapes;
      for (int n = r.depth; n <= 14; ++n) CHECK_FALSE(oracle::some_prefix_survives(g, l, n));
    } else {
      CHECK(oracle::some_prefix_survives(g, l, 14));
    }
  }
  CHECK(escapes > 0);
}

TEST_CASE("membership symmetries on random parameters") {
  gen::Rng rng(105);
  for (int t = 0; t < 100; ++t) {
    const auto [g, l] = rng.params(0.5, 0.8);
    const auto a = membership(Params(g, l), 18, 0.0);
    CHECK(a.survived() == membership(Params(l, g), 18, 0.0).survived());
    CHECK(a.survived() == membership(Params(-g, -l), 18, 0.0).survived());
  }
}

TEST_CASE("dedup agrees with the exact search on a grid") {
  RenderJob job;
  job.resolution = 64;
  job.tile = 32;
  job.max_depth = 16;
  const auto merged = render(job, Palette::kBinary);
  job.dedup_q = 0.0;
  const auto exact = render(job, Palette::kBinary);
  CHECK(merged.image.pixels == exact.image.pixels);
}

}  // TEST_SUITE
